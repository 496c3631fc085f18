#pragma once

#include <string>

#include "paralab/classify.hpp"

namespace paralab {

// Shortest representation that still round-trips a double exactly is
// locale- and library-dependent; reports instead print every float with 17
// significant digits so identical inputs give byte-identical output.
std::string format_double(double v);

// Byte-stable JSON: fixed key order, 17-digit floats, sorted histogram.
std::string report_to_json(const ClassificationReport& report);

// Human-readable rendering of the same report.
std::string report_to_text(const ClassificationReport& report);

// The identity table alone; `suite` filters rows ("all" keeps everything).
std::string identities_to_json(const ClassificationReport& report, const std::string& suite);
std::string identities_to_text(const ClassificationReport& report, const std::string& suite);

}  // namespace paralab
