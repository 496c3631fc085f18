#pragma once

// ===========================================================================
// Chart manifests: a small JSON file format for defining coordinate charts.
//
// A manifest is a JSON object with the following fields:
//
//   version      required, must be the integer 1
//   name         optional string, defaults to "chart"
//   epsilon      required, 1 or -1
//   coordinates  required, array of 1..8 distinct identifier strings
//   domain       optional, array of [lo, hi] number pairs, one per
//                coordinate; defaults to [-1, 1] for every coordinate
//   metric       required, n rows; row i holds up to n entries for g_ij.
//                Entries are expression strings or numbers.  A null entry
//                (or a row shorter than n) defers to the mirrored entry
//                g_ji, so either triangle of the symmetric matrix may be
//                omitted.  When both g_ij and g_ji are written they must
//                be structurally identical expressions.
//   phi          required, full n*n array; row i holds the components
//                phi^i_j of the (1,1) tensor (upper index = row)
//   xi           required, n components of the vector field
//   eta          required, n components of the one-form
//
// Errors carry the path of the offending field, e.g. "metric[0][1]".
// ===========================================================================

#include <stdexcept>
#include <string>

#include "paralab/chart.hpp"

namespace paralab {

// Raised for any malformed manifest: bad JSON, missing or mistyped fields,
// expression syntax errors, or an inconsistently specified metric.
class ManifestError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Parse manifest text (JSON) into a chart.  Throws ManifestError.
StructuredChart load_manifest_text(const std::string& text);

// Read and parse a manifest file.  Throws ManifestError, including when the
// file cannot be read.
StructuredChart load_manifest(const std::string& path);

// Serialize a chart as manifest text.  Loading the result reproduces a chart
// with the same name, epsilon, coordinates, domain and component fields.
std::string save_manifest(const StructuredChart& chart);

}  // namespace paralab
