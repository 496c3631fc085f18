// Benchmark of the OpenMP-parallel point evaluation against the serial
// reference path.  Both paths must produce byte-identical reports; any
// divergence is a hard failure, not a benchmark artifact.

#include <chrono>
#include <iomanip>
#include <iostream>
#include <string>
#include <vector>

#include "paralab/classify.hpp"
#include "paralab/gallery.hpp"
#include "paralab/report_io.hpp"

namespace {

double run_ms(const paralab::StructuredChart& chart, const paralab::SampleSpec& spec,
              bool parallel, std::string* json_out) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto rep = paralab::classify_chart(chart, spec, parallel);
    const auto t1 = std::chrono::steady_clock::now();
    *json_out = paralab::report_to_json(rep);
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
    int points = 256;
    if (argc > 1) {
        try {
            points = std::stoi(argv[1]);
        } catch (const std::exception&) {
            std::cerr << "usage: bench_classify [points]\n";
            return 2;
        }
    }
    if (points < 1) {
        std::cerr << "usage: bench_classify [points]\n";
        return 2;
    }

    const paralab::SampleSpec spec{points, 42, 1e-8};
    const std::vector<std::string> names = {"ex5_1_spacelike", "hyperbolic_ps", "ex2_3_g1"};

    std::cout << "points per chart: " << points << "\n";
    std::cout << std::left << std::setw(18) << "chart" << std::right << std::setw(12)
              << "serial ms" << std::setw(14) << "parallel ms" << std::setw(10) << "speedup"
              << "\n";

    bool ok = true;
    for (const auto& name : names) {
        const paralab::GalleryEntry* entry = paralab::find_chart(name);
        if (!entry) {
            std::cerr << "missing gallery chart " << name << "\n";
            return 1;
        }
        std::string serial_json;
        std::string parallel_json;
        const double serial_ms = run_ms(entry->chart, spec, false, &serial_json);
        const double parallel_ms = run_ms(entry->chart, spec, true, &parallel_json);
        if (serial_json != parallel_json) {
            std::cerr << "report mismatch between serial and parallel runs on " << name << "\n";
            ok = false;
        }
        std::cout << std::left << std::setw(18) << name << std::right << std::fixed
                  << std::setprecision(2) << std::setw(12) << serial_ms << std::setw(14)
                  << parallel_ms << std::setw(10) << serial_ms / parallel_ms << "\n";
    }
    if (!ok) return 1;
    std::cout << "serial and parallel reports are byte-identical\n";
    return 0;
}
