#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "paralab/chart.hpp"
#include "paralab/classify.hpp"

namespace paralab {

// A reference chart with its documented behavior.  `expected` is a partial
// map: it records only statuses established independently of this code
// (hand computation or published component data); tests compare classify
// output against it and `--assert` enforces it.
struct GalleryEntry {
    StructuredChart chart;
    std::string description;  // one line, shown by the list command
    std::string notes;        // pointwise behavior worth knowing, may be empty
    std::map<std::string, Status> expected;
};

// Deterministically ordered reference charts.
const std::vector<GalleryEntry>& gallery();

// nullptr when no entry has that name.
const GalleryEntry* find_chart(std::string_view name);

// Builds the (p+q+1)-dimensional structure generated by a potential function
// theta(x^1..x^{p+q}) and positive weight functions F_1..F_{p+q}:
//   eta_i = d_i theta, eta_n = 1 (so eta = d(theta + x^n)), xi = d/dx^n,
//   phi = +1 on the first p coordinate directions, -1 on the next q,
//   phi^n_a = -d_a theta (first block), +d_a theta (second block),
//   g = sum_i F_i exp(-+2 x^n) (dx^i)^2 - eta (x) eta
//     (weight exp(-2 x^n) on the first block, exp(+2 x^n) on the second),
// with epsilon = -1.  The result is s-paracontact.  Positivity of each F_i
// is spot-checked on seeded sample points in the domain.
StructuredChart make_potential_structure(int p, int q, const ScalarField& theta,
                                         const std::vector<ScalarField>& F,
                                         const std::string& name,
                                         std::vector<std::string> coords = {},
                                         std::vector<std::array<double, 2>> domain = {});

}  // namespace paralab
