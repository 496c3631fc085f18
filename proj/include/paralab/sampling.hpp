#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace paralab {

// Uniform double in [0, 1) from the top 53 bits; identical across platforms
// for a given engine state, unlike std::uniform_real_distribution.
inline double unit_double(uint64_t bits) {
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

inline std::vector<double> sample_box(std::span<const std::array<double, 2>> box,
                                      std::mt19937_64& rng) {
    std::vector<double> p(box.size());
    for (size_t c = 0; c < box.size(); ++c)
        p[c] = box[c][0] + (box[c][1] - box[c][0]) * unit_double(rng());
    return p;
}

}  // namespace paralab
