#pragma once

#include <cstdint>
#include <random>
#include <span>

namespace pdtomo {

// Reproducible uniform(-1, 1) draws. mt19937_64 output is pinned by the
// standard and the mapping below avoids std::uniform_real_distribution,
// whose results are implementation-defined.
inline double uniform_pm1(std::mt19937_64& engine) {
    const double u = (engine() >> 11) * 0x1.0p-53;  // [0, 1)
    return 2.0 * u - 1.0;
}

inline void fill_uniform_pm1(std::span<double> values, std::mt19937_64& engine) {
    for (double& v : values) v = uniform_pm1(engine);
}

}  // namespace pdtomo
