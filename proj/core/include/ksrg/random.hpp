#pragma once

#include <cstdint>
#include <random>

namespace ksrg {

using Rng = std::mt19937_64;

/// Uniform on [0, 1) with 53 random bits.
inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

/// Uniform on (0, 1].
inline double uniform01_open_low(Rng& rng) { return 1.0 - uniform01(rng); }

}  // namespace ksrg
