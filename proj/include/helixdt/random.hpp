#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "helixdt/point.hpp"

namespace helixdt {

/// The engine is fully specified by the standard; the conversions below are
/// spelled out so that seeded outputs match across standard libraries.
using Rng = std::mt19937_64;

/// Uniform in [0, 1), 53 random bits.
inline double unit_double(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

inline double uniform_real(Rng& rng, double lo, double hi) { return lo + (hi - lo) * unit_double(rng); }

/// Uniform in [0, n) for n >= 1, unbiased.
inline std::uint64_t uniform_index(Rng& rng, std::uint64_t n) {
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
  std::uint64_t x;
  do x = rng();
  while (x >= limit);
  return x % n;
}

/// Uniform direction on the unit sphere (Archimedes' projection).
inline Point3 unit_vector(Rng& rng) {
  const double z = uniform_real(rng, -1.0, 1.0);
  const double phi = uniform_real(rng, 0.0, 2.0 * std::numbers::pi);
  const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
  return {s * std::cos(phi), s * std::sin(phi), z};
}

}  // namespace helixdt
