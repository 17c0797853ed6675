#pragma once

#include <array>
#include <cstdint>
#include <span>

#include "helixdt/point.hpp"

namespace helixdt {

enum class Sign : int { Negative = -1, Zero = 0, Positive = 1 };

constexpr Sign operator-(Sign s) { return static_cast<Sign>(-static_cast<int>(s)); }
constexpr Sign operator*(Sign a, Sign b) {
  return static_cast<Sign>(static_cast<int>(a) * static_cast<int>(b));
}

/// Exact sign of det[b-a; c-a; d-a]. Positive iff d lies on the positive
/// side of the plane through a, b, c (right-hand rule).
Sign orient3d(const Point3& a, const Point3& b, const Point3& c, const Point3& d);

/// Exact sign of the lifted 5x5 insphere determinant, normalized so that
/// Positive means e is strictly inside the circumsphere of (a, b, c, d) when
/// orient3d(a, b, c, d) is Positive. The sign flips with the orientation of
/// (a, b, c, d).
Sign insphere(const Point3& a, const Point3& b, const Point3& c, const Point3& d, const Point3& e);

/// insphere() with ties broken by symbolic perturbation of the lifted
/// coordinate: vertex i is lifted to |p_i|^2 + eps_i where
/// eps_0 >> eps_1 >> eps_2 >> ... (smaller index, larger perturbation).
/// Never returns Zero unless all five points are coplanar, in which case the
/// lifted determinant vanishes identically and a fixed rule based on the
/// index parity is applied instead. `ids` must be pairwise distinct.
Sign insphere_perturbed(const Point3& a, const Point3& b, const Point3& c, const Point3& d,
                        const Point3& e, const std::array<VertexId, 5>& ids);

/// In-circle test for four coplanar points under the same lifted
/// perturbation as insphere_perturbed(). Returns Positive iff q lies inside
/// the perturbed circumcircle of (a, b, c), independent of the orientation of
/// (a, b, c). Requires a, b, c not collinear and q in their plane.
Sign coplanar_incircle_perturbed(const Point3& a, const Point3& b, const Point3& c,
                                 const Point3& q, const std::array<VertexId, 4>& ids);

/// Exact orientation of (a, b, c) after dropping coordinate `axis`
/// (0 = x, 1 = y, 2 = z); the remaining axes are taken in cyclic order.
Sign orient2d_projected(const Point3& a, const Point3& b, const Point3& c, int axis);

/// True iff the three points are collinear (exact).
bool collinear(const Point3& a, const Point3& b, const Point3& c);

/// Per-thread counters of how often the floating-point filter had to fall
/// back to exact arithmetic. Diagnostics only.
struct PredicateCounters {
  std::uint64_t orient_calls = 0;
  std::uint64_t orient_exact = 0;
  std::uint64_t insphere_calls = 0;
  std::uint64_t insphere_exact = 0;
  std::uint64_t perturbed_ties = 0;
};
PredicateCounters& predicate_counters();

struct PitchIdentityResult {
  double full_det = 0.0;
  double reduced_det = 0.0;
  bool ratio_ok = false;
};

/// Evaluates, in floating point, the insphere determinant of five points
/// on the helix (alpha t, cos t, sin t) and the pitch-free determinant with
/// columns (1, t, cos t, sin t, t^2); checks full = alpha^3 * reduced to a
/// relative tolerance of 1e-9. Throws std::invalid_argument for alpha <= 0
/// or non-finite input.
PitchIdentityResult verify_pitch_identity(std::span<const double, 5> t, double alpha);

}  // namespace helixdt
