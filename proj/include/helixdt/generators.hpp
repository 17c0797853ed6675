#pragma once

#include <cstdint>
#include <vector>

#include "helixdt/point_cloud.hpp"
#include "helixdt/surface.hpp"

namespace helixdt {

/// Points (pitch * axial_step * t, cos(t / angular_rate), sin(t / angular_rate))
/// for t = 1..n.
struct HelixParams {
  std::size_t n = 0;
  double pitch = 1.0;
  double angular_rate = 1.0;
  double axial_step = 1.0;
};
PointCloud gen_helix(const HelixParams& params);

/// n points (t/n, cos(t/sqrt n), sin(t/sqrt n)), t = 1..n. With cap_points > 0
/// each end of the unit cylinder gets that many spiral points on a
/// hemispherical cap and the cloud is tagged with the capped cylinder.
PointCloud gen_helix_sqrt(std::size_t n, std::size_t cap_points = 0);

/// n points (t/n, cos(t/spread), sin(t/spread)), t = 1..n; requires
/// sqrt(n) <= spread <= n.
PointCloud gen_helix_spread(std::size_t n, double spread);

struct MattressParams {
  std::size_t w = 0;  // helices per lattice side
  std::size_t r = 0;  // points per helix = w * r
  std::size_t count() const { return w * w * w * r; }
};
/// Lattice dimensions for a target size and spread, rounded to the nearest
/// integers >= 1.
MattressParams mattress_params(std::size_t n, double spread);
/// w x w lattice of helices (t/r, 4i + cos(t/sqrt r), 4j + sin(t/sqrt r)),
/// t = 1..w r; requires cbrt(n) <= spread <= sqrt(n).
PointCloud gen_mattress(std::size_t n, double spread);
PointCloud gen_mattress(const MattressParams& params);

enum class HelixSpacing { Even, Random };
/// n points (t, cos t, sin t) with t strictly inside (-pi, pi), kept 1e-3
/// away from both ends.
PointCloud gen_helix_single_turn(std::size_t n, HelixSpacing spacing = HelixSpacing::Even,
                                 std::uint64_t seed = 0);

struct SeamParams {
  std::size_t m = 0;      // points per seam
  double spacing = 0.0;   // distance between consecutive seam points
  double half_length() const { return spacing * static_cast<double>(m - 1) / 2.0; }
  double offset() const { return 2.0 * static_cast<double>(m - 1); }
  /// Size of the full surface sample these seams belong to.
  double sample_size() const { return static_cast<double>(m - 1) / (2.0 * spacing); }
};
/// Two skew rows of m points each: (i s, 0, d) and (0, j s, -d) for
/// |i|, |j| <= (m-1)/2, with d = 2(m-1). Labels are 0 and 1 by row.
PointCloud gen_seams(std::size_t m, double spacing = 0.25);

/// Sphere centers (ik, 0, k^2) followed by (0, jk, -k^2), |i|, |j| <= k/4.
std::vector<Point3> ball_row_centers(std::size_t k);
/// Number of spheres in each row.
std::size_t ball_row_length(std::size_t k);

/// per_sphere spiral points on each unit sphere around ball_row_centers(k);
/// every sphere's spiral gets its own seeded rotation. Labels are sphere
/// indices.
PointCloud gen_ball_rows(std::size_t k, std::size_t per_sphere, std::uint64_t seed = 0);

/// n points drawn area-uniformly from the union of the unit spheres around
/// ball_row_centers(k). Labels are sphere indices.
PointCloud gen_random_ball_rows(std::size_t k, std::size_t n, std::uint64_t seed = 0);

/// Fibonacci spiral of `count` points on the unit sphere.
std::vector<Point3> sphere_spiral(std::size_t count);
/// Fibonacci spiral of `count` points on the open upper unit hemisphere
/// (z > 0).
std::vector<Point3> hemisphere_spiral(std::size_t count);
/// Uniformly random rotation applied to v.
struct Rotation {
  double m[3][3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  Point3 operator()(const Point3& v) const {
    return {m[0][0] * v.x + m[0][1] * v.y + m[0][2] * v.z, m[1][0] * v.x + m[1][1] * v.y + m[1][2] * v.z,
            m[2][0] * v.x + m[2][1] * v.y + m[2][2] * v.z};
  }
};
Rotation random_rotation(Rng& rng);

}  // namespace helixdt
