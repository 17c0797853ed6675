#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <stdexcept>

#include "helixdt/triangulation.hpp"

namespace helixdt {

struct TriangulateOptions {
  /// Seed of the insertion-order shuffle. The result does not depend on it.
  std::uint64_t seed = 0;
  /// Abort with TimeBudgetExceeded once this instant has passed.
  std::optional<std::chrono::steady_clock::time_point> deadline;
  /// Largest cloud accepted by the brute-force planar fallback.
  std::size_t max_coplanar_points = 200;
};

class TimeBudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Delaunay triangulation by incremental insertion with cavity
/// re-triangulation (Bowyer-Watson). Ties between cospherical points are
/// broken by symbolic perturbation ordered by vertex index, so the output is
/// the same for every insertion order. Throws DuplicatePointError /
/// InvalidCloudError for bad clouds. Clouds that do not span 3D yield a
/// lower-dimensional complex (dimension() < 3).
Triangulation triangulate(const PointCloud& cloud, const TriangulateOptions& options);
Triangulation triangulate(const PointCloud& cloud, std::uint64_t seed = 0);

/// Affine dimension (0..3) of the point set, computed exactly.
int affine_dimension(std::span<const Point3> points);

}  // namespace helixdt
