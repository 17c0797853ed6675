#pragma once

#include <vector>

#include "helixdt/point_cloud.hpp"
#include "helixdt/triangulation.hpp"

namespace helixdt {

inline constexpr std::size_t kOracleMaxPoints = 128;

/// Brute-force Delaunay edges: the union of the edges of every quadruple
/// whose circumsphere is empty under insphere_perturbed(). O(n^5); accepts
/// 4 <= n <= 128 points that are not all coplanar, throws
/// std::invalid_argument otherwise.
std::vector<Edge> oracle_edges(const PointCloud& cloud);

}  // namespace helixdt
