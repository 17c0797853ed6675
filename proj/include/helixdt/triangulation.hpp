#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <map>
#include <utility>
#include <vector>

#include "helixdt/point_cloud.hpp"

namespace helixdt {

/// Index of the symbolic vertex at infinity that closes the hull.
inline constexpr VertexId kGhostVertex = std::numeric_limits<VertexId>::max();
inline constexpr std::uint32_t kNoTet = std::numeric_limits<std::uint32_t>::max();

/// A tetrahedron: four vertices and, in slot i, the neighbor across the face
/// opposite vertex i. Finite tets are positively oriented. Ghost tets keep
/// the ghost vertex in slot 3 and are oriented as if it sat beyond the hull.
struct Tet {
  std::array<VertexId, 4> v{};
  std::array<std::uint32_t, 4> nb{kNoTet, kNoTet, kNoTet, kNoTet};

  bool is_ghost() const { return v[3] == kGhostVertex; }
};

using Edge = std::pair<VertexId, VertexId>;

/// A Delaunay triangulation together with its vertex cloud. For clouds that
/// do not span 3D the complex is stored as explicit lower-dimensional edges
/// and triangles instead of tets.
class Triangulation {
 public:
  Triangulation() = default;
  Triangulation(PointCloud cloud, std::vector<Tet> tets);
  static Triangulation lower_dimensional(PointCloud cloud, int dimension,
                                         std::vector<Edge> edges,
                                         std::vector<std::array<VertexId, 3>> triangles);

  const PointCloud& cloud() const { return cloud_; }
  const std::vector<Point3>& points() const { return cloud_.points; }
  const std::vector<Tet>& tets() const { return tets_; }
  /// Affine dimension of the cloud: 3 for a proper tetrahedralization.
  int dimension() const { return dimension_; }
  bool is_lower_dimensional() const { return dimension_ < 3; }
  const std::vector<Edge>& lower_edges() const { return lower_edges_; }
  const std::vector<std::array<VertexId, 3>>& lower_triangles() const { return lower_triangles_; }

  std::size_t finite_tet_count() const;
  std::size_t ghost_tet_count() const;

 private:
  PointCloud cloud_;
  std::vector<Tet> tets_;
  int dimension_ = 3;
  std::vector<Edge> lower_edges_;
  std::vector<std::array<VertexId, 3>> lower_triangles_;
};

struct ComplexityStats {
  std::size_t n_vertices = 0;
  std::size_t n_edges = 0;
  std::size_t n_triangles = 0;
  std::size_t n_tets = 0;
  std::map<std::size_t, std::size_t> degree_histogram;  // degree -> vertex count
  double max_edge_length = 0.0;
};

/// Sorted, unique (i < j) pairs over finite vertices.
std::vector<Edge> edge_set(const Triangulation& tri);

ComplexityStats stats(const Triangulation& tri);

/// Finite tets as sorted vertex quadruples, sorted; handy for comparisons.
std::vector<std::array<VertexId, 4>> canonical_tets(const Triangulation& tri);

/// Per-vertex neighbor lists (CSR layout) built from an edge set.
struct Adjacency {
  std::vector<std::size_t> offsets;
  std::vector<VertexId> neighbors;

  std::size_t degree(VertexId v) const { return offsets[v + 1] - offsets[v]; }
};
Adjacency adjacency(std::size_t n_vertices, const std::vector<Edge>& edges);

}  // namespace helixdt
