#include "helixdt/triangulation.hpp"

#include <algorithm>

namespace helixdt {

Triangulation::Triangulation(PointCloud cloud, std::vector<Tet> tets)
    : cloud_(std::move(cloud)), tets_(std::move(tets)), dimension_(3) {}

Triangulation Triangulation::lower_dimensional(PointCloud cloud, int dimension,
                                               std::vector<Edge> edges,
                                               std::vector<std::array<VertexId, 3>> triangles) {
  Triangulation t;
  t.cloud_ = std::move(cloud);
  t.dimension_ = dimension;
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  t.lower_edges_ = std::move(edges);
  t.lower_triangles_ = std::move(triangles);
  return t;
}

std::size_t Triangulation::finite_tet_count() const {
  return static_cast<std::size_t>(
      std::count_if(tets_.begin(), tets_.end(), [](const Tet& t) { return !t.is_ghost(); }));
}

std::size_t Triangulation::ghost_tet_count() const { return tets_.size() - finite_tet_count(); }

std::vector<Edge> edge_set(const Triangulation& tri) {
  if (tri.is_lower_dimensional()) return tri.lower_edges();
  std::vector<std::uint64_t> keys;
  keys.reserve(tri.tets().size() * 6);
  for (const Tet& t : tri.tets()) {
    if (t.is_ghost()) continue;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) {
        const VertexId a = std::min(t.v[i], t.v[j]);
        const VertexId b = std::max(t.v[i], t.v[j]);
        keys.push_back((std::uint64_t{a} << 32) | b);
      }
  }
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  std::vector<Edge> edges;
  edges.reserve(keys.size());
  for (std::uint64_t k : keys)
    edges.emplace_back(static_cast<VertexId>(k >> 32), static_cast<VertexId>(k & 0xffffffffu));
  return edges;
}

ComplexityStats stats(const Triangulation& tri) {
  ComplexityStats s;
  const auto edges = edge_set(tri);
  s.n_vertices = tri.points().size();
  s.n_edges = edges.size();
  if (tri.is_lower_dimensional()) {
    s.n_triangles = tri.lower_triangles().size();
    s.n_tets = 0;
  } else {
    const std::size_t finite = tri.finite_tet_count();
    const std::size_t ghosts = tri.tets().size() - finite;
    s.n_tets = finite;
    // Interior triangles are shared by two finite tets, hull triangles by one.
    s.n_triangles = (4 * finite + ghosts) / 2;
  }
  std::vector<std::size_t> degree(s.n_vertices, 0);
  for (const auto& [a, b] : edges) {
    ++degree[a];
    ++degree[b];
    s.max_edge_length = std::max(s.max_edge_length, distance(tri.points()[a], tri.points()[b]));
  }
  for (std::size_t d : degree) ++s.degree_histogram[d];
  return s;
}

std::vector<std::array<VertexId, 4>> canonical_tets(const Triangulation& tri) {
  std::vector<std::array<VertexId, 4>> out;
  for (const Tet& t : tri.tets()) {
    if (t.is_ghost()) continue;
    auto v = t.v;
    std::sort(v.begin(), v.end());
    out.push_back(v);
  }
  std::sort(out.begin(), out.end());
  return out;
}

Adjacency adjacency(std::size_t n_vertices, const std::vector<Edge>& edges) {
  Adjacency adj;
  adj.offsets.assign(n_vertices + 1, 0);
  for (const auto& [a, b] : edges) {
    ++adj.offsets[a + 1];
    ++adj.offsets[b + 1];
  }
  for (std::size_t i = 0; i < n_vertices; ++i) adj.offsets[i + 1] += adj.offsets[i];
  adj.neighbors.resize(adj.offsets.back());
  std::vector<std::size_t> fill(adj.offsets.begin(), adj.offsets.end() - 1);
  for (const auto& [a, b] : edges) {
    adj.neighbors[fill[a]++] = b;
    adj.neighbors[fill[b]++] = a;
  }
  return adj;
}

}  // namespace helixdt
