#include "helixdt/oracle.hpp"

#include <stdexcept>
#include <string>

#include "helixdt/delaunay.hpp"
#include "helixdt/predicates.hpp"

namespace helixdt {

std::vector<Edge> oracle_edges(const PointCloud& cloud) {
  const auto& p = cloud.points;
  const std::size_t n = p.size();
  if (n < 4) throw std::invalid_argument("oracle_edges: needs at least 4 points");
  if (n > kOracleMaxPoints)
    throw std::invalid_argument("oracle_edges: " + std::to_string(n) + " points exceeds the limit of " +
                                std::to_string(kOracleMaxPoints));
  check_cloud(cloud);
  if (affine_dimension(p) < 3) throw std::invalid_argument("oracle_edges: points are coplanar");

  std::vector<char> found(n * n, 0);
  auto has = [&](VertexId a, VertexId b) { return found[a * n + b] != 0; };

  for (VertexId a = 0; a < n; ++a)
    for (VertexId b = a + 1; b < n; ++b)
      for (VertexId c = b + 1; c < n; ++c)
        for (VertexId d = c + 1; d < n; ++d) {
          // Only the union of edges is reported, so a quadruple that cannot
          // contribute anything new is skipped.
          if (has(a, b) && has(a, c) && has(a, d) && has(b, c) && has(b, d) && has(c, d)) continue;
          const Sign orient = orient3d(p[a], p[b], p[c], p[d]);
          if (orient == Sign::Zero) continue;
          bool empty = true;
          for (VertexId e = 0; e < n && empty; ++e) {
            if (e == a || e == b || e == c || e == d) continue;
            const Sign s = insphere_perturbed(p[a], p[b], p[c], p[d], p[e], {a, b, c, d, e});
            if (s * orient == Sign::Positive) empty = false;
          }
          if (!empty) continue;
          const std::array<VertexId, 4> q{a, b, c, d};
          for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j) found[q[i] * n + q[j]] = 1;
        }

  std::vector<Edge> edges;
  for (VertexId a = 0; a < n; ++a)
    for (VertexId b = a + 1; b < n; ++b)
      if (has(a, b)) edges.emplace_back(a, b);
  return edges;
}

}  // namespace helixdt
