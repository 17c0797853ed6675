#include "helixdt/point_cloud.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace helixdt {

nlohmann::ordered_json Provenance::to_json() const {
  nlohmann::ordered_json j;
  j["generator"] = generator;
  j["params"] = params;
  j["seed"] = seed;
  return j;
}

Provenance Provenance::from_json(const nlohmann::ordered_json& j) {
  Provenance p;
  p.generator = j.at("generator").get<std::string>();
  if (j.contains("params")) p.params = j.at("params");
  p.seed = j.at("seed").get<std::uint64_t>();
  return p;
}

DuplicatePointError::DuplicatePointError(VertexId first, VertexId second)
    : InvalidCloudError("duplicate points at indices " + std::to_string(first) + " and " +
                        std::to_string(second)),
      first_(first),
      second_(second) {}

std::optional<std::pair<VertexId, VertexId>> find_duplicate(std::span<const Point3> points) {
  std::vector<VertexId> order(points.size());
  std::iota(order.begin(), order.end(), VertexId{0});
  auto lex = [&](VertexId a, VertexId b) {
    const Point3& p = points[a];
    const Point3& q = points[b];
    if (p.x != q.x) return p.x < q.x;
    if (p.y != q.y) return p.y < q.y;
    if (p.z != q.z) return p.z < q.z;
    return a < b;
  };
  std::sort(order.begin(), order.end(), lex);
  std::optional<std::pair<VertexId, VertexId>> best;
  for (std::size_t k = 1; k < order.size(); ++k) {
    if (points[order[k - 1]] == points[order[k]]) {
      std::pair<VertexId, VertexId> pr{order[k - 1], order[k]};
      if (!best || pr < *best) best = pr;
    }
  }
  return best;
}

void check_cloud(const PointCloud& cloud) {
  if (cloud.points.empty()) throw InvalidCloudError("point cloud is empty");
  if (cloud.points.size() >= 0xffffffffu) throw InvalidCloudError("point cloud too large");
  for (std::size_t i = 0; i < cloud.points.size(); ++i)
    if (!cloud.points[i].is_finite())
      throw InvalidCloudError("point " + std::to_string(i) + " has a non-finite coordinate");
  if (!cloud.labels.empty() && cloud.labels.size() != cloud.points.size())
    throw InvalidCloudError("label count does not match point count");
  if (auto dup = find_duplicate(cloud.points)) throw DuplicatePointError(dup->first, dup->second);
}

}  // namespace helixdt
