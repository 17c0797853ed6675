#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "helixdt/point.hpp"

namespace helixdt {

struct SurfaceModel;

/// Where a cloud came from: generator name, its parameter record (including
/// any values derived by rounding) and the RNG seed.
struct Provenance {
  std::string generator = "external";
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  std::uint64_t seed = 0;

  nlohmann::ordered_json to_json() const;
  static Provenance from_json(const nlohmann::ordered_json& j);
};

/// Ordered 3D points. Points must be finite and pairwise distinct.
struct PointCloud {
  std::vector<Point3> points;
  Provenance provenance;
  /// Analytic surface the points were sampled from, if any.
  std::shared_ptr<const SurfaceModel> surface;
  /// Optional per-point component label (sphere index, seam row, ...).
  std::vector<int> labels;

  std::size_t size() const { return points.size(); }
};

class InvalidCloudError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DuplicatePointError : public InvalidCloudError {
 public:
  DuplicatePointError(VertexId first, VertexId second);
  VertexId first() const { return first_; }
  VertexId second() const { return second_; }

 private:
  VertexId first_;
  VertexId second_;
};

/// Returns the first pair (i < j) of identical points, if any.
std::optional<std::pair<VertexId, VertexId>> find_duplicate(std::span<const Point3> points);

/// Throws InvalidCloudError (or DuplicatePointError) unless the cloud is
/// non-empty, finite and duplicate-free.
void check_cloud(const PointCloud& cloud);

}  // namespace helixdt
