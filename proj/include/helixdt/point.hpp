#pragma once

#include <cmath>
#include <cstdint>

namespace helixdt {

/// A point in R^3. Coordinates are doubles and are treated by the
/// predicates as the exact rationals they represent.
struct Point3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend constexpr bool operator==(const Point3&, const Point3&) = default;

  constexpr Point3 operator+(const Point3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  constexpr Point3 operator-(const Point3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  constexpr Point3 operator*(double s) const { return {x * s, y * s, z * s}; }

  bool is_finite() const { return std::isfinite(x) && std::isfinite(y) && std::isfinite(z); }
};

inline double dot(const Point3& a, const Point3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Point3 cross(const Point3& a, const Point3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double squared_distance(const Point3& a, const Point3& b) {
  const Point3 d = a - b;
  return dot(d, d);
}
inline double distance(const Point3& a, const Point3& b) { return std::sqrt(squared_distance(a, b)); }

/// Vertex index inside a point cloud / triangulation.
using VertexId = std::uint32_t;

}  // namespace helixdt
