#include "helixdt/surface.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace helixdt {

namespace {

constexpr double kPi = std::numbers::pi;

// Orthonormal pair perpendicular to the unit vector u.
void frame(const Point3& u, Point3& e1, Point3& e2) {
  const Point3 helper = std::fabs(u.x) < 0.9 ? Point3{1, 0, 0} : Point3{0, 1, 0};
  e1 = cross(u, helper);
  e1 = e1 * (1.0 / std::sqrt(dot(e1, e1)));
  e2 = cross(u, e1);
}

double point_segment_distance(const Capsule& c, const Point3& x) { return distance(c.axis_point(x), x); }

}  // namespace

const char* to_string(SurfaceKind kind) {
  switch (kind) {
    case SurfaceKind::CylinderCapped: return "cylinder_capped";
    case SurfaceKind::SausagePair: return "sausage_pair";
    case SurfaceKind::SphereUnion: return "sphere_union";
  }
  return "unknown";
}

double Capsule::area() const { return 2.0 * kPi * radius * segment_length() + 4.0 * kPi * radius * radius; }

Point3 Capsule::axis_point(const Point3& x) const {
  const Point3 ab = b - a;
  const double len2 = dot(ab, ab);
  if (len2 == 0.0) return a;
  const double s = std::clamp(dot(x - a, ab) / len2, 0.0, 1.0);
  return a + ab * s;
}

double SurfaceModel::area() const {
  double total = 0.0;
  for (const Capsule& c : components) total += c.area();
  return total;
}

std::size_t SurfaceModel::component_of(const Point3& x) const {
  std::size_t best = 0;
  double best_gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < components.size(); ++i) {
    const double gap = std::fabs(point_segment_distance(components[i], x) - components[i].radius);
    if (gap < best_gap) {
      best_gap = gap;
      best = i;
    }
  }
  return best;
}

double SurfaceModel::lfs(const Point3& x) const {
  if (components.empty()) throw std::logic_error("surface has no components");
  return components[component_of(x)].radius;
}

Point3 SurfaceModel::sample(Rng& rng) const {
  if (components.empty()) throw std::logic_error("surface has no components");
  double pick = unit_double(rng) * area();
  std::size_t k = 0;
  for (; k + 1 < components.size(); ++k) {
    if (pick < components[k].area()) break;
    pick -= components[k].area();
  }
  const Capsule& c = components[k];
  const double len = c.segment_length();
  const double lateral = 2.0 * kPi * c.radius * len;
  const double u = unit_double(rng) * c.area();
  if (u < lateral) {
    const Point3 axis = (c.b - c.a) * (1.0 / len);
    Point3 e1, e2;
    frame(axis, e1, e2);
    const double s = unit_double(rng);
    const double th = uniform_real(rng, 0.0, 2.0 * kPi);
    return c.a + (c.b - c.a) * s + (e1 * std::cos(th) + e2 * std::sin(th)) * c.radius;
  }
  const Point3 dir = unit_vector(rng);
  if (len == 0.0) return c.a + dir * c.radius;
  const Point3 end = dot(dir, c.b - c.a) >= 0.0 ? c.b : c.a;
  return end + dir * c.radius;
}

nlohmann::ordered_json SurfaceModel::to_json() const {
  nlohmann::ordered_json j;
  j["kind"] = to_string(kind);
  auto arr = nlohmann::ordered_json::array();
  for (const Capsule& c : components)
    arr.push_back({{"a", {c.a.x, c.a.y, c.a.z}}, {"b", {c.b.x, c.b.y, c.b.z}}, {"radius", c.radius}});
  j["components"] = std::move(arr);
  return j;
}

SurfaceModel make_sphere_union(const std::vector<Point3>& centers, double radius) {
  SurfaceModel s;
  s.kind = SurfaceKind::SphereUnion;
  for (const Point3& c : centers) s.components.push_back({c, c, radius});
  return s;
}

SurfaceModel make_sausage_pair(double half_length, double offset) {
  SurfaceModel s;
  s.kind = SurfaceKind::SausagePair;
  s.components.push_back({{-half_length, 0, offset + 1}, {half_length, 0, offset + 1}, 1.0});
  s.components.push_back({{0, -half_length, -offset - 1}, {0, half_length, -offset - 1}, 1.0});
  return s;
}

SurfaceModel make_cylinder_capped(const Point3& a, const Point3& b, double radius) {
  SurfaceModel s;
  s.kind = SurfaceKind::CylinderCapped;
  s.components.push_back({a, b, radius});
  return s;
}

}  // namespace helixdt
