#pragma once

#include <vector>

#include <json.hpp>

#include "helixdt/point.hpp"
#include "helixdt/random.hpp"

namespace helixdt {

enum class SurfaceKind { CylinderCapped, SausagePair, SphereUnion };

const char* to_string(SurfaceKind kind);

/// Boundary of the Minkowski sum of a ball and the segment [a, b]. A sphere
/// when a == b.
struct Capsule {
  Point3 a;
  Point3 b;
  double radius = 1.0;

  double segment_length() const { return distance(a, b); }
  double area() const;
  /// Closest point of the axis segment to x.
  Point3 axis_point(const Point3& x) const;
};

/// A surface made of pairwise well-separated capsules (gap between any two
/// at least the sum of their radii). Its medial axis near each component is
/// the component's axis segment, so the local feature size on a component
/// equals that component's radius.
struct SurfaceModel {
  SurfaceKind kind = SurfaceKind::SphereUnion;
  std::vector<Capsule> components;

  double area() const;
  /// Local feature size at a point of (or near) the surface.
  double lfs(const Point3& x) const;
  /// Index of the component nearest to x.
  std::size_t component_of(const Point3& x) const;
  /// Area-uniform random point on the surface.
  Point3 sample(Rng& rng) const;

  nlohmann::ordered_json to_json() const;
};

SurfaceModel make_sphere_union(const std::vector<Point3>& centers, double radius = 1.0);
/// Two unit sausages with horizontal axes at heights +-(d + 1): one along x,
/// one along y, each of half-length w.
SurfaceModel make_sausage_pair(double half_length, double offset);
/// A right circular cylinder with hemispherical caps around the axis
/// segment [a, b].
SurfaceModel make_cylinder_capped(const Point3& a, const Point3& b, double radius);

}  // namespace helixdt
