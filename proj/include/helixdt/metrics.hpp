#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <json.hpp>

#include "helixdt/point_cloud.hpp"
#include "helixdt/surface.hpp"
#include "helixdt/triangulation.hpp"

namespace helixdt {

struct PointPair {
  VertexId first = 0;
  VertexId second = 0;
  double distance = 0.0;
};

struct SpreadReport {
  PointPair closest_pair;
  PointPair diameter;
  double spread = 1.0;
  /// spread / cbrt(n); a well-packed set cannot make this small. Reported only.
  double packing_ratio = 0.0;

  nlohmann::ordered_json to_json() const;
};

/// Closest pair by randomized grid hashing, expected linear time. Ties go to
/// the lexicographically smallest index pair.
PointPair closest_pair(std::span<const Point3> points);
/// Farthest pair among `candidates` (all points if empty). Ties go to the
/// lexicographically smallest index pair.
PointPair farthest_pair(std::span<const Point3> points, std::span<const VertexId> candidates = {});

/// Requires at least 2 points.
SpreadReport spread(const PointCloud& cloud);
/// Same result, but the diameter search is restricted to hull vertices.
SpreadReport spread(const Triangulation& tri);
/// O(n^2) reference implementation.
SpreadReport spread_brute_force(std::span<const Point3> points);

/// Vertices on the convex hull (from the ghost tets), sorted.
std::vector<VertexId> hull_vertices(const Triangulation& tri);

/// Integral of lfs^-2 over the surface, in closed form (each component has
/// constant lfs). Throws std::invalid_argument for a surface without
/// components or with a non-positive radius.
double sample_measure(const SurfaceModel& surface);
/// The same integral by adaptive Simpson quadrature over each patch
/// (lateral band and end caps), evaluating lfs pointwise.
double sample_measure_quadrature(const SurfaceModel& surface, double rel_tol = 1e-6);

struct SampleReport {
  double epsilon = 0.0;          // the tested epsilon
  double epsilon_measured = 0.0; // max over probes of nearest distance / lfs
  double sd2_min = 0.0;
  double sd2_max = 0.0;
  bool is_sample = false;        // epsilon_measured <= epsilon
  bool uniform_ok = false;       // epsilon/4 <= sd2 <= epsilon at every probe
  double parsimony_ratio = 0.0;  // n epsilon^2 / mu
  std::size_t probes = 0;

  nlohmann::ordered_json to_json() const;
};

/// Probes the surface at `probes` seeded area-uniform points. Throws
/// std::invalid_argument if probes < 1000 or the cloud has fewer than 2
/// points.
SampleReport check_sample(const PointCloud& cloud, const SurfaceModel& surface, double epsilon,
                          std::size_t probes = 4096, std::uint64_t seed = 0);

/// Factor that rescales the cloud so that its closest pair is at distance 2.
double normalization_scale(const Triangulation& tri);

/// Per-vertex number of Delaunay neighbors within distance r, measured after
/// rescaling the closest pair to 2.
std::vector<std::size_t> neighbors_within(const Triangulation& tri, double r);
/// Number of vertices whose longest Delaunay edge is at least r (same units).
std::size_t far_reaching_count(const Triangulation& tri, double r);

struct LogLogFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;  // root mean square of the log residuals
};
/// Least-squares line through (log x, log y). Requires at least 2 points,
/// all positive.
LogLogFit fit_loglog(std::span<const double> xs, std::span<const double> ys);

struct ComplexityMonitor {
  std::size_t n_vertices = 0;
  std::size_t n_edges = 0;
  double spread = 0.0;
  double spread_pow4 = 0.0;
  bool within_spread_pow4 = false;  // reported, never enforced
  bool within_n_squared = false;

  nlohmann::ordered_json to_json() const;
};
ComplexityMonitor monitor_complexity(const Triangulation& tri);

}  // namespace helixdt
