#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "helixdt/metrics.hpp"
#include "helixdt/point_cloud.hpp"
#include "helixdt/triangulation.hpp"

namespace helixdt {

/// Point-set families with a size knob.
///   helix        size n, points gen_helix_sqrt(n), ordinate = edges
///   helix_spread size n, spread n/4, ordinate = edges
///   seams        size m, ordinate = edges between the two seams
///   ball_rows    size k, abscissa = spheres per row, ordinate = pairs of
///                spheres from different rows joined by a Delaunay edge
enum class Family { Helix, HelixSpread, Seams, BallRows };

const char* to_string(Family f);
/// Throws std::invalid_argument for an unknown name.
Family family_from_string(const std::string& name);

struct ScalingRecord {
  std::size_t size = 0;
  std::size_t n_points = 0;
  double abscissa = 0.0;
  double ordinate = 0.0;
  double spread = 0.0;
  ComplexityStats stats;
  bool structure_ok = false;  // Euler identity and the triangle/tet bounds
  bool validated = false;     // validate() ran and succeeded
  std::string validation_message;
  double wall_seconds = 0.0;  // kept in memory only, never serialized
};

struct ScalingFit {
  Family family = Family::Helix;
  std::vector<ScalingRecord> records;
  std::optional<LogLogFit> fit;  // absent if fewer than 3 records completed
  bool aborted = false;
  std::string abort_reason;
};

struct ScalingOptions {
  std::uint64_t seed = 0;
  double time_budget_seconds = 300.0;
  bool validate = true;
  std::size_t max_points = 20000;
  std::size_t per_sphere = 64;   // ball_rows
  double seam_spacing = 0.25;    // seams
};

/// Generates, triangulates and measures each size, then fits the log-log
/// slope of ordinate against abscissa. Needs at least 3 sizes with strictly
/// increasing abscissae and every cloud within max_points (throws
/// std::invalid_argument otherwise). A run that exceeds the time budget
/// stops and returns the records completed so far with aborted = true.
ScalingFit run_scaling(Family family, const std::vector<std::size_t>& sizes, const ScalingOptions& options = {});

/// Structural checks shared by every experiment: V - E + F - T = 1,
/// triangles <= 2e - 2n, tets <= e - n.
bool structure_ok(const Triangulation& tri, const ComplexityStats& stats);

std::string records_csv(const ScalingFit& fit);
nlohmann::ordered_json fit_json(const ScalingFit& fit);

struct NeighborlyReport {
  bool ok = false;
  std::size_t n_points = 0;
  std::size_t n_edges = 0;
  std::size_t expected_edges = 0;
  nlohmann::ordered_json to_json() const;
};
/// True iff every pair of points is a Delaunay edge. Requires n <= 128.
NeighborlyReport verify_neighborly(const PointCloud& cloud);

/// Sphere through h(t) and h(-t) tangent to the helix h(s) = (s, cos s, sin s)
/// at both points.
struct BitangentSphere {
  double t = 0.0;
  Point3 center;
  double radius = 0.0;
};
/// Requires 0 < t < pi.
BitangentSphere bitangent_sphere(double t);
/// Sign-stable |h(s) - center|^2 - radius^2.
double bitangent_gap(const BitangentSphere& sphere, double s);

struct BitangentReport {
  bool ok = false;
  BitangentSphere sphere;
  double distance_residual = 0.0;  // max over +-t of | |h - c| - r |
  double contact_residual = 0.0;   // derivative of the squared distance at t
  std::size_t samples = 0;
  std::size_t skipped = 0;         // samples inside the windows around +-t
  std::size_t inside = 0;          // samples not strictly outside
  double min_gap = 0.0;
  nlohmann::ordered_json to_json() const;
};
/// Samples `samples` evenly spaced s in (-pi, pi) and requires every one
/// outside 1e-6 windows around +-t to lie strictly outside the sphere.
/// Throws std::invalid_argument unless 0 < t < pi - 1e-3.
BitangentReport verify_bitangent(double t, std::size_t samples = 100000);

struct InvarianceReport {
  bool ok = false;
  std::vector<double> factors;
  std::vector<std::size_t> edge_counts;
  nlohmann::ordered_json to_json() const;
};
/// Helix points (alpha t, cos t, sin t) for n distinct seeded t in
/// [0, sqrt n). Requires 4 <= n <= 4096 and alpha > 0.
PointCloud pitch_helix(std::size_t n, double alpha, std::uint64_t seed = 0);
/// pitch_helix() triangulated for every alpha; true iff all edge sets agree.
InvarianceReport verify_pitch_invariance(std::size_t n, const std::vector<double>& alphas, std::uint64_t seed = 0);
/// Multiplies every x coordinate of the cloud by each factor and compares
/// edge sets.
InvarianceReport verify_axis_scaling(const PointCloud& cloud, const std::vector<double>& factors);

struct SeamReport {
  bool ok = false;
  std::size_t m = 0;
  std::size_t present = 0;
  std::size_t expected = 0;
  nlohmann::ordered_json to_json() const;
};
/// Edges between the two rows of gen_seams(m, spacing) in the Delaunay
/// triangulation. Requires odd 3 <= m <= 65.
SeamReport verify_seam_bipartite(std::size_t m, double spacing = 0.25);
/// Number of Delaunay edges joining points with different labels.
std::size_t cross_label_edges(const Triangulation& tri);

struct BallRowReport {
  std::size_t row_length = 0;
  std::size_t pairs = 0;          // cross-row sphere pairs
  std::size_t pairs_realized = 0; // pairs joined by at least one edge
  std::size_t cross_edges = 0;
  double coverage() const { return pairs == 0 ? 0.0 : static_cast<double>(pairs_realized) / pairs; }
  nlohmann::ordered_json to_json() const;
};
/// Counts Delaunay edges between spheres of the two rows of a ball-row
/// cloud (labels are sphere indices, the first row_length spheres form one
/// row).
BallRowReport ball_row_report(const Triangulation& tri, std::size_t row_length);

struct OracleReport {
  bool ok = false;
  std::size_t trials = 0;
  std::size_t mismatches = 0;
  nlohmann::ordered_json to_json() const;
};
/// Compares triangulate() against the brute-force oracle on `trials` seeded
/// uniform clouds of n points in the unit cube.
OracleReport verify_oracle(std::size_t n, std::size_t trials, std::uint64_t seed = 0);

/// Declarative experiment description.
struct ExperimentConfig {
  std::string name = "experiment";
  Family family = Family::Helix;
  std::vector<std::size_t> sizes;
  ScalingOptions options;
  std::optional<double> expected_slope;
  double slope_tolerance = 0.0;
  /// Optional floor: ordinate >= coefficient * abscissa^exponent at every size.
  std::optional<double> floor_coefficient;
  double floor_exponent = 1.0;
};

/// Malformed configuration; the message names the field or the parse
/// position.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};
ExperimentConfig parse_experiment_config(const std::string& text);

struct ExperimentResult {
  ScalingFit fit;
  bool slope_ok = true;
  bool floor_ok = true;
  bool structure_ok = true;
  bool pass = false;
  nlohmann::ordered_json to_json(const ExperimentConfig& config) const;
};
ExperimentResult run_experiment(const ExperimentConfig& config);

}  // namespace helixdt
