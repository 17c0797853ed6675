#include "helixdt/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "helixdt/delaunay.hpp"
#include "helixdt/generators.hpp"
#include "helixdt/io.hpp"
#include "helixdt/oracle.hpp"
#include "helixdt/random.hpp"
#include "helixdt/validate.hpp"

namespace helixdt {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTangencyWindow = 1e-6;

using Clock = std::chrono::steady_clock;

PointCloud family_cloud(Family family, std::size_t size, const ScalingOptions& options) {
  switch (family) {
    case Family::Helix: return gen_helix_sqrt(size);
    case Family::HelixSpread: return gen_helix_spread(size, static_cast<double>(size) / 4.0);
    case Family::Seams: return gen_seams(size, options.seam_spacing);
    case Family::BallRows: return gen_ball_rows(size, options.per_sphere, options.seed);
  }
  throw std::logic_error("unknown family");
}

double family_abscissa(Family family, std::size_t size) {
  return family == Family::BallRows ? static_cast<double>(ball_row_length(size)) : static_cast<double>(size);
}

}  // namespace

const char* to_string(Family f) {
  switch (f) {
    case Family::Helix: return "helix";
    case Family::HelixSpread: return "helix_spread";
    case Family::Seams: return "seams";
    case Family::BallRows: return "ball_rows";
  }
  return "unknown";
}

Family family_from_string(const std::string& name) {
  for (Family f : {Family::Helix, Family::HelixSpread, Family::Seams, Family::BallRows})
    if (name == to_string(f)) return f;
  throw std::invalid_argument("unknown family '" + name + "' (expected helix, helix_spread, seams or ball_rows)");
}

bool structure_ok(const Triangulation& tri, const ComplexityStats& s) {
  const auto V = static_cast<long long>(s.n_vertices);
  const auto E = static_cast<long long>(s.n_edges);
  const auto F = static_cast<long long>(s.n_triangles);
  const auto T = static_cast<long long>(s.n_tets);
  const bool euler = tri.is_lower_dimensional() || V - E + F - T == 1;
  return euler && F <= 2 * E - 2 * V && T <= E - V;
}

ScalingFit run_scaling(Family family, const std::vector<std::size_t>& sizes, const ScalingOptions& options) {
  if (sizes.size() < 3) throw std::invalid_argument("run_scaling: needs at least 3 sizes");
  for (std::size_t i = 1; i < sizes.size(); ++i)
    if (!(family_abscissa(family, sizes[i]) > family_abscissa(family, sizes[i - 1])))
      throw std::invalid_argument("run_scaling: sizes must give strictly increasing abscissae");

  const auto start = Clock::now();
  const auto deadline = start + std::chrono::duration_cast<Clock::duration>(
                                    std::chrono::duration<double>(options.time_budget_seconds));
  ScalingFit out;
  out.family = family;
  for (std::size_t size : sizes) {
    const auto t0 = Clock::now();
    PointCloud cloud = family_cloud(family, size, options);
    if (cloud.size() > options.max_points)
      throw std::invalid_argument("run_scaling: size " + std::to_string(size) + " gives " +
                                  std::to_string(cloud.size()) + " points, above the cap of " +
                                  std::to_string(options.max_points));
    ScalingRecord rec;
    rec.size = size;
    rec.n_points = cloud.size();
    rec.abscissa = family_abscissa(family, size);
    try {
      TriangulateOptions topt;
      topt.seed = options.seed;
      topt.deadline = deadline;
      const Triangulation tri = triangulate(cloud, topt);
      rec.stats = stats(tri);
      rec.structure_ok = structure_ok(tri, rec.stats);
      rec.spread = spread(tri).spread;
      switch (family) {
        case Family::Helix:
        case Family::HelixSpread: rec.ordinate = static_cast<double>(rec.stats.n_edges); break;
        case Family::Seams: rec.ordinate = static_cast<double>(cross_label_edges(tri)); break;
        case Family::BallRows:
          rec.ordinate = static_cast<double>(ball_row_report(tri, ball_row_length(size)).pairs_realized);
          break;
      }
      if (options.validate) {
        if (Clock::now() > deadline) throw TimeBudgetExceeded("time budget exceeded before validation");
        const ValidationReport v = validate(tri);
        rec.validated = v.ok;
        rec.validation_message = v.message;
      }
    } catch (const TimeBudgetExceeded& e) {
      out.aborted = true;
      out.abort_reason = "size " + std::to_string(size) + ": " + e.what();
      break;
    }
    rec.wall_seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    out.records.push_back(std::move(rec));
  }
  if (out.records.size() >= 3) {
    std::vector<double> xs, ys;
    for (const auto& r : out.records) {
      xs.push_back(r.abscissa);
      ys.push_back(std::max(r.ordinate, 1.0));
    }
    out.fit = fit_loglog(xs, ys);
  }
  return out;
}

std::string records_csv(const ScalingFit& fit) {
  std::string out = "family,size,n_points,abscissa,ordinate,spread,n_edges,n_triangles,n_tets,structure_ok,validated\n";
  for (const auto& r : fit.records) {
    out += std::string(to_string(fit.family)) + ',' + std::to_string(r.size) + ',' + std::to_string(r.n_points) +
           ',' + format_double(r.abscissa) + ',' + format_double(r.ordinate) + ',' + format_double(r.spread) +
           ',' + std::to_string(r.stats.n_edges) + ',' + std::to_string(r.stats.n_triangles) + ',' +
           std::to_string(r.stats.n_tets) + ',' + (r.structure_ok ? "true" : "false") + ',' +
           (r.validated ? "true" : "false") + '\n';
  }
  return out;
}

nlohmann::ordered_json fit_json(const ScalingFit& fit) {
  nlohmann::ordered_json j;
  j["family"] = to_string(fit.family);
  j["records"] = fit.records.size();
  if (fit.fit) {
    j["slope"] = fit.fit->slope;
    j["intercept"] = fit.fit->intercept;
    j["residual"] = fit.fit->residual;
  } else {
    j["slope"] = nullptr;
  }
  j["aborted"] = fit.aborted;
  if (fit.aborted) j["abort_reason"] = fit.abort_reason;
  return j;
}

nlohmann::ordered_json NeighborlyReport::to_json() const {
  return {{"check", "neighborly"}, {"ok", ok}, {"n_points", n_points}, {"n_edges", n_edges},
          {"expected_edges", expected_edges}};
}

NeighborlyReport verify_neighborly(const PointCloud& cloud) {
  if (cloud.size() > 128) throw std::invalid_argument("verify_neighborly: at most 128 points");
  NeighborlyReport r;
  r.n_points = cloud.size();
  r.expected_edges = r.n_points * (r.n_points - 1) / 2;
  r.n_edges = edge_set(triangulate(cloud)).size();
  r.ok = r.n_edges == r.expected_edges;
  return r;
}

BitangentSphere bitangent_sphere(double t) {
  if (!(t > 0.0 && t < kPi)) throw std::invalid_argument("bitangent_sphere: t must lie in (0, pi)");
  const double a = -t / std::sin(t);
  BitangentSphere s;
  s.t = t;
  s.center = {0.0, a, 0.0};
  s.radius = std::sqrt(t * t + a * a + 1.0 - 2.0 * a * std::cos(t));
  return s;
}

double bitangent_gap(const BitangentSphere& sphere, double s) {
  // |h(s) - c|^2 - r^2 = s^2 - t^2 - 2a (cos s - cos t), rewritten without
  // cancellation near s = +-t.
  const double a = sphere.center.y;
  const double t = sphere.t;
  s = std::fabs(s);
  return (s - t) * (s + t) + 4.0 * a * std::sin((s + t) / 2) * std::sin((s - t) / 2);
}

nlohmann::ordered_json BitangentReport::to_json() const {
  return {{"check", "bitangent"},
          {"ok", ok},
          {"t", sphere.t},
          {"center", {sphere.center.x, sphere.center.y, sphere.center.z}},
          {"radius", sphere.radius},
          {"distance_residual", distance_residual},
          {"contact_residual", contact_residual},
          {"samples", samples},
          {"skipped", skipped},
          {"inside", inside},
          {"min_gap", min_gap}};
}

BitangentReport verify_bitangent(double t, std::size_t samples) {
  if (!(t > 0.0 && t < kPi - 1e-3)) throw std::invalid_argument("verify_bitangent: t must lie in (0, pi - 1e-3)");
  if (samples < 1) throw std::invalid_argument("verify_bitangent: needs at least one sample");
  BitangentReport r;
  r.sphere = bitangent_sphere(t);
  r.samples = samples;
  const double a = r.sphere.center.y;
  for (double s : {t, -t}) {
    const Point3 h{s, std::cos(s), std::sin(s)};
    r.distance_residual = std::max(r.distance_residual, std::fabs(distance(h, r.sphere.center) - r.sphere.radius));
  }
  r.contact_residual = std::fabs(2.0 * t + 2.0 * a * std::sin(t));
  r.min_gap = std::numeric_limits<double>::infinity();
  const double step = 2.0 * kPi / static_cast<double>(samples);
  for (std::size_t i = 0; i < samples; ++i) {
    const double s = -kPi + (static_cast<double>(i) + 0.5) * step;
    if (std::fabs(std::fabs(s) - t) <= kTangencyWindow) {
      ++r.skipped;
      continue;
    }
    const double g = bitangent_gap(r.sphere, s);
    r.min_gap = std::min(r.min_gap, g);
    if (!(g > 0.0)) ++r.inside;
  }
  r.ok = r.inside == 0 && r.distance_residual <= 1e-9 && r.contact_residual <= 1e-7;
  return r;
}

nlohmann::ordered_json InvarianceReport::to_json() const {
  return {{"check", "pitch"}, {"ok", ok}, {"factors", factors}, {"edge_counts", edge_counts}};
}

namespace {

InvarianceReport compare_scaled(const std::vector<Point3>& base, const std::vector<double>& factors) {
  InvarianceReport r;
  r.factors = factors;
  std::optional<std::vector<Edge>> reference;
  r.ok = true;
  for (double f : factors) {
    if (!(f > 0.0) || !std::isfinite(f)) throw std::invalid_argument("axis scale factors must be positive");
    PointCloud c;
    c.points = base;
    for (Point3& p : c.points) p.x *= f;
    auto edges = edge_set(triangulate(c));
    r.edge_counts.push_back(edges.size());
    if (!reference)
      reference = std::move(edges);
    else if (edges != *reference)
      r.ok = false;
  }
  return r;
}

}  // namespace

PointCloud pitch_helix(std::size_t n, double alpha, std::uint64_t seed) {
  if (n < 4 || n > 4096) throw std::invalid_argument("pitch_helix: n must lie in [4, 4096]");
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw std::invalid_argument("pitch_helix: alpha must be positive");
  Rng rng(seed);
  const double hi = std::sqrt(static_cast<double>(n));
  std::vector<double> ts;
  while (ts.size() < n) {
    const double t = uniform_real(rng, 0.0, hi);
    if (std::find(ts.begin(), ts.end(), t) == ts.end()) ts.push_back(t);
  }
  PointCloud c;
  for (double t : ts) c.points.push_back({alpha * t, std::cos(t), std::sin(t)});
  c.provenance.generator = "pitch_helix";
  c.provenance.params = {{"n", n}, {"alpha", alpha}};
  c.provenance.seed = seed;
  return c;
}

InvarianceReport verify_pitch_invariance(std::size_t n, const std::vector<double>& alphas, std::uint64_t seed) {
  if (alphas.empty()) throw std::invalid_argument("verify_pitch_invariance: needs at least one alpha");
  return compare_scaled(pitch_helix(n, 1.0, seed).points, alphas);
}

InvarianceReport verify_axis_scaling(const PointCloud& cloud, const std::vector<double>& factors) {
  if (factors.empty()) throw std::invalid_argument("verify_axis_scaling: needs at least one factor");
  return compare_scaled(cloud.points, factors);
}

nlohmann::ordered_json SeamReport::to_json() const {
  return {{"check", "seams"}, {"ok", ok}, {"m", m}, {"present", present}, {"expected", expected}};
}

std::size_t cross_label_edges(const Triangulation& tri) {
  const auto& labels = tri.cloud().labels;
  if (labels.empty()) return 0;
  std::size_t count = 0;
  for (const auto& [a, b] : edge_set(tri))
    if (labels[a] != labels[b]) ++count;
  return count;
}

SeamReport verify_seam_bipartite(std::size_t m, double spacing) {
  if (m < 3 || m > 65 || m % 2 == 0) throw std::invalid_argument("verify_seam_bipartite: m must be odd in [3, 65]");
  SeamReport r;
  r.m = m;
  r.expected = m * m;
  r.present = cross_label_edges(triangulate(gen_seams(m, spacing)));
  r.ok = r.present == r.expected;
  return r;
}

nlohmann::ordered_json BallRowReport::to_json() const {
  return {{"row_length", row_length}, {"pairs", pairs}, {"pairs_realized", pairs_realized},
          {"coverage", coverage()}, {"cross_edges", cross_edges}};
}

BallRowReport ball_row_report(const Triangulation& tri, std::size_t row_length) {
  const auto& labels = tri.cloud().labels;
  if (labels.size() != tri.points().size()) throw std::invalid_argument("ball_row_report: cloud has no labels");
  BallRowReport r;
  r.row_length = row_length;
  r.pairs = row_length * row_length;
  std::vector<char> seen(r.pairs, 0);
  const int L = static_cast<int>(row_length);
  for (const auto& [a, b] : edge_set(tri)) {
    int la = labels[a], lb = labels[b];
    if (la > lb) std::swap(la, lb);
    if (la < L && lb >= L) {
      ++r.cross_edges;
      seen[static_cast<std::size_t>(la * L + (lb - L))] = 1;
    }
  }
  r.pairs_realized = static_cast<std::size_t>(std::count(seen.begin(), seen.end(), 1));
  return r;
}

nlohmann::ordered_json OracleReport::to_json() const {
  return {{"check", "oracle"}, {"ok", ok}, {"trials", trials}, {"mismatches", mismatches}};
}

OracleReport verify_oracle(std::size_t n, std::size_t trials, std::uint64_t seed) {
  if (n < 4 || n > kOracleMaxPoints)
    throw std::invalid_argument("verify_oracle: n must lie in [4, " + std::to_string(kOracleMaxPoints) + "]");
  OracleReport r;
  r.trials = trials;
  Rng rng(seed);
  for (std::size_t k = 0; k < trials; ++k) {
    PointCloud c;
    while (c.points.size() < n) {
      const Point3 p{unit_double(rng), unit_double(rng), unit_double(rng)};
      if (std::find(c.points.begin(), c.points.end(), p) == c.points.end()) c.points.push_back(p);
    }
    if (edge_set(triangulate(c, seed + k)) != oracle_edges(c)) ++r.mismatches;
  }
  r.ok = r.mismatches == 0;
  return r;
}

namespace {

template <class T>
T field(const nlohmann::ordered_json& j, const char* name) {
  try {
    return j.at(name).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("field '") + name + "': " + e.what());
  }
}

}  // namespace

ExperimentConfig parse_experiment_config(const std::string& text) {
  nlohmann::ordered_json j;
  try {
    j = nlohmann::ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  ExperimentConfig c;
  if (!j.contains("family")) throw ConfigError("missing required field 'family'");
  if (!j.contains("sizes")) throw ConfigError("missing required field 'sizes'");
  try {
    c.family = family_from_string(field<std::string>(j, "family"));
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("field 'family': ") + e.what());
  }
  c.sizes = field<std::vector<std::size_t>>(j, "sizes");
  if (c.sizes.size() < 3) throw ConfigError("field 'sizes': needs at least 3 entries");
  if (j.contains("name")) c.name = field<std::string>(j, "name");
  if (j.contains("seed")) c.options.seed = field<std::uint64_t>(j, "seed");
  if (j.contains("time_budget_seconds")) c.options.time_budget_seconds = field<double>(j, "time_budget_seconds");
  if (j.contains("validate")) c.options.validate = field<bool>(j, "validate");
  if (j.contains("max_points")) c.options.max_points = field<std::size_t>(j, "max_points");
  if (j.contains("per_sphere")) c.options.per_sphere = field<std::size_t>(j, "per_sphere");
  if (j.contains("seam_spacing")) c.options.seam_spacing = field<double>(j, "seam_spacing");
  if (j.contains("tolerances")) {
    const auto& t = j.at("tolerances");
    if (!t.is_object()) throw ConfigError("field 'tolerances': must be an object");
    if (t.contains("slope")) c.expected_slope = field<double>(t, "slope");
    if (t.contains("slope_tolerance")) c.slope_tolerance = field<double>(t, "slope_tolerance");
    if (t.contains("floor_coefficient")) c.floor_coefficient = field<double>(t, "floor_coefficient");
    if (t.contains("floor_exponent")) c.floor_exponent = field<double>(t, "floor_exponent");
  }
  if (!(c.options.time_budget_seconds > 0)) throw ConfigError("field 'time_budget_seconds': must be positive");
  if (c.slope_tolerance < 0) throw ConfigError("field 'tolerances.slope_tolerance': must be non-negative");
  return c;
}

nlohmann::ordered_json ExperimentResult::to_json(const ExperimentConfig& config) const {
  nlohmann::ordered_json j;
  j["name"] = config.name;
  j["family"] = to_string(config.family);
  j["sizes"] = config.sizes;
  j["seed"] = config.options.seed;
  j["fit"] = fit_json(fit);
  if (config.expected_slope) {
    j["expected_slope"] = *config.expected_slope;
    j["slope_tolerance"] = config.slope_tolerance;
  }
  if (config.floor_coefficient) {
    j["floor_coefficient"] = *config.floor_coefficient;
    j["floor_exponent"] = config.floor_exponent;
  }
  j["slope_ok"] = slope_ok;
  j["floor_ok"] = floor_ok;
  j["structure_ok"] = structure_ok;
  j["pass"] = pass;
  return j;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  ExperimentResult r;
  r.fit = run_scaling(config.family, config.sizes, config.options);
  for (const auto& rec : r.fit.records) {
    if (!rec.structure_ok || (config.options.validate && !rec.validated)) r.structure_ok = false;
    if (config.floor_coefficient &&
        rec.ordinate < *config.floor_coefficient * std::pow(rec.abscissa, config.floor_exponent))
      r.floor_ok = false;
  }
  if (config.expected_slope)
    r.slope_ok = r.fit.fit && std::fabs(r.fit.fit->slope - *config.expected_slope) <= config.slope_tolerance;
  r.pass = !r.fit.aborted && r.slope_ok && r.floor_ok && r.structure_ok;
  return r;
}

}  // namespace helixdt
