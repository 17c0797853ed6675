// Acceptance suite: one PASS/FAIL line per criterion, exit 0 iff all pass.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "helixdt/delaunay.hpp"
#include "helixdt/experiments.hpp"
#include "helixdt/generators.hpp"
#include "helixdt/io.hpp"
#include "helixdt/metrics.hpp"
#include "helixdt/oracle.hpp"
#include "helixdt/random.hpp"
#include "helixdt/validate.hpp"

using namespace helixdt;
namespace fs = std::filesystem;
using Json = nlohmann::json;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

// Every triangulation produced for criteria 1-8, checked under criterion 9.
struct Produced {
  std::string label;
  Triangulation tri;
};

struct Outcome {
  bool pass = false;
  std::string detail;
};

class Suite {
 public:
  explicit Suite(Json config) : config_(std::move(config)) {}

  void run(int id, const std::string& name, const std::function<Outcome(const Json&)>& body, const char* key) {
    const Json& section = config_.at(key);
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = body(section);
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double elapsed = seconds_since(t0);
    if (section.contains("time_limit_seconds")) {
      const double limit = section.at("time_limit_seconds").get<double>();
      if (elapsed > limit) {
        o.pass = false;
        o.detail += "; over the time limit of " + fmt(limit) + " s";
      }
    }
    report(id, name, o, elapsed);
  }

  void keep(std::string label, Triangulation tri) { produced_.push_back({std::move(label), std::move(tri)}); }
  const std::vector<Produced>& produced() const { return produced_; }
  bool all_passed() const { return failures_ == 0; }

  static std::string fmt(double v, int digits = 3) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
  }

 private:
  void report(int id, const std::string& name, const Outcome& o, double elapsed) {
    if (!o.pass) ++failures_;
    std::cout << "criterion " << id << ": " << (o.pass ? "PASS" : "FAIL") << "  " << name << "  (" << o.detail
              << "; " << fmt(elapsed, 2) << " s)" << std::endl;
  }

  Json config_;
  std::vector<Produced> produced_;
  int failures_ = 0;
};

PointCloud uniform_cloud(std::size_t n, Rng& rng) {
  PointCloud c;
  while (c.size() < n) {
    const Point3 p{unit_double(rng), unit_double(rng), unit_double(rng)};
    if (std::find(c.points.begin(), c.points.end(), p) == c.points.end()) c.points.push_back(p);
  }
  return c;
}

Outcome oracle_equivalence(Suite& suite, const Json& cfg) {
  Rng rng(cfg.at("seed").get<std::uint64_t>());
  const auto lo = cfg.at("min_points").get<std::size_t>();
  const auto hi = cfg.at("max_points").get<std::size_t>();
  std::vector<std::pair<std::string, PointCloud>> clouds;
  const auto random_count = cfg.at("random_clouds").get<std::size_t>();
  for (std::size_t i = 0; i < random_count; ++i) {
    const std::size_t n = lo + uniform_index(rng, hi - lo + 1);
    clouds.emplace_back("uniform#" + std::to_string(i) + " n=" + std::to_string(n), uniform_cloud(n, rng));
  }
  for (auto n : cfg.at("single_turn_sizes").get<std::vector<std::size_t>>())
    clouds.emplace_back("single_turn n=" + std::to_string(n), gen_helix_single_turn(n));
  for (auto m : cfg.at("seam_sizes").get<std::vector<std::size_t>>())
    clouds.emplace_back("seams m=" + std::to_string(m), gen_seams(m));

  std::size_t mismatches = 0;
  std::string first_bad;
  for (std::size_t i = 0; i < clouds.size(); ++i) {
    Triangulation tri = triangulate(clouds[i].second, i);
    if (edge_set(tri) != oracle_edges(clouds[i].second)) {
      if (mismatches++ == 0) first_bad = clouds[i].first;
    }
    suite.keep(clouds[i].first, std::move(tri));
  }
  Outcome o{mismatches == 0, std::to_string(clouds.size()) + " clouds, " + std::to_string(mismatches) + " mismatches"};
  if (!first_bad.empty()) o.detail += ", first: " + first_bad;
  return o;
}

Outcome neighborly(Suite& suite, const Json& cfg) {
  const auto n = cfg.at("n").get<std::size_t>();
  const auto expected = cfg.at("expected_edges").get<std::size_t>();
  Triangulation tri = triangulate(gen_helix_single_turn(n));
  const std::size_t edges = edge_set(tri).size();
  suite.keep("single_turn n=" + std::to_string(n), std::move(tri));
  return {edges == expected, std::to_string(edges) + " edges, expected " + std::to_string(expected)};
}

Outcome helix_scaling(const Json& cfg, const fs::path& config_dir, bool& structure_ok) {
  const ExperimentConfig ec = parse_experiment_config(read_text(config_dir / cfg.at("config").get<std::string>()));
  const ExperimentResult r = run_experiment(ec);
  structure_ok = r.structure_ok;
  std::string detail;
  if (r.fit.fit) detail = "slope " + Suite::fmt(r.fit.fit->slope, 4);
  if (ec.expected_slope) detail += " (target " + Suite::fmt(*ec.expected_slope, 2) + " +- " + Suite::fmt(ec.slope_tolerance, 2) + ")";
  for (const auto& rec : r.fit.records)
    detail += ", n=" + std::to_string(rec.size) + ": " + std::to_string(rec.stats.n_edges) + " edges (" +
              Suite::fmt(rec.ordinate / std::pow(rec.abscissa, ec.floor_exponent), 2) + " n^1.5)";
  if (r.fit.aborted) detail += ", aborted: " + r.fit.abort_reason;
  return {!r.fit.aborted && r.slope_ok && r.floor_ok, detail};
}

Outcome pitch(Suite& suite, const Json& cfg) {
  const auto n = cfg.at("n").get<std::size_t>();
  const auto seed = cfg.at("seed").get<std::uint64_t>();
  std::optional<std::vector<Edge>> reference;
  bool same = true;
  std::string counts;
  for (double alpha : cfg.at("alphas").get<std::vector<double>>()) {
    Triangulation tri = triangulate(pitch_helix(n, alpha, seed));
    auto edges = edge_set(tri);
    counts += (counts.empty() ? "" : "/") + std::to_string(edges.size());
    if (!reference)
      reference = std::move(edges);
    else if (edges != *reference)
      same = false;
    suite.keep("pitch alpha=" + Suite::fmt(alpha, 2), std::move(tri));
  }
  return {same, "edge counts " + counts + (same ? ", identical edge sets" : ", edge sets differ")};
}

Outcome bitangent(const Json& cfg) {
  const auto count = cfg.at("count").get<std::size_t>();
  const double margin = cfg.at("margin").get<double>();
  const auto samples = cfg.at("samples").get<std::size_t>();
  std::size_t failed = 0;
  double worst_distance = 0.0, worst_contact = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    const double t = margin + (std::numbers::pi - 2 * margin) * (static_cast<double>(i) + 0.5) / count;
    const BitangentReport r = verify_bitangent(t, samples);
    if (!r.ok) ++failed;
    worst_distance = std::max(worst_distance, r.distance_residual);
    worst_contact = std::max(worst_contact, r.contact_residual);
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "%zu of %zu t values fail, max residuals %.2e (distance) %.2e (contact)", failed,
                count, worst_distance, worst_contact);
  return {failed == 0, buf};
}

Outcome seams(Suite& suite, const Json& cfg) {
  const auto m = cfg.at("m").get<std::size_t>();
  Triangulation tri = triangulate(gen_seams(m, cfg.at("spacing").get<double>()));
  const std::size_t present = cross_label_edges(tri);
  suite.keep("seams m=" + std::to_string(m), std::move(tri));
  return {present == m * m, std::to_string(present) + " of " + std::to_string(m * m) + " seam pairs"};
}

Outcome ball_rows(Suite& suite, const Json& cfg) {
  const auto k = cfg.at("k").get<std::size_t>();
  Triangulation tri =
      triangulate(gen_ball_rows(k, cfg.at("per_sphere").get<std::size_t>(), cfg.at("seed").get<std::uint64_t>()));
  const BallRowReport r = ball_row_report(tri, ball_row_length(k));
  suite.keep("ball_rows k=" + std::to_string(k), std::move(tri));
  return {r.pairs > 0 && r.pairs_realized == r.pairs,
          std::to_string(r.pairs_realized) + " of " + std::to_string(r.pairs) + " cross-row pairs joined, " +
              std::to_string(r.cross_edges) + " cross-row edges"};
}

Outcome degree(Suite& suite, const Json& cfg) {
  const auto n = cfg.at("n").get<std::size_t>();
  Triangulation tri = triangulate(gen_helix_sqrt(n));
  const auto radii = cfg.at("radii").get<std::vector<double>>();
  std::vector<double> maxima;
  std::string shown;
  for (double r : radii) {
    const auto counts = neighbors_within(tri, r);
    maxima.push_back(static_cast<double>(*std::max_element(counts.begin(), counts.end())));
    shown += (shown.empty() ? "" : "/") + std::to_string(static_cast<long>(maxima.back()));
  }
  const double slope = fit_loglog(radii, maxima).slope;
  const double limit = cfg.at("max_slope").get<double>();
  suite.keep("helix n=" + std::to_string(n), std::move(tri));
  return {slope <= limit, "max neighbors " + shown + ", slope " + Suite::fmt(slope, 4) + " <= " + Suite::fmt(limit, 2)};
}

Outcome structure(const Suite& suite, const Json& cfg, bool scaling_structure_ok) {
  ValidateOptions vo;
  vo.global_scan_limit = cfg.at("global_scan_limit").get<std::size_t>();
  std::size_t bad = 0, scanned = 0;
  std::string first_bad;
  for (const auto& p : suite.produced()) {
    const ComplexityStats s = stats(p.tri);
    bool ok = structure_ok(p.tri, s);
    std::string why = ok ? "" : "Euler identity or face bounds";
    if (ok) {
      const ValidationReport v = validate(p.tri, vo);
      ok = v.ok && (v.global_scan || p.tri.points().size() > vo.global_scan_limit);
      scanned += v.global_scan;
      if (!ok) why = v.message.empty() ? "no global scan" : v.message;
    }
    if (!ok && bad++ == 0) first_bad = p.label + ": " + why;
  }
  std::string detail = std::to_string(suite.produced().size()) + " triangulations (" + std::to_string(scanned) +
                       " with the exhaustive empty-sphere scan) plus the helix scaling runs";
  if (!scaling_structure_ok) detail += "; a helix scaling run failed validation";
  if (bad) detail += "; " + std::to_string(bad) + " failed, first " + first_bad;
  return {bad == 0 && scaling_structure_ok, detail};
}

Outcome random_ball_rows(const Json& cfg) {
  const auto k = cfg.at("k").get<std::size_t>();
  const auto n = cfg.at("n").get<std::size_t>();
  const Triangulation tri = triangulate(gen_random_ball_rows(k, n, cfg.at("seed").get<std::uint64_t>()));
  const BallRowReport r = ball_row_report(tri, ball_row_length(k));
  const ValidationReport v = validate(tri);
  const double threshold = cfg.at("min_coverage").get<double>();
  return {r.coverage() >= threshold && v.ok,
          "coverage " + Suite::fmt(r.coverage(), 4) + " (" + std::to_string(r.pairs_realized) + "/" +
              std::to_string(r.pairs) + ") >= " + Suite::fmt(threshold, 2) + (v.ok ? "" : "; invalid: " + v.message)};
}

}  // namespace

int main(int argc, char** argv) {
  const fs::path config_path = argc > 1 ? fs::path(argv[1]) : fs::path(HELIXDT_CONFIG_DIR) / "acceptance.json";
  Json config;
  try {
    config = Json::parse(read_text(config_path));
  } catch (const std::exception& e) {
    std::cerr << "cannot load " << config_path << ": " << e.what() << '\n';
    return 2;
  }
  const fs::path config_dir = config_path.parent_path();

  Suite suite(config);
  bool scaling_structure_ok = false;
  suite.run(1, "oracle equivalence", [&](const Json& c) { return oracle_equivalence(suite, c); }, "oracle");
  suite.run(2, "neighborly single turn", [&](const Json& c) { return neighborly(suite, c); }, "neighborly");
  suite.run(3, "helix scaling", [&](const Json& c) { return helix_scaling(c, config_dir, scaling_structure_ok); },
            "helix_scaling");
  suite.run(4, "pitch invariance", [&](const Json& c) { return pitch(suite, c); }, "pitch");
  suite.run(5, "bitangent spheres", [&](const Json& c) { return bitangent(c); }, "bitangent");
  suite.run(6, "seam bipartiteness", [&](const Json& c) { return seams(suite, c); }, "seams");
  suite.run(7, "ball rows", [&](const Json& c) { return ball_rows(suite, c); }, "ball_rows");
  suite.run(8, "degree law", [&](const Json& c) { return degree(suite, c); }, "degree");
  suite.run(9, "structural invariants", [&](const Json& c) { return structure(suite, c, scaling_structure_ok); },
            "structure");
  suite.run(10, "random ball rows", [&](const Json& c) { return random_ball_rows(c); }, "random_ball_rows");
  return suite.all_passed() ? 0 : 1;
}
