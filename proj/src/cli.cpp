#include "helixdt/cli.hpp"

#include <chrono>
#include <filesystem>
#include <iomanip>
#include <optional>
#include <ostream>

#include <CLI11.hpp>

#include "helixdt/delaunay.hpp"
#include "helixdt/experiments.hpp"
#include "helixdt/generators.hpp"
#include "helixdt/io.hpp"
#include "helixdt/validate.hpp"

namespace helixdt {

namespace {

namespace fs = std::filesystem;

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

template <class T>
T need(const std::optional<T>& v, const char* flag, const std::string& context) {
  if (!v) throw UsageError(context + " requires " + flag);
  return *v;
}

struct GenerateArgs {
  std::string family;
  std::optional<std::size_t> n, m, k, per_sphere;
  std::optional<double> spread, spacing;
  std::size_t caps = 0;
  bool random = false;
  std::uint64_t seed = 0;
  std::string out;
};

struct TriangulateArgs {
  std::string input;
  std::string out;
  std::string off;
  bool validate = false;
  std::uint64_t seed = 0;
};

struct VerifyArgs {
  std::string which;
  std::optional<std::size_t> n, m, trials, samples;
  std::optional<double> t, spacing;
  std::vector<double> alphas{0.05, 1.0, 20.0};
  bool random = false;
  std::uint64_t seed = 0;
  std::string out;
};

struct ExperimentArgs {
  std::string config;
  std::string out_dir = ".";
};

void emit(const nlohmann::ordered_json& report, const std::string& path, std::ostream& out) {
  if (path.empty())
    out << report.dump(2) << '\n';
  else
    write_json(path, report);
}

PointCloud generate(const GenerateArgs& a) {
  const std::string ctx = "generate " + a.family;
  if (a.family == "helix") return gen_helix_sqrt(need(a.n, "--n", ctx), a.caps);
  if (a.family == "helix_spread") return gen_helix_spread(need(a.n, "--n", ctx), need(a.spread, "--spread", ctx));
  if (a.family == "mattress") return gen_mattress(need(a.n, "--n", ctx), need(a.spread, "--spread", ctx));
  if (a.family == "helix_single_turn")
    return gen_helix_single_turn(need(a.n, "--n", ctx), a.random ? HelixSpacing::Random : HelixSpacing::Even, a.seed);
  if (a.family == "seams") return gen_seams(need(a.m, "--m", ctx), a.spacing.value_or(0.25));
  if (a.family == "ball_rows") return gen_ball_rows(need(a.k, "--k", ctx), need(a.per_sphere, "--per-sphere", ctx), a.seed);
  if (a.family == "random_ball_rows") return gen_random_ball_rows(need(a.k, "--k", ctx), need(a.n, "--n", ctx), a.seed);
  throw UsageError("unknown family '" + a.family + "'");
}

int cmd_generate(const GenerateArgs& a, std::ostream& out) {
  PointCloud cloud = generate(a);
  cloud.provenance.seed = a.seed;
  const fs::path path = a.out.empty() ? fs::path(a.family + ".xyz") : fs::path(a.out);
  write_xyz(path, cloud);
  write_provenance(provenance_path(path), cloud);
  out << "wrote " << cloud.size() << " points to " << path.string() << '\n';
  return kExitOk;
}

int cmd_triangulate(const TriangulateArgs& a, std::ostream& out, std::ostream& err) {
  const fs::path in(a.input);
  PointCloud cloud = read_xyz(in);
  read_provenance(provenance_path(in), cloud);
  TriangulateOptions opt;
  opt.seed = a.seed;
  const auto t0 = std::chrono::steady_clock::now();
  const Triangulation tri = triangulate(cloud, opt);
  if (tri.is_lower_dimensional()) {
    err << "error: the points span only " << tri.dimension() << " dimension(s); no tetrahedra\n";
    return kExitNot3d;
  }
  const auto t1 = std::chrono::steady_clock::now();
  const ComplexityStats s = stats(tri);
  nlohmann::ordered_json j = stats_json(s);
  j["input"] = in.filename().string();
  j["seed"] = a.seed;
  j["provenance"] = cloud.provenance.to_json();
  int code = kExitOk;
  if (a.validate) {
    const ValidationReport v = validate(tri);
    j["validation"] = {{"ok", v.ok}, {"kind", to_string(v.kind)}, {"message", v.message}, {"global_scan", v.global_scan}};
    if (!v.ok) code = kExitClaimFailed;
  }
  fs::path prefix = a.out.empty() ? fs::path(in).replace_extension() : fs::path(a.out);
  write_tets(prefix.string() + ".tets", tri);
  write_json(prefix.string() + ".stats.json", j);
  if (!a.off.empty()) write_off(a.off, tri);
  err << "triangulated " << s.n_vertices << " points in " << std::fixed << std::setprecision(3)
      << std::chrono::duration<double>(t1 - t0).count() << " s\n";
  out << j.dump(2) << '\n';
  return code;
}

int cmd_verify(const VerifyArgs& a, std::ostream& out) {
  const std::string ctx = "verify " + a.which;
  nlohmann::ordered_json report;
  bool ok = false;
  if (a.which == "pitch") {
    const auto r = verify_pitch_invariance(a.n.value_or(512), a.alphas, a.seed);
    report = r.to_json();
    ok = r.ok;
  } else if (a.which == "neighborly") {
    const auto r = verify_neighborly(
        gen_helix_single_turn(a.n.value_or(64), a.random ? HelixSpacing::Random : HelixSpacing::Even, a.seed));
    report = r.to_json();
    ok = r.ok;
  } else if (a.which == "bitangent") {
    const auto r = verify_bitangent(need(a.t, "--t", ctx), a.samples.value_or(100000));
    report = r.to_json();
    ok = r.ok;
  } else if (a.which == "seams") {
    const auto r = verify_seam_bipartite(a.m.value_or(65), a.spacing.value_or(0.25));
    report = r.to_json();
    ok = r.ok;
  } else if (a.which == "oracle") {
    const auto r = verify_oracle(a.n.value_or(32), a.trials.value_or(10), a.seed);
    report = r.to_json();
    ok = r.ok;
  } else {
    throw UsageError("unknown check '" + a.which + "' (expected pitch, neighborly, bitangent, seams or oracle)");
  }
  report["seed"] = a.seed;
  emit(report, a.out, out);
  return ok ? kExitOk : kExitClaimFailed;
}

int cmd_experiment(const ExperimentArgs& a, std::ostream& out, std::ostream& err) {
  const ExperimentConfig config = parse_experiment_config(read_text(a.config));
  const ExperimentResult result = run_experiment(config);
  const fs::path dir(a.out_dir);
  if (!dir.empty() && !fs::exists(dir)) fs::create_directories(dir);
  write_text(dir / (config.name + ".csv"), records_csv(result.fit));
  const nlohmann::ordered_json j = result.to_json(config);
  write_json(dir / (config.name + ".json"), j);
  for (const auto& r : result.fit.records)
    err << "size " << r.size << ": " << std::fixed << std::setprecision(3) << r.wall_seconds << " s\n";
  out << j.dump(2) << '\n';
  return result.pass ? kExitOk : kExitClaimFailed;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Delaunay triangulations of adversarial point sets and their complexity"};
  app.require_subcommand(1);

  GenerateArgs ga;
  auto* gen = app.add_subcommand("generate", "Write a generated point set as xyz plus a provenance sidecar");
  gen->add_option("family", ga.family,
                  "helix | helix_spread | mattress | helix_single_turn | seams | ball_rows | random_ball_rows")
      ->required();
  gen->add_option("--n", ga.n, "Number of points");
  gen->add_option("--spread", ga.spread, "Target spread");
  gen->add_option("--m", ga.m, "Points per seam");
  gen->add_option("--spacing", ga.spacing, "Seam point spacing");
  gen->add_option("--k", ga.k, "Ball-row scale");
  gen->add_option("--per-sphere", ga.per_sphere, "Points per sphere");
  gen->add_option("--caps", ga.caps, "Points per hemispherical cap (helix)");
  gen->add_flag("--random", ga.random, "Random spacing (helix_single_turn)");
  gen->add_option("--seed", ga.seed, "RNG seed");
  gen->add_option("--out", ga.out, "Output xyz path (default <family>.xyz)");

  TriangulateArgs ta;
  auto* tri = app.add_subcommand("triangulate", "Triangulate an xyz file; write .tets and .stats.json");
  tri->add_option("input", ta.input, "Input xyz file")->required();
  tri->add_option("--out", ta.out, "Output prefix (default: input without extension)");
  tri->add_option("--off", ta.off, "Also write the hull as an OFF mesh");
  tri->add_flag("--validate", ta.validate, "Run the full validation; exit 1 on a violation");
  tri->add_option("--seed", ta.seed, "Insertion-order seed");

  VerifyArgs va;
  auto* ver = app.add_subcommand("verify", "Check one claim; exit 0 on pass, 1 on failure");
  ver->add_option("which", va.which, "pitch | neighborly | bitangent | seams | oracle")->required();
  ver->add_option("--n", va.n, "Number of points");
  ver->add_option("--m", va.m, "Points per seam");
  ver->add_option("--spacing", va.spacing, "Seam point spacing");
  ver->add_option("--trials", va.trials, "Random clouds (oracle)");
  ver->add_option("--t", va.t, "Tangency parameter (bitangent)");
  ver->add_option("--samples", va.samples, "Helix samples (bitangent)");
  ver->add_option("--alphas", va.alphas, "Pitches to compare (pitch)");
  ver->add_flag("--random", va.random, "Random spacing (neighborly)");
  ver->add_option("--seed", va.seed, "RNG seed");
  ver->add_option("--out", va.out, "Write the JSON report here instead of stdout");

  ExperimentArgs ea;
  auto* exp = app.add_subcommand("experiment", "Run a scaling experiment from a JSON config");
  exp->add_option("config", ea.config, "Experiment config file")->required();
  exp->add_option("--out-dir", ea.out_dir, "Directory for the CSV and JSON outputs");

  std::vector<std::string> storage{"helixdt"};
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : storage) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*gen) return cmd_generate(ga, out);
    if (*tri) return cmd_triangulate(ta, out, err);
    if (*ver) return cmd_verify(va, out);
    if (*exp) return cmd_experiment(ea, out, err);
  } catch (const DuplicatePointError& e) {
    err << "error: " << e.what() << '\n';
    return kExitDuplicatePoints;
  } catch (const InvalidCloudError& e) {
    err << "error: invalid point cloud: " << e.what() << '\n';
    return kExitIo;
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const fs::filesystem_error& e) {
    err << "I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace helixdt
