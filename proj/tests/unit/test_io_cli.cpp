#include <doctest.h>

#include <filesystem>
#include <limits>
#include <sstream>

#include "helixdt/cli.hpp"
#include "helixdt/delaunay.hpp"
#include "helixdt/generators.hpp"
#include "helixdt/io.hpp"
#include "helixdt/random.hpp"

using namespace helixdt;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    Rng rng(std::random_device{}());
    path = fs::temp_directory_path() / ("helixdt_test_" + std::to_string(rng()));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::size_t line_count(const std::string& text) { return std::count(text.begin(), text.end(), '\n'); }

}  // namespace

TEST_CASE("xyz round trip is lossless") {
  Rng rng(99);
  PointCloud c;
  for (int i = 0; i < 1000; ++i) {
    const double scale = std::pow(10.0, uniform_real(rng, -300, 300));
    c.points.push_back({scale * uniform_real(rng, -1, 1), uniform_real(rng, -1, 1), -scale});
  }
  c.points.push_back({std::numeric_limits<double>::denorm_min(), std::numeric_limits<double>::max(), 0.1});
  const PointCloud back = parse_xyz(to_xyz(c));
  CHECK(back.points == c.points);
  CHECK(to_xyz(back) == to_xyz(c));
  CHECK(format_double(0.1) == "0.1");
}

TEST_CASE("xyz parsing") {
  const PointCloud c = parse_xyz("# header\n\n1 2 3\n  +4\t5 -6e-1\r\n");
  REQUIRE(c.size() == 2);
  CHECK(c.points[1] == Point3{4, 5, -0.6});
  CHECK_THROWS_WITH_AS(parse_xyz("1 2 3\n1 2\n"), doctest::Contains("line 2"), IoError);
  CHECK_THROWS_WITH_AS(parse_xyz("1 2 3 4\n"), doctest::Contains("line 1"), IoError);
  CHECK_THROWS_AS(read_xyz("/nonexistent/file.xyz"), IoError);
}

TEST_CASE("provenance sidecar round trip") {
  TempDir dir;
  const PointCloud c = gen_mattress(4096, 16.0);
  const std::string path = dir / "m.xyz";
  write_xyz(path, c);
  write_provenance(provenance_path(path), c);
  PointCloud back = read_xyz(path);
  REQUIRE(read_provenance(provenance_path(path), back));
  CHECK(back.provenance.generator == c.provenance.generator);
  CHECK(back.provenance.params == c.provenance.params);
  CHECK_FALSE(read_provenance(dir / "none.json", back));
}

TEST_CASE("stats json") {
  PointCloud c;
  c.points = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  const auto j = stats_json(stats(triangulate(c)));
  CHECK(j["schema"] == 1);
  CHECK(j["n_edges"] == 6);
  CHECK(j["degree_histogram"]["3"] == 4);
}

TEST_CASE("cli generate") {
  TempDir dir;
  auto r = cli({"generate", "helix", "--n", "1024", "--seed", "7", "--out", dir / "h.xyz"});
  CHECK(r.code == kExitOk);
  CHECK(line_count(read_text(dir / "h.xyz")) == 1024);
  const auto prov = nlohmann::json::parse(read_text(dir / "h.xyz.json"));
  CHECK(prov["seed"] == 7);
  CHECK(prov["count"] == 1024);

  r = cli({"generate", "seams", "--m", "65", "--out", dir / "s.xyz"});
  CHECK(r.code == kExitOk);
  CHECK(line_count(read_text(dir / "s.xyz")) == 130);

  r = cli({"generate", "mattress", "--n", "4096", "--spread", "16", "--out", dir / "m.xyz"});
  CHECK(r.code == kExitOk);
  const auto mp = nlohmann::json::parse(read_text(dir / "m.xyz.json"));
  CHECK(mp["params"]["w"] == 16);
  CHECK(mp["params"]["r"] == 1);

  r = cli({"generate", "mattress", "--n", "4096", "--spread", "100", "--out", dir / "bad.xyz"});
  CHECK(r.code == kExitUsage);
  CHECK(r.err.find("spread") != std::string::npos);
  CHECK(cli({"generate", "helix"}).code == kExitUsage);
  CHECK(cli({"generate", "cone", "--n", "5"}).code == kExitUsage);
  CHECK(cli({}).code == kExitUsage);
  CHECK(cli({"--help"}).code == kExitOk);
}

TEST_CASE("cli triangulate") {
  TempDir dir;
  write_text(dir / "tet.xyz", "0 0 0\n1 0 0\n0 1 0\n0 0 1\n");
  auto r = cli({"triangulate", dir / "tet.xyz", "--validate", "--off", dir / "tet.off"});
  REQUIRE(r.code == kExitOk);
  const auto j = nlohmann::json::parse(read_text(dir / "tet.stats.json"));
  CHECK(j["n_vertices"] == 4);
  CHECK(j["n_edges"] == 6);
  CHECK(j["n_triangles"] == 4);
  CHECK(j["n_tets"] == 1);
  CHECK(j["validation"]["ok"] == true);
  CHECK(line_count(read_text(dir / "tet.tets")) == 1);
  CHECK(read_text(dir / "tet.off").rfind("OFF\n4 4 0\n", 0) == 0);

  REQUIRE(cli({"generate", "helix", "--n", "1024", "--out", dir / "h.xyz"}).code == kExitOk);
  r = cli({"triangulate", dir / "h.xyz", "--out", dir / "hh"});
  REQUIRE(r.code == kExitOk);
  CHECK(nlohmann::json::parse(read_text(dir / "hh.stats.json"))["n_edges"].get<std::size_t>() >= 131072);

  write_text(dir / "dup.xyz", "0 0 0\n1 0 0\n0 1 0\n1 0 0\n0 0 1\n");
  r = cli({"triangulate", dir / "dup.xyz"});
  CHECK(r.code == kExitDuplicatePoints);
  CHECK(r.err.find("1") != std::string::npos);

  write_text(dir / "flat.xyz", "0 0 0\n1 0 0\n0 1 0\n1 1 0\n");
  CHECK(cli({"triangulate", dir / "flat.xyz"}).code == kExitNot3d);
  CHECK(cli({"triangulate", dir / "missing.xyz"}).code == kExitIo);
  write_text(dir / "junk.xyz", "1 2 x\n");
  CHECK(cli({"triangulate", dir / "junk.xyz"}).code == kExitIo);
}

TEST_CASE("cli verify") {
  TempDir dir;
  CHECK(cli({"verify", "oracle", "--n", "32", "--trials", "10", "--seed", "3"}).code == kExitOk);
  CHECK(cli({"verify", "neighborly", "--n", "64"}).code == kExitOk);
  auto r = cli({"verify", "bitangent", "--t", "1.5708", "--out", dir / "b.json"});
  CHECK(r.code == kExitOk);
  CHECK(nlohmann::json::parse(read_text(dir / "b.json"))["ok"] == true);
  CHECK(cli({"verify", "seams", "--m", "9"}).code == kExitOk);
  CHECK(cli({"verify", "pitch", "--n", "128", "--alphas", "0.5", "3"}).code == kExitOk);
  CHECK(cli({"verify", "bitangent"}).code == kExitUsage);
  CHECK(cli({"verify", "bitangent", "--t", "4"}).code == kExitUsage);
  CHECK(cli({"verify", "everything"}).code == kExitUsage);
}

TEST_CASE("cli experiment") {
  TempDir dir;
  write_text(dir / "cfg.json",
             R"({"name": "tiny", "family": "seams", "sizes": [3, 5, 9], "seed": 2,
                 "tolerances": {"slope": 2.0, "slope_tolerance": 0.1}})");
  auto r = cli({"experiment", dir / "cfg.json", "--out-dir", dir / "a"});
  CHECK(r.code == kExitOk);
  const std::string first = read_text(dir / "a/tiny.csv");
  r = cli({"experiment", dir / "cfg.json", "--out-dir", dir / "b"});
  CHECK(r.code == kExitOk);
  CHECK(read_text(dir / "b/tiny.csv") == first);
  CHECK(read_text(dir / "b/tiny.json") == read_text(dir / "a/tiny.json"));

  write_text(dir / "strict.json",
             R"({"name": "strict", "family": "seams", "sizes": [3, 5, 9],
                 "tolerances": {"slope": 1.0, "slope_tolerance": 0.01}})");
  CHECK(cli({"experiment", dir / "strict.json", "--out-dir", dir / "c"}).code == kExitClaimFailed);

  write_text(dir / "nosizes.json", R"({"family": "helix"})");
  r = cli({"experiment", dir / "nosizes.json"});
  CHECK(r.code == kExitUsage);
  CHECK(r.err.find("sizes") != std::string::npos);
  write_text(dir / "broken.json", "{\"family\": ");
  CHECK(cli({"experiment", dir / "broken.json"}).code == kExitUsage);
  CHECK(cli({"experiment", dir / "absent.json"}).code == kExitIo);
}
