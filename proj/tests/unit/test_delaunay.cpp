#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "helixdt/delaunay.hpp"
#include "helixdt/experiments.hpp"
#include "helixdt/generators.hpp"
#include "helixdt/oracle.hpp"
#include "helixdt/predicates.hpp"
#include "helixdt/random.hpp"
#include "helixdt/validate.hpp"

using namespace helixdt;

namespace {

PointCloud cloud_of(std::vector<Point3> pts) {
  PointCloud c;
  c.points = std::move(pts);
  return c;
}

PointCloud unit_tet() { return cloud_of({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}}); }

PointCloud random_cloud(std::size_t n, Rng& rng) {
  PointCloud c;
  for (std::size_t i = 0; i < n; ++i) c.points.push_back({unit_double(rng), unit_double(rng), unit_double(rng)});
  return c;
}

// Random cloud with many cospherical and coplanar subsets: points of a small
// integer lattice.
PointCloud lattice_cloud(std::size_t n, Rng& rng) {
  PointCloud c;
  while (c.points.size() < n) {
    const Point3 p{static_cast<double>(uniform_index(rng, 4)), static_cast<double>(uniform_index(rng, 4)),
                   static_cast<double>(uniform_index(rng, 4))};
    if (std::find(c.points.begin(), c.points.end(), p) == c.points.end()) c.points.push_back(p);
  }
  return c;
}

// Recomputes every neighbor link by matching faces.
void relink(std::vector<Tet>& tets) {
  std::map<std::array<VertexId, 3>, std::pair<std::uint32_t, int>> open;
  for (std::uint32_t t = 0; t < tets.size(); ++t) {
    for (int i = 0; i < 4; ++i) {
      std::array<VertexId, 3> f{};
      int m = 0;
      for (int j = 0; j < 4; ++j)
        if (j != i) f[m++] = tets[t].v[j];
      std::sort(f.begin(), f.end());
      auto it = open.find(f);
      if (it == open.end()) {
        open.emplace(f, std::make_pair(t, i));
      } else {
        tets[t].nb[i] = it->second.first;
        tets[it->second.first].nb[it->second.second] = t;
        open.erase(it);
      }
    }
  }
}

}  // namespace

TEST_CASE("a single tetrahedron") {
  const Triangulation tri = triangulate(unit_tet());
  CHECK(tri.finite_tet_count() == 1);
  CHECK(tri.ghost_tet_count() == 4);
  const auto edges = edge_set(tri);
  CHECK(edges == std::vector<Edge>{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
  const ComplexityStats s = stats(tri);
  CHECK(s.n_vertices == 4);
  CHECK(s.n_edges == 6);
  CHECK(s.n_triangles == 4);
  CHECK(s.n_tets == 1);
  CHECK(s.degree_histogram == std::map<std::size_t, std::size_t>{{3, 4}});
  CHECK(s.max_edge_length == doctest::Approx(std::sqrt(2.0)));
  CHECK(oracle_edges(unit_tet()) == edges);
  CHECK(validate(tri).ok);
}

TEST_CASE("a regular tetrahedron and its centroid") {
  const Triangulation tri = triangulate(cloud_of({{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}, {0, 0, 0}}));
  const ComplexityStats s = stats(tri);
  CHECK(s.n_tets == 4);
  CHECK(s.n_edges == 10);
  CHECK(s.n_triangles == 10);
  CHECK(validate(tri).ok);
}

TEST_CASE("lower-dimensional inputs") {
  SUBCASE("two points") {
    const Triangulation tri = triangulate(cloud_of({{0, 0, 0}, {1, 2, 3}}));
    CHECK(tri.dimension() == 1);
    CHECK(edge_set(tri) == std::vector<Edge>{{0, 1}});
  }
  SUBCASE("one point") {
    const Triangulation tri = triangulate(cloud_of({{4, 5, 6}}));
    CHECK(tri.dimension() == 0);
    CHECK(edge_set(tri).empty());
  }
  SUBCASE("collinear points form a path") {
    const Triangulation tri = triangulate(cloud_of({{0, 0, 0}, {2, 2, 2}, {1, 1, 1}, {3, 3, 3}}));
    CHECK(tri.dimension() == 1);
    CHECK(edge_set(tri) == std::vector<Edge>{{0, 2}, {1, 2}, {1, 3}});
  }
  SUBCASE("coplanar points") {
    const Triangulation tri = triangulate(cloud_of({{0, 0, 1}, {1, 0, 1}, {0, 1, 1}, {1, 1.5, 1}}));
    CHECK(tri.dimension() == 2);
    CHECK(tri.finite_tet_count() == 0);
    CHECK(tri.lower_triangles().size() == 2);
    CHECK(edge_set(tri).size() == 5);
    const ValidationReport r = validate(tri);
    CHECK(r.ok);
    CHECK(r.message.find("lower-dimensional") != std::string::npos);
  }
  CHECK(affine_dimension(std::vector<Point3>{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}}) == 3);
  CHECK(affine_dimension(std::vector<Point3>{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 0}}) == 2);
}

TEST_CASE("invalid clouds are rejected") {
  try {
    triangulate(cloud_of({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 0, 0}, {0, 0, 1}}));
    FAIL("expected a duplicate error");
  } catch (const DuplicatePointError& e) {
    CHECK(e.first() == 1);
    CHECK(e.second() == 3);
  }
  CHECK_THROWS_AS(triangulate(cloud_of({{0, 0, 0}, {1, 0, 0}, {0, NAN, 0}, {0, 0, 1}})), InvalidCloudError);
  CHECK_THROWS_AS(triangulate(PointCloud{}), InvalidCloudError);
}

TEST_CASE("oracle preconditions") {
  CHECK_THROWS_AS(oracle_edges(cloud_of({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}})), std::invalid_argument);
  CHECK_THROWS_AS(oracle_edges(cloud_of({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 0}})), std::invalid_argument);
  Rng rng(1);
  CHECK_THROWS_AS(oracle_edges(random_cloud(kOracleMaxPoints + 1, rng)), std::invalid_argument);
}

TEST_CASE("64 evenly spaced points on one helix turn are neighborly") {
  const Triangulation tri = triangulate(gen_helix_single_turn(64));
  CHECK(edge_set(tri).size() == 2016);
  CHECK(validate(tri).ok);
}

TEST_CASE("triangulate matches the brute-force oracle") {
  SUBCASE("30 uniform points in the unit cube") {
    Rng rng(30);
    const PointCloud c = random_cloud(30, rng);
    CHECK(edge_set(triangulate(c)) == oracle_edges(c));
  }
  SUBCASE("random sizes, uniform") {
    Rng rng(77);
    for (int trial = 0; trial < 12; ++trial) {
      const PointCloud c = random_cloud(8 + uniform_index(rng, 57), rng);
      const Triangulation tri = triangulate(c, trial);
      CHECK(edge_set(tri) == oracle_edges(c));
      CHECK(validate(tri).ok);
    }
  }
  SUBCASE("random sizes, integer lattice with cospherical subsets") {
    Rng rng(78);
    for (int trial = 0; trial < 12; ++trial) {
      const PointCloud c = lattice_cloud(8 + uniform_index(rng, 40), rng);
      const Triangulation tri = triangulate(c, trial);
      if (tri.is_lower_dimensional()) continue;
      CHECK(edge_set(tri) == oracle_edges(c));
      const ValidationReport r = validate(tri);
      CHECK_MESSAGE(r.ok, r.message);
    }
  }
  SUBCASE("cube corners plus the center") {
    std::vector<Point3> pts;
    for (int i = 0; i < 8; ++i) pts.push_back({double(i & 1), double((i >> 1) & 1), double((i >> 2) & 1)});
    pts.push_back({0.5, 0.5, 0.5});
    const PointCloud c = cloud_of(pts);
    CHECK(edge_set(triangulate(c)) == oracle_edges(c));
  }
}

TEST_CASE("the output does not depend on the insertion order") {
  Rng rng(3);
  for (int trial = 0; trial < 5; ++trial) {
    const PointCloud c = trial % 2 == 0 ? random_cloud(200, rng) : lattice_cloud(60, rng);
    const auto reference = canonical_tets(triangulate(c, 0));
    for (std::uint64_t seed : {1, 2, 99}) CHECK(canonical_tets(triangulate(c, seed)) == reference);
  }
  const PointCloud helix = gen_helix_sqrt(256);
  CHECK(edge_set(triangulate(helix, 4)) == edge_set(triangulate(helix, 5)));
}

TEST_CASE("Euler identity and complexity bounds") {
  Rng rng(8);
  std::vector<PointCloud> clouds{random_cloud(500, rng), lattice_cloud(50, rng), gen_helix_sqrt(512),
                                 gen_seams(9), gen_ball_rows(8, 16, 1)};
  for (const PointCloud& c : clouds) {
    const Triangulation tri = triangulate(c);
    const ComplexityStats s = stats(tri);
    const long long v = s.n_vertices, e = s.n_edges, f = s.n_triangles, t = s.n_tets;
    CHECK(v - e + f - t == 1);
    CHECK(f <= 2 * e - 2 * v);
    CHECK(t <= e - v);
    CHECK(structure_ok(tri, s));
    std::size_t degree_sum = 0, counted = 0;
    for (const auto& [deg, count] : s.degree_histogram) {
      degree_sum += deg * count;
      counted += count;
    }
    CHECK(degree_sum == 2 * s.n_edges);
    CHECK(counted == s.n_vertices);
  }
}

TEST_CASE("affine maps that preserve spheres preserve the triangulation") {
  Rng rng(12);
  const PointCloud c = random_cloud(300, rng);
  const auto reference = canonical_tets(triangulate(c));
  PointCloud moved = c;
  for (Point3& p : moved.points) p = Point3{p.x * 4 + 3, p.y * 4 - 1, p.z * 4 + 0.5};
  CHECK(canonical_tets(triangulate(moved)) == reference);
}

TEST_CASE("scaling a cylinder sample along its axis preserves the triangulation") {
  const PointCloud c = gen_helix_sqrt(400);
  CHECK(verify_axis_scaling(c, {0.05, 0.5, 2.0, 20.0}).ok);
  Rng rng(4);
  PointCloud random_on_cylinder;
  for (int i = 0; i < 150; ++i) {
    const double s = uniform_real(rng, 0, 2 * std::numbers::pi);
    random_on_cylinder.points.push_back({uniform_real(rng, 0, 3), std::cos(s), std::sin(s)});
  }
  CHECK(verify_axis_scaling(random_on_cylinder, {0.1, 7.0}).ok);
}

TEST_CASE("helix of 1024 points has at least 4 n^1.5 edges") {
  const Triangulation tri = triangulate(gen_helix_sqrt(1024));
  CHECK(stats(tri).n_edges >= 131072);
  CHECK(validate(tri).ok);
}

TEST_CASE("validate reports an orientation fault") {
  const Triangulation good = triangulate(unit_tet());
  std::vector<Tet> tets = good.tets();
  for (Tet& t : tets)
    if (!t.is_ghost()) std::swap(t.v[0], t.v[1]);
  relink(tets);
  const ValidationReport r = validate(Triangulation(good.cloud(), tets));
  CHECK_FALSE(r.ok);
  CHECK(r.kind == Violation::Orientation);
}

TEST_CASE("validate reports a non-Delaunay flip") {
  // Two tets share the face abc; segment de pierces that face, so the
  // three-tet complex around de triangulates the same hull.
  const Point3 a{0, 0, 0}, b{4, 0, 0}, c{0, 4, 0}, d{1, 1, 10}, e{1, 1, -10};
  const PointCloud cloud = cloud_of({a, b, c, d, e});
  REQUIRE(orient3d(a, b, c, d) == Sign::Positive);
  REQUIRE(insphere(a, b, c, d, e) == Sign::Negative);  // e outside the sphere of abcd

  const Triangulation good = triangulate(cloud);
  CHECK(good.finite_tet_count() == 2);
  REQUIRE(validate(good).ok);

  std::vector<Tet> tets;
  for (const Tet& t : good.tets())
    if (t.is_ghost()) tets.push_back(t);
  for (std::array<VertexId, 4> v : {std::array<VertexId, 4>{0, 1, 3, 4}, {1, 2, 3, 4}, {2, 0, 3, 4}}) {
    if (orient3d(cloud.points[v[0]], cloud.points[v[1]], cloud.points[v[2]], cloud.points[v[3]]) != Sign::Positive)
      std::swap(v[0], v[1]);
    Tet t;
    t.v = v;
    tets.push_back(t);
  }
  relink(tets);
  const ValidationReport r = validate(Triangulation(cloud, tets));
  CHECK_FALSE(r.ok);
  CHECK(r.kind == Violation::NotDelaunay);
}

TEST_CASE("validate reports broken links and bad indices") {
  const Triangulation good = triangulate(unit_tet());
  std::vector<Tet> tets = good.tets();
  std::swap(tets[0].nb[0], tets[0].nb[1]);
  CHECK(validate(Triangulation(good.cloud(), tets)).kind == Violation::BadLink);
  tets = good.tets();
  tets[0].nb[0] = kNoTet;
  CHECK_FALSE(validate(Triangulation(good.cloud(), tets)).ok);
  tets = good.tets();
  for (Tet& t : tets)
    if (!t.is_ghost()) t.v[0] = 17;
  CHECK(validate(Triangulation(good.cloud(), tets)).kind == Violation::BadIndex);
}

TEST_CASE("the time budget aborts") {
  TriangulateOptions opt;
  opt.deadline = std::chrono::steady_clock::now() - std::chrono::seconds(1);
  CHECK_THROWS_AS(triangulate(gen_helix_sqrt(4096), opt), TimeBudgetExceeded);
}

TEST_CASE("adjacency lists") {
  const Triangulation tri = triangulate(unit_tet());
  const Adjacency adj = adjacency(4, edge_set(tri));
  for (VertexId v = 0; v < 4; ++v) CHECK(adj.degree(v) == 3);
}
