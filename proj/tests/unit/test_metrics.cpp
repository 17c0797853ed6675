#include <doctest.h>

#include <cmath>
#include <numbers>

#include "helixdt/delaunay.hpp"
#include "helixdt/generators.hpp"
#include "helixdt/metrics.hpp"
#include "helixdt/random.hpp"

using namespace helixdt;

namespace {

PointCloud cloud_of(std::vector<Point3> pts) {
  PointCloud c;
  c.points = std::move(pts);
  return c;
}

PointCloud sphere_cloud(std::size_t count) {
  PointCloud c;
  c.points = sphere_spiral(count);
  c.surface = std::make_shared<SurfaceModel>(make_sphere_union({{0, 0, 0}}));
  return c;
}

}  // namespace

TEST_CASE("spread of small sets") {
  const SpreadReport two = spread(cloud_of({{0, 0, 0}, {3, 4, 0}}));
  CHECK(two.spread == 1.0);
  CHECK(two.closest_pair.distance == 5.0);

  std::vector<Point3> lattice;
  for (int i = 0; i < 10; ++i)
    for (int j = 0; j < 10; ++j)
      for (int k = 0; k < 10; ++k) lattice.push_back({double(i), double(j), double(k)});
  const SpreadReport r = spread(cloud_of(lattice));
  CHECK(r.closest_pair.distance == 1.0);
  CHECK(r.closest_pair.first == 0);
  CHECK(r.closest_pair.second == 1);
  CHECK(r.diameter.distance == doctest::Approx(9 * std::sqrt(3.0)));
  CHECK(r.spread == doctest::Approx(15.588457).epsilon(1e-6));
  CHECK(r.spread == doctest::Approx(spread(triangulate(cloud_of(lattice))).spread));

  CHECK_THROWS_AS(spread(cloud_of({{1, 1, 1}})), std::invalid_argument);
}

TEST_CASE("spread equals the brute-force computation") {
  Rng rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 2 + uniform_index(rng, 1999);
    PointCloud c;
    const double scale = std::pow(10.0, uniform_real(rng, -3, 3));
    for (std::size_t i = 0; i < n; ++i)
      c.points.push_back({scale * unit_double(rng), scale * unit_double(rng), scale * unit_double(rng)});
    const SpreadReport fast = spread(c);
    const SpreadReport slow = spread_brute_force(c.points);
    CHECK(fast.closest_pair.distance == slow.closest_pair.distance);
    CHECK(fast.diameter.distance == slow.diameter.distance);
    CHECK(fast.spread == slow.spread);
    CHECK(fast.spread >= 1.0);
  }
  const PointCloud helix = gen_helix_sqrt(2000);
  CHECK(spread(helix).spread == spread_brute_force(helix.points).spread);
  CHECK(spread(triangulate(helix)).spread == spread_brute_force(helix.points).spread);
}

TEST_CASE("spread is invariant under permutations and rigid motions") {
  Rng rng(23);
  PointCloud c;
  for (int i = 0; i < 500; ++i) c.points.push_back({unit_double(rng), unit_double(rng), unit_double(rng)});
  const double base = spread(c).spread;
  for (int trial = 0; trial < 10; ++trial) {
    PointCloud moved = c;
    std::shuffle(moved.points.begin(), moved.points.end(), rng);
    const Rotation rot = random_rotation(rng);
    const Point3 shift{uniform_real(rng, -100, 100), uniform_real(rng, -100, 100), uniform_real(rng, -100, 100)};
    for (Point3& p : moved.points) p = rot(p) + shift;
    CHECK(std::fabs(spread(moved).spread - base) <= 1e-9 * base);
  }
}

TEST_CASE("sample measure") {
  CHECK(sample_measure(make_sphere_union({{0, 0, 0}})) == doctest::Approx(4 * std::numbers::pi));
  const auto centers = ball_row_centers(16);
  CHECK(sample_measure(make_sphere_union(centers)) == doctest::Approx(4 * std::numbers::pi * centers.size()));
  CHECK(sample_measure(make_sphere_union({{0, 0, 0}}, 2.0)) == doctest::Approx(4 * std::numbers::pi));

  const SeamParams p{33, 0.25};
  const SurfaceModel sausages = make_sausage_pair(p.half_length(), p.offset());
  const double closed = 2 * (2 * std::numbers::pi * 2 * p.half_length() + 4 * std::numbers::pi);
  CHECK(sausages.area() == doctest::Approx(closed));
  CHECK(sample_measure(sausages) == doctest::Approx(closed));
  CHECK(sample_measure_quadrature(sausages) == doctest::Approx(closed).epsilon(1e-6));
  const SurfaceModel capped = make_cylinder_capped({0, 0, 0}, {3, 0, 0}, 0.5);
  CHECK(sample_measure_quadrature(capped) == doctest::Approx(sample_measure(capped)).epsilon(1e-6));

  CHECK_THROWS_AS(sample_measure(SurfaceModel{}), std::invalid_argument);
}

TEST_CASE("check_sample") {
  const PointCloud dense = sphere_cloud(4096);
  const SampleReport pass = check_sample(dense, *dense.surface, 0.1);
  CHECK(pass.is_sample);
  CHECK(pass.epsilon_measured <= 0.1);
  CHECK(pass.probes == 4096);

  const PointCloud sparse = sphere_cloud(4);
  CHECK_FALSE(check_sample(sparse, *sparse.surface, 0.1).is_sample);

  const SampleReport half = check_sample(dense, *dense.surface, 0.05);
  CHECK(pass.parsimony_ratio == doctest::Approx(4 * half.parsimony_ratio));
  CHECK(pass.parsimony_ratio == doctest::Approx(4096 * 0.01 / (4 * std::numbers::pi)));

  const SampleReport again = check_sample(dense, *dense.surface, 0.1);
  CHECK(again.epsilon_measured == pass.epsilon_measured);
  CHECK(again.sd2_min == pass.sd2_min);
  CHECK(again.to_json().dump() == pass.to_json().dump());

  CHECK_THROWS_AS(check_sample(dense, *dense.surface, 0.1, 999), std::invalid_argument);
}

TEST_CASE("neighbors_within and far_reaching_count") {
  const Triangulation tet = triangulate(cloud_of({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}}));
  CHECK(normalization_scale(tet) == doctest::Approx(2.0));
  CHECK(neighbors_within(tet, 100.0) == std::vector<std::size_t>{3, 3, 3, 3});
  CHECK(neighbors_within(tet, 2.0) == std::vector<std::size_t>{3, 1, 1, 1});
  CHECK(far_reaching_count(tet, 2.5) == 3);
  CHECK(far_reaching_count(tet, 100.0) == 0);
}

TEST_CASE("degree law on the sqrt helix") {
  const Triangulation tri = triangulate(gen_helix_sqrt(4096));
  std::vector<double> rs{8, 16, 32, 64}, maxima;
  for (double r : rs) {
    const auto counts = neighbors_within(tri, r);
    maxima.push_back(static_cast<double>(*std::max_element(counts.begin(), counts.end())));
  }
  CHECK(maxima == std::vector<double>{8, 28, 66, 138});
  CHECK(fit_loglog(rs, maxima).slope <= 2.3);
}

TEST_CASE("fit_loglog") {
  const std::vector<double> xs{1, 2, 4, 8}, ys{3, 12, 48, 192};
  const LogLogFit f = fit_loglog(xs, ys);
  CHECK(f.slope == doctest::Approx(2.0));
  CHECK(f.intercept == doctest::Approx(std::log(3.0)));
  CHECK(f.residual == doctest::Approx(0.0).epsilon(1e-12));
  CHECK_THROWS_AS(fit_loglog(std::vector<double>{1}, std::vector<double>{1}), std::invalid_argument);
  CHECK_THROWS_AS(fit_loglog(std::vector<double>{1, 2}, std::vector<double>{1, -1}), std::invalid_argument);
}

TEST_CASE("complexity monitor") {
  for (const PointCloud& c : {gen_helix_sqrt(1024), gen_mattress(4096, 16.0), gen_seams(17)}) {
    const Triangulation tri = triangulate(c);
    const ComplexityMonitor m = monitor_complexity(tri);
    CHECK(m.within_n_squared);
    CHECK(m.n_edges == stats(tri).n_edges);
    CHECK(m.spread_pow4 == doctest::Approx(std::pow(m.spread, 4)));
  }
}
