#include "helixdt/generators.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <stdexcept>
#include <string>

namespace helixdt {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTurnMargin = 1e-3;

[[noreturn]] void reject(const std::string& what) { throw std::invalid_argument(what); }

PointCloud finish(PointCloud cloud) {
  check_cloud(cloud);
  return cloud;
}

}  // namespace

PointCloud gen_helix(const HelixParams& p) {
  if (p.n < 2) reject("helix: n must be at least 2");
  if (!(p.pitch > 0.0)) reject("helix: pitch must be positive");
  if (!(p.angular_rate > 0.0) || !std::isfinite(p.angular_rate)) reject("helix: angular_rate must be positive");
  PointCloud c;
  c.points.reserve(p.n);
  for (std::size_t t = 1; t <= p.n; ++t) {
    const double s = static_cast<double>(t);
    c.points.push_back({p.pitch * p.axial_step * s, std::cos(s / p.angular_rate), std::sin(s / p.angular_rate)});
  }
  c.provenance.generator = "helix_general";
  c.provenance.params = {{"n", p.n}, {"pitch", p.pitch}, {"angular_rate", p.angular_rate}, {"axial_step", p.axial_step}};
  return finish(std::move(c));
}

PointCloud gen_helix_spread(std::size_t n, double spread) {
  if (n < 2) reject("helix_spread: n must be at least 2");
  const double nd = static_cast<double>(n);
  if (!(spread >= std::sqrt(nd) && spread <= nd))
    reject("helix_spread: spread must lie in [sqrt(n), n], got " + std::to_string(spread));
  PointCloud c;
  c.points.reserve(n);
  for (std::size_t t = 1; t <= n; ++t) {
    const double s = static_cast<double>(t);
    c.points.push_back({s / nd, std::cos(s / spread), std::sin(s / spread)});
  }
  c.provenance.generator = "helix_spread";
  c.provenance.params = {{"n", n}, {"spread", spread}};
  return finish(std::move(c));
}

PointCloud gen_helix_sqrt(std::size_t n, std::size_t cap_points) {
  if (n < 2) reject("helix: n must be at least 2");
  PointCloud c = gen_helix_spread(n, std::sqrt(static_cast<double>(n)));
  c.provenance.generator = "helix";
  c.provenance.params = {{"n", n}, {"cap_points", cap_points}};
  if (cap_points > 0) {
    const Point3 lo{1.0 / static_cast<double>(n), 0, 0};
    const Point3 hi{1.0, 0, 0};
    for (const Point3& h : hemisphere_spiral(cap_points)) {
      // Local z is the outward axis direction of each cap.
      c.points.push_back({hi.x + h.z, h.x, h.y});
    }
    for (const Point3& h : hemisphere_spiral(cap_points)) c.points.push_back({lo.x - h.z, h.x, h.y});
    c.surface = std::make_shared<SurfaceModel>(make_cylinder_capped(lo, hi, 1.0));
  }
  return finish(std::move(c));
}

MattressParams mattress_params(std::size_t n, double spread) {
  const double nd = static_cast<double>(n);
  if (n < 1) reject("mattress: n must be positive");
  const double lo = std::cbrt(nd);
  const double hi = std::sqrt(nd);
  if (!(spread >= lo * (1 - 1e-12) && spread <= hi * (1 + 1e-12)))
    reject("mattress: spread must lie in [cbrt(n), sqrt(n)] = [" + std::to_string(lo) + ", " +
           std::to_string(hi) + "], got " + std::to_string(spread));
  const double w = std::round(nd / (spread * spread));
  const double r = std::round(std::pow(spread, 6) / (nd * nd));
  if (w < 1) reject("mattress: lattice width rounds to 0");
  MattressParams p;
  p.w = static_cast<std::size_t>(w);
  p.r = static_cast<std::size_t>(std::max(1.0, r));
  return p;
}

PointCloud gen_mattress(const MattressParams& p) {
  if (p.w < 1 || p.r < 1) reject("mattress: w and r must be at least 1");
  if (p.count() > 50'000'000) reject("mattress: too many points");
  const double rd = static_cast<double>(p.r);
  const double rate = std::sqrt(rd);
  PointCloud c;
  c.points.reserve(p.count());
  int helix = 0;
  for (std::size_t i = 1; i <= p.w; ++i)
    for (std::size_t j = 1; j <= p.w; ++j, ++helix)
      for (std::size_t t = 1; t <= p.w * p.r; ++t) {
        const double s = static_cast<double>(t);
        c.points.push_back({s / rd, 4.0 * static_cast<double>(i) + std::cos(s / rate),
                            4.0 * static_cast<double>(j) + std::sin(s / rate)});
        c.labels.push_back(helix);
      }
  c.provenance.generator = "mattress";
  c.provenance.params = {{"w", p.w}, {"r", p.r}, {"count", p.count()}};
  return finish(std::move(c));
}

PointCloud gen_mattress(std::size_t n, double spread) {
  PointCloud c = gen_mattress(mattress_params(n, spread));
  nlohmann::ordered_json params = {{"n", n}, {"spread", spread}};
  for (auto& [key, value] : c.provenance.params.items()) params[key] = value;
  c.provenance.params = std::move(params);
  return c;
}

PointCloud gen_helix_single_turn(std::size_t n, HelixSpacing spacing, std::uint64_t seed) {
  if (n < 2) reject("helix_single_turn: n must be at least 2");
  const double lo = -kPi + kTurnMargin;
  const double hi = kPi - kTurnMargin;
  std::vector<double> ts;
  ts.reserve(n);
  if (spacing == HelixSpacing::Even) {
    for (std::size_t i = 0; i < n; ++i)
      ts.push_back(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1));
  } else {
    Rng rng(seed);
    while (ts.size() < n) {
      const double t = uniform_real(rng, lo, hi);
      if (std::find(ts.begin(), ts.end(), t) == ts.end()) ts.push_back(t);
    }
    std::sort(ts.begin(), ts.end());
  }
  PointCloud c;
  for (double t : ts) c.points.push_back({t, std::cos(t), std::sin(t)});
  c.provenance.generator = "helix_single_turn";
  c.provenance.params = {{"n", n}, {"spacing", spacing == HelixSpacing::Even ? "even" : "random"}};
  c.provenance.seed = seed;
  return finish(std::move(c));
}

PointCloud gen_seams(std::size_t m, double spacing) {
  if (m < 3 || m % 2 == 0) reject("seams: m must be odd and at least 3");
  if (!(spacing > 0.0) || !std::isfinite(spacing)) reject("seams: spacing must be positive");
  SeamParams p{m, spacing};
  const double d = p.offset();
  const long half = static_cast<long>(m - 1) / 2;
  PointCloud c;
  for (long i = -half; i <= half; ++i) {
    c.points.push_back({static_cast<double>(i) * spacing, 0.0, d});
    c.labels.push_back(0);
  }
  for (long j = -half; j <= half; ++j) {
    c.points.push_back({0.0, static_cast<double>(j) * spacing, -d});
    c.labels.push_back(1);
  }
  c.surface = std::make_shared<SurfaceModel>(make_sausage_pair(p.half_length(), d));
  c.provenance.generator = "seams";
  c.provenance.params = {{"m", m},
                         {"spacing", spacing},
                         {"half_length", p.half_length()},
                         {"offset", d},
                         {"sample_size", p.sample_size()}};
  return finish(std::move(c));
}

std::size_t ball_row_length(std::size_t k) { return 2 * (k / 4) + 1; }

std::vector<Point3> ball_row_centers(std::size_t k) {
  const long q = static_cast<long>(k / 4);
  const double kd = static_cast<double>(k);
  std::vector<Point3> centers;
  for (long i = -q; i <= q; ++i) centers.push_back({static_cast<double>(i) * kd, 0.0, kd * kd});
  for (long j = -q; j <= q; ++j) centers.push_back({0.0, static_cast<double>(j) * kd, -kd * kd});
  return centers;
}

PointCloud gen_ball_rows(std::size_t k, std::size_t per_sphere, std::uint64_t seed) {
  if (k < 4) reject("ball_rows: k must be at least 4");
  if (per_sphere < 1) reject("ball_rows: per_sphere must be at least 1");
  const auto centers = ball_row_centers(k);
  const auto spiral = sphere_spiral(per_sphere);
  Rng rng(seed);
  PointCloud c;
  for (std::size_t s = 0; s < centers.size(); ++s) {
    if (per_sphere == 1) {
      c.points.push_back(centers[s] + Point3{0, 0, 1});
    } else {
      const Rotation rot = random_rotation(rng);
      for (const Point3& u : spiral) c.points.push_back(centers[s] + rot(u));
    }
    c.labels.insert(c.labels.end(), per_sphere, static_cast<int>(s));
  }
  c.surface = std::make_shared<SurfaceModel>(make_sphere_union(centers));
  c.provenance.generator = "ball_rows";
  c.provenance.params = {{"k", k}, {"per_sphere", per_sphere}, {"spheres", centers.size()}};
  c.provenance.seed = seed;
  return finish(std::move(c));
}

PointCloud gen_random_ball_rows(std::size_t k, std::size_t n, std::uint64_t seed) {
  if (k < 4) reject("random_ball_rows: k must be at least 4");
  if (n < 1) reject("random_ball_rows: n must be at least 1");
  const auto centers = ball_row_centers(k);
  Rng rng(seed);
  PointCloud c;
  for (std::size_t i = 0; i < n; ++i) {
    const auto s = uniform_index(rng, centers.size());
    c.points.push_back(centers[s] + unit_vector(rng));
    c.labels.push_back(static_cast<int>(s));
  }
  c.surface = std::make_shared<SurfaceModel>(make_sphere_union(centers));
  c.provenance.generator = "random_ball_rows";
  c.provenance.params = {{"k", k}, {"n", n}, {"spheres", centers.size()}};
  c.provenance.seed = seed;
  return finish(std::move(c));
}

std::vector<Point3> sphere_spiral(std::size_t count) {
  const double golden = kPi * (3.0 - std::sqrt(5.0));
  std::vector<Point3> out;
  out.reserve(count);
  const double nd = static_cast<double>(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double z = 1.0 - (2.0 * static_cast<double>(i) + 1.0) / nd;
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden * static_cast<double>(i);
    out.push_back({r * std::cos(phi), r * std::sin(phi), z});
  }
  return out;
}

std::vector<Point3> hemisphere_spiral(std::size_t count) {
  const double golden = kPi * (3.0 - std::sqrt(5.0));
  std::vector<Point3> out;
  out.reserve(count);
  const double nd = static_cast<double>(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double z = 1.0 - (static_cast<double>(i) + 0.5) / nd;
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden * static_cast<double>(i);
    out.push_back({r * std::cos(phi), r * std::sin(phi), z});
  }
  return out;
}

Rotation random_rotation(Rng& rng) {
  const double u1 = unit_double(rng);
  const double u2 = unit_double(rng) * 2.0 * kPi;
  const double u3 = unit_double(rng) * 2.0 * kPi;
  const double a = std::sqrt(1.0 - u1), b = std::sqrt(u1);
  const double x = a * std::sin(u2), y = a * std::cos(u2), z = b * std::sin(u3), w = b * std::cos(u3);
  Rotation r;
  r.m[0][0] = 1 - 2 * (y * y + z * z);
  r.m[0][1] = 2 * (x * y - z * w);
  r.m[0][2] = 2 * (x * z + y * w);
  r.m[1][0] = 2 * (x * y + z * w);
  r.m[1][1] = 1 - 2 * (x * x + z * z);
  r.m[1][2] = 2 * (y * z - x * w);
  r.m[2][0] = 2 * (x * z - y * w);
  r.m[2][1] = 2 * (y * z + x * w);
  r.m[2][2] = 1 - 2 * (x * x + y * y);
  return r;
}

}  // namespace helixdt
