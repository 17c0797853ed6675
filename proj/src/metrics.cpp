#include "helixdt/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

#include "helixdt/kdtree.hpp"
#include "helixdt/random.hpp"

namespace helixdt {

namespace {

constexpr double kPi = std::numbers::pi;

nlohmann::ordered_json pair_json(const PointPair& p) {
  return {{"i", p.first}, {"j", p.second}, {"distance", p.distance}};
}

// Candidate (d2, i, j) with i < j, ordered by distance then indices.
struct Candidate {
  double d2;
  VertexId i, j;
  bool operator<(const Candidate& o) const {
    if (d2 != o.d2) return d2 < o.d2;
    if (i != o.i) return i < o.i;
    return j < o.j;
  }
};

Candidate make_candidate(std::span<const Point3> p, VertexId a, VertexId b) {
  if (a > b) std::swap(a, b);
  return {squared_distance(p[a], p[b]), a, b};
}

PointPair to_pair(const Candidate& c) { return {c.i, c.j, std::sqrt(c.d2)}; }

PointPair closest_pair_sweep(std::span<const Point3> p) {
  std::vector<VertexId> order(p.size());
  std::iota(order.begin(), order.end(), VertexId{0});
  std::sort(order.begin(), order.end(), [&](VertexId a, VertexId b) { return p[a].x < p[b].x; });
  Candidate best = make_candidate(p, order[0], order[1]);
  for (std::size_t i = 0; i < order.size(); ++i)
    for (std::size_t j = i + 1; j < order.size(); ++j) {
      const double dx = p[order[j]].x - p[order[i]].x;
      if (dx * dx > best.d2 * (1 + 1e-9)) break;
      best = std::min(best, make_candidate(p, order[i], order[j]));
    }
  return to_pair(best);
}

struct CellKey {
  std::int64_t x, y, z;
  bool operator==(const CellKey&) const = default;
};
struct CellHash {
  std::size_t operator()(const CellKey& k) const {
    std::uint64_t h = static_cast<std::uint64_t>(k.x) * 0x9E3779B97F4A7C15ull;
    h ^= static_cast<std::uint64_t>(k.y) * 0xC2B2AE3D27D4EB4Full + (h << 6) + (h >> 2);
    h ^= static_cast<std::uint64_t>(k.z) * 0x165667B19E3779F9ull + (h << 6) + (h >> 2);
    return static_cast<std::size_t>(h);
  }
};

// Integral of f over [a, b] by adaptive Simpson; at least `min_depth`
// bisections are taken before the error estimate is trusted.
double simpson_rec(const std::function<double(double)>& f, double lo, double hi, double flo, double fmid,
                   double fhi, double whole, double tol, int depth, int min_depth) {
  const double mid = 0.5 * (lo + hi);
  const double flm = f(0.5 * (lo + mid)), frm = f(0.5 * (mid + hi));
  const double left = (mid - lo) / 6 * (flo + 4 * flm + fmid);
  const double right = (hi - mid) / 6 * (fmid + 4 * frm + fhi);
  const double delta = left + right - whole;
  if (depth >= 50 || (depth >= min_depth && std::fabs(delta) <= 15 * tol)) return left + right + delta / 15;
  return simpson_rec(f, lo, mid, flo, flm, fmid, left, tol / 2, depth + 1, min_depth) +
         simpson_rec(f, mid, hi, fmid, frm, fhi, right, tol / 2, depth + 1, min_depth);
}

double simpson(const std::function<double(double)>& f, double a, double b, double abs_tol) {
  const double fa = f(a), fm = f(0.5 * (a + b)), fb = f(b);
  return simpson_rec(f, a, b, fa, fm, fb, (b - a) / 6 * (fa + 4 * fm + fb), abs_tol, 0, 3);
}

void frame(const Point3& u, Point3& e1, Point3& e2) {
  const Point3 helper = std::fabs(u.x) < 0.9 ? Point3{1, 0, 0} : Point3{0, 1, 0};
  e1 = cross(u, helper);
  e1 = e1 * (1.0 / std::sqrt(dot(e1, e1)));
  e2 = cross(u, e1);
}

}  // namespace

nlohmann::ordered_json SpreadReport::to_json() const {
  nlohmann::ordered_json j;
  j["closest_pair"] = pair_json(closest_pair);
  j["diameter"] = pair_json(diameter);
  j["spread"] = spread;
  j["packing_ratio"] = packing_ratio;
  return j;
}

PointPair closest_pair(std::span<const Point3> p) {
  const std::size_t n = p.size();
  if (n < 2) throw std::invalid_argument("closest_pair: needs at least 2 points");
  if (auto dup = find_duplicate(p)) return {dup->first, dup->second, 0.0};

  std::vector<VertexId> order(n);
  std::iota(order.begin(), order.end(), VertexId{0});
  Rng rng(0x5eedc105e57ull);
  for (std::size_t i = n - 1; i > 0; --i) std::swap(order[i], order[uniform_index(rng, i + 1)]);

  double max_abs = 0.0;
  for (const Point3& q : p) max_abs = std::max({max_abs, std::fabs(q.x), std::fabs(q.y), std::fabs(q.z)});

  Candidate best = make_candidate(p, order[0], order[1]);
  double cell = 0.0;
  std::unordered_map<CellKey, std::vector<VertexId>, CellHash> grid;
  auto key_of = [&](const Point3& q) {
    return CellKey{static_cast<std::int64_t>(std::floor(q.x / cell)), static_cast<std::int64_t>(std::floor(q.y / cell)),
                   static_cast<std::int64_t>(std::floor(q.z / cell))};
  };
  // Returns false when the cell size is too small relative to the
  // coordinates for the cell indices to be trustworthy.
  auto rebuild = [&](std::size_t upto) {
    cell = std::sqrt(best.d2) * (1 + 1e-6);
    if (max_abs / cell > 0x1.0p30) return false;
    grid.clear();
    for (std::size_t k = 0; k < upto; ++k) grid[key_of(p[order[k]])].push_back(order[k]);
    return true;
  };
  if (!rebuild(2)) return closest_pair_sweep(p);
  for (std::size_t k = 2; k < n; ++k) {
    const VertexId q = order[k];
    const CellKey c = key_of(p[q]);
    Candidate local = best;
    for (std::int64_t dx = -1; dx <= 1; ++dx)
      for (std::int64_t dy = -1; dy <= 1; ++dy)
        for (std::int64_t dz = -1; dz <= 1; ++dz) {
          auto it = grid.find({c.x + dx, c.y + dy, c.z + dz});
          if (it == grid.end()) continue;
          for (VertexId o : it->second) local = std::min(local, make_candidate(p, o, q));
        }
    const bool shrunk = local.d2 < best.d2;
    best = local;
    if (shrunk) {
      if (!rebuild(k + 1)) return closest_pair_sweep(p);
    } else {
      grid[c].push_back(q);
    }
  }
  return to_pair(best);
}

PointPair farthest_pair(std::span<const Point3> p, std::span<const VertexId> candidates) {
  std::vector<VertexId> ids(candidates.begin(), candidates.end());
  if (ids.empty()) {
    ids.resize(p.size());
    std::iota(ids.begin(), ids.end(), VertexId{0});
  }
  if (ids.size() < 2) throw std::invalid_argument("farthest_pair: needs at least 2 points");
  Point3 c{0, 0, 0};
  for (VertexId v : ids) c = c + p[v];
  c = c * (1.0 / static_cast<double>(ids.size()));
  std::vector<double> radius(p.size(), 0.0);
  for (VertexId v : ids) radius[v] = distance(p[v], c);
  std::sort(ids.begin(), ids.end(), [&](VertexId a, VertexId b) {
    if (radius[a] != radius[b]) return radius[a] > radius[b];
    return a < b;
  });
  Candidate best = make_candidate(p, ids[0], ids[1]);
  best.d2 = -best.d2;  // maximize distance: order by -d2
  const double kSlack = 1 - 1e-12;
  for (std::size_t i = 1; i < ids.size(); ++i) {
    const double dbest = std::sqrt(-best.d2);
    if ((radius[ids[i]] + radius[ids[0]]) < dbest * kSlack) break;
    for (std::size_t j = 0; j < i; ++j) {
      if (radius[ids[i]] + radius[ids[j]] < std::sqrt(-best.d2) * kSlack) break;
      Candidate cand = make_candidate(p, ids[i], ids[j]);
      cand.d2 = -cand.d2;
      if (cand < best) best = cand;
    }
  }
  best.d2 = -best.d2;
  return to_pair(best);
}

namespace {

SpreadReport make_report(PointPair close, PointPair far, std::size_t n) {
  SpreadReport r;
  r.closest_pair = close;
  r.diameter = far;
  r.spread = far.distance / close.distance;
  r.packing_ratio = r.spread / std::cbrt(static_cast<double>(n));
  return r;
}

}  // namespace

SpreadReport spread(const PointCloud& cloud) {
  if (cloud.size() < 2) throw std::invalid_argument("spread: needs at least 2 points");
  return make_report(closest_pair(cloud.points), farthest_pair(cloud.points), cloud.size());
}

SpreadReport spread(const Triangulation& tri) {
  const auto& p = tri.points();
  if (p.size() < 2) throw std::invalid_argument("spread: needs at least 2 points");
  const auto hull = hull_vertices(tri);
  return make_report(closest_pair(p), farthest_pair(p, hull), p.size());
}

SpreadReport spread_brute_force(std::span<const Point3> p) {
  if (p.size() < 2) throw std::invalid_argument("spread: needs at least 2 points");
  Candidate close = make_candidate(p, 0, 1);
  Candidate far = close;
  far.d2 = -far.d2;
  for (VertexId i = 0; i < p.size(); ++i)
    for (VertexId j = i + 1; j < p.size(); ++j) {
      Candidate c = make_candidate(p, i, j);
      close = std::min(close, c);
      c.d2 = -c.d2;
      far = std::min(far, c);
    }
  far.d2 = -far.d2;
  return make_report(to_pair(close), to_pair(far), p.size());
}

std::vector<VertexId> hull_vertices(const Triangulation& tri) {
  std::vector<VertexId> out;
  if (tri.is_lower_dimensional()) {
    out.resize(tri.points().size());
    std::iota(out.begin(), out.end(), VertexId{0});
    return out;
  }
  for (const Tet& t : tri.tets())
    if (t.is_ghost()) out.insert(out.end(), t.v.begin(), t.v.begin() + 3);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

double sample_measure(const SurfaceModel& surface) {
  if (surface.components.empty()) throw std::invalid_argument("sample_measure: surface has no lfs model");
  double mu = 0.0;
  for (const Capsule& c : surface.components) {
    if (!(c.radius > 0.0)) throw std::invalid_argument("sample_measure: non-positive radius");
    mu += c.area() / (c.radius * c.radius);
  }
  return mu;
}

double sample_measure_quadrature(const SurfaceModel& surface, double rel_tol) {
  if (surface.components.empty()) throw std::invalid_argument("sample_measure: surface has no lfs model");
  double total = 0.0;
  for (const Capsule& c : surface.components) {
    if (!(c.radius > 0.0)) throw std::invalid_argument("sample_measure: non-positive radius");
    const double rho = c.radius;
    const double len = c.segment_length();
    const Point3 axis = len > 0 ? (c.b - c.a) * (1.0 / len) : Point3{0, 0, 1};
    Point3 e1, e2;
    frame(axis, e1, e2);
    const double scale = c.area() / (rho * rho);
    const double tol = rel_tol * scale * 0.25;
    auto density = [&](const Point3& x) {
      const double l = surface.lfs(x);
      return 1.0 / (l * l);
    };
    if (len > 0) {
      total += simpson(
          [&](double s) {
            return simpson(
                [&](double th) {
                  const Point3 x = c.a + (c.b - c.a) * s + (e1 * std::cos(th) + e2 * std::sin(th)) * rho;
                  return density(x) * rho * len;
                },
                0.0, 2 * kPi, tol);
          },
          0.0, 1.0, tol);
    }
    for (int cap = 0; cap < 2; ++cap) {
      const double lo = cap == 0 ? 0.0 : kPi / 2;
      const double hi = cap == 0 ? kPi / 2 : kPi;
      const Point3 end = cap == 0 ? c.b : c.a;
      total += simpson(
          [&](double phi) {
            return simpson(
                [&](double th) {
                  const Point3 dir =
                      axis * std::cos(phi) + (e1 * std::cos(th) + e2 * std::sin(th)) * std::sin(phi);
                  return density(end + dir * rho) * rho * rho * std::sin(phi);
                },
                0.0, 2 * kPi, tol);
          },
          lo, hi, tol);
    }
  }
  return total;
}

nlohmann::ordered_json SampleReport::to_json() const {
  nlohmann::ordered_json j;
  j["epsilon"] = epsilon;
  j["epsilon_measured"] = epsilon_measured;
  j["sd2_min"] = sd2_min;
  j["sd2_max"] = sd2_max;
  j["is_sample"] = is_sample;
  j["uniform_ok"] = uniform_ok;
  j["parsimony_ratio"] = parsimony_ratio;
  j["probes"] = probes;
  return j;
}

SampleReport check_sample(const PointCloud& cloud, const SurfaceModel& surface, double epsilon,
                          std::size_t probes, std::uint64_t seed) {
  if (probes < 1000) throw std::invalid_argument("check_sample: needs at least 1000 probes");
  if (cloud.size() < 2) throw std::invalid_argument("check_sample: needs at least 2 points");
  if (!(epsilon > 0.0)) throw std::invalid_argument("check_sample: epsilon must be positive");
  KdTree tree(cloud.points);
  Rng rng(seed);
  SampleReport r;
  r.epsilon = epsilon;
  r.probes = probes;
  r.sd2_min = std::numeric_limits<double>::infinity();
  r.sd2_max = 0.0;
  for (std::size_t i = 0; i < probes; ++i) {
    const Point3 x = surface.sample(rng);
    const auto nn = tree.nearest(x, 2);
    const double l = surface.lfs(x);
    const double d1 = std::sqrt(nn[0].first) / l;
    const double d2 = std::sqrt(nn[1].first) / l;
    r.epsilon_measured = std::max(r.epsilon_measured, d1);
    r.sd2_min = std::min(r.sd2_min, d2);
    r.sd2_max = std::max(r.sd2_max, d2);
  }
  r.is_sample = r.epsilon_measured <= epsilon;
  r.uniform_ok = r.sd2_min >= epsilon / 4 && r.sd2_max <= epsilon;
  r.parsimony_ratio = static_cast<double>(cloud.size()) * epsilon * epsilon / sample_measure(surface);
  return r;
}

double normalization_scale(const Triangulation& tri) { return 2.0 / closest_pair(tri.points()).distance; }

std::vector<std::size_t> neighbors_within(const Triangulation& tri, double r) {
  if (!(r > 0.0)) throw std::invalid_argument("neighbors_within: r must be positive");
  const auto& p = tri.points();
  const double scale = normalization_scale(tri);
  std::vector<std::size_t> count(p.size(), 0);
  for (const auto& [a, b] : edge_set(tri))
    if (distance(p[a], p[b]) * scale <= r) {
      ++count[a];
      ++count[b];
    }
  return count;
}

std::size_t far_reaching_count(const Triangulation& tri, double r) {
  if (!(r > 0.0)) throw std::invalid_argument("far_reaching_count: r must be positive");
  const auto& p = tri.points();
  const double scale = normalization_scale(tri);
  std::vector<double> longest(p.size(), 0.0);
  for (const auto& [a, b] : edge_set(tri)) {
    const double d = distance(p[a], p[b]) * scale;
    longest[a] = std::max(longest[a], d);
    longest[b] = std::max(longest[b], d);
  }
  return static_cast<std::size_t>(std::count_if(longest.begin(), longest.end(), [&](double d) { return d >= r; }));
}

LogLogFit fit_loglog(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size() || xs.size() < 2) throw std::invalid_argument("fit_loglog: needs at least 2 points");
  const std::size_t n = xs.size();
  std::vector<double> lx(n), ly(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(xs[i] > 0.0) || !(ys[i] > 0.0)) throw std::invalid_argument("fit_loglog: values must be positive");
    lx[i] = std::log(xs[i]);
    ly[i] = std::log(ys[i]);
  }
  const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / static_cast<double>(n);
  const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("fit_loglog: abscissae must not all be equal");
  LogLogFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double e = ly[i] - (fit.intercept + fit.slope * lx[i]);
    ss += e * e;
  }
  fit.residual = std::sqrt(ss / static_cast<double>(n));
  return fit;
}

nlohmann::ordered_json ComplexityMonitor::to_json() const {
  nlohmann::ordered_json j;
  j["n_vertices"] = n_vertices;
  j["n_edges"] = n_edges;
  j["spread"] = spread;
  j["spread_pow4"] = spread_pow4;
  j["within_spread_pow4"] = within_spread_pow4;
  j["within_n_squared"] = within_n_squared;
  return j;
}

ComplexityMonitor monitor_complexity(const Triangulation& tri) {
  ComplexityMonitor m;
  m.n_vertices = tri.points().size();
  m.n_edges = edge_set(tri).size();
  if (m.n_vertices >= 2) {
    m.spread = spread(tri).spread;
    m.spread_pow4 = std::pow(m.spread, 4);
  }
  m.within_spread_pow4 = static_cast<double>(m.n_edges) <= m.spread_pow4;
  m.within_n_squared = m.n_edges <= m.n_vertices * m.n_vertices;
  return m;
}

}  // namespace helixdt
