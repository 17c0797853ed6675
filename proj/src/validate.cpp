#include "helixdt/validate.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <random>
#include <set>
#include <string>

#include "helixdt/kdtree.hpp"
#include "helixdt/predicates.hpp"

namespace helixdt {

const char* to_string(Violation v) {
  switch (v) {
    case Violation::None: return "none";
    case Violation::BadIndex: return "bad_index";
    case Violation::BadLink: return "bad_link";
    case Violation::Orientation: return "orientation";
    case Violation::MissingVertex: return "missing_vertex";
    case Violation::Euler: return "euler";
    case Violation::HullEuler: return "hull_euler";
    case Violation::NotDelaunay: return "not_delaunay";
    case Violation::HullNotConvex: return "hull_not_convex";
  }
  return "unknown";
}

namespace {

ValidationReport fail(Violation kind, std::string msg) {
  ValidationReport r;
  r.ok = false;
  r.kind = kind;
  r.message = std::move(msg);
  return r;
}

std::string tet_name(std::size_t t) { return "tet " + std::to_string(t); }

std::array<VertexId, 3> face_sorted(const Tet& t, int opposite) {
  std::array<VertexId, 3> f{};
  int m = 0;
  for (int i = 0; i < 4; ++i)
    if (i != opposite) f[m++] = t.v[i];
  std::sort(f.begin(), f.end());
  return f;
}

// Positive iff `p` lies strictly inside the (perturbed) circumsphere of the
// positively oriented finite tet `t`.
bool inside_finite(const std::vector<Point3>& pts, const Tet& t, VertexId p) {
  return insphere_perturbed(pts[t.v[0]], pts[t.v[1]], pts[t.v[2]], pts[t.v[3]], pts[p],
                            {t.v[0], t.v[1], t.v[2], t.v[3], p}) == Sign::Positive;
}

// True iff `p` is in conflict with the ghost tet `g` (sees its hull face, or
// is coplanar and inside the perturbed circumcircle).
bool beyond_hull_face(const std::vector<Point3>& pts, const Tet& g, VertexId p) {
  const Point3& a = pts[g.v[0]];
  const Point3& b = pts[g.v[1]];
  const Point3& c = pts[g.v[2]];
  const Sign s = orient3d(a, b, c, pts[p]);
  if (s != Sign::Zero) return s == Sign::Positive;
  return coplanar_incircle_perturbed(a, b, c, pts[p], {g.v[0], g.v[1], g.v[2], p}) ==
         Sign::Positive;
}

struct Circumball {
  Point3 center;
  double radius = 0.0;  // conservative: every point farther is strictly outside
  bool reliable = false;
};

// Circumcenter in extended precision with a forward error bound. The
// returned radius already includes twice the center error, so any point
// farther than `radius` from `center` is provably outside the sphere.
Circumball circumball(const Point3& pa, const Point3& pb, const Point3& pc, const Point3& pd) {
  using ld = long double;
  const ld eps = LDBL_EPSILON;
  const ld ax = pa.x, ay = pa.y, az = pa.z;
  const ld ux = pb.x - ax, uy = pb.y - ay, uz = pb.z - az;
  const ld vx = pc.x - ax, vy = pc.y - ay, vz = pc.z - az;
  const ld wx = pd.x - ax, wy = pd.y - ay, wz = pd.z - az;

  const ld vwx = vy * wz - vz * wy, vwy = vz * wx - vx * wz, vwz = vx * wy - vy * wx;
  const ld wux = wy * uz - wz * uy, wuy = wz * ux - wx * uz, wuz = wx * uy - wy * ux;
  const ld uvx = uy * vz - uz * vy, uvy = uz * vx - ux * vz, uvz = ux * vy - uy * vx;
  const ld pvwx = std::fabs(vy * wz) + std::fabs(vz * wy);
  const ld pvwy = std::fabs(vz * wx) + std::fabs(vx * wz);
  const ld pvwz = std::fabs(vx * wy) + std::fabs(vy * wx);
  const ld pwux = std::fabs(wy * uz) + std::fabs(wz * uy);
  const ld pwuy = std::fabs(wz * ux) + std::fabs(wx * uz);
  const ld pwuz = std::fabs(wx * uy) + std::fabs(wy * ux);
  const ld puvx = std::fabs(uy * vz) + std::fabs(uz * vy);
  const ld puvy = std::fabs(uz * vx) + std::fabs(ux * vz);
  const ld puvz = std::fabs(ux * vy) + std::fabs(uy * vx);

  const ld u2 = ux * ux + uy * uy + uz * uz;
  const ld v2 = vx * vx + vy * vy + vz * vz;
  const ld w2 = wx * wx + wy * wy + wz * wz;

  const ld den = 2 * (ux * vwx + uy * vwy + uz * vwz);
  const ld perm_den = 2 * (std::fabs(ux) * pvwx + std::fabs(uy) * pvwy + std::fabs(uz) * pvwz);
  const std::array<ld, 3> num{u2 * vwx + v2 * wux + w2 * uvx, u2 * vwy + v2 * wuy + w2 * uvy,
                              u2 * vwz + v2 * wuz + w2 * uvz};
  const std::array<ld, 3> perm_num{u2 * pvwx + v2 * pwux + w2 * puvx,
                                   u2 * pvwy + v2 * pwuy + w2 * puvy,
                                   u2 * pvwz + v2 * pwuz + w2 * puvz};
  // Generous constant: every quantity above is a short sum of products of
  // rounded differences.
  constexpr ld kErr = 64;
  const ld den_err = kErr * eps * perm_den;
  Circumball out;
  if (!(std::fabs(den) > 2 * den_err)) return out;

  const std::array<ld, 3> base{ax, ay, az};
  std::array<ld, 3> c{};
  ld err2 = 0;
  for (int i = 0; i < 3; ++i) {
    const ld off = num[i] / den;
    const ld e = (kErr * eps * perm_num[i] + std::fabs(off) * den_err) / (std::fabs(den) - den_err) +
                 std::fabs(off) * 4 * eps;
    c[i] = base[i] + off;
    const ld total = e + std::fabs(c[i]) * (4 * eps + DBL_EPSILON);
    err2 += total * total;
  }
  const ld err = std::sqrt(err2) * 1.01L;
  out.center = {static_cast<double>(c[0]), static_cast<double>(c[1]), static_cast<double>(c[2])};
  ld r = 0;
  for (const Point3* p : {&pa, &pb, &pc, &pd}) {
    const ld dx = p->x - c[0], dy = p->y - c[1], dz = p->z - c[2];
    r = std::max(r, std::sqrt(dx * dx + dy * dy + dz * dz));
  }
  const ld radius = (r + 2 * err) * (1 + 1e-12L) + 1e-300L;
  if (!std::isfinite(static_cast<double>(radius))) return out;
  out.radius = static_cast<double>(radius) * (1 + 1e-15);
  out.reliable = true;
  return out;
}

}  // namespace

ValidationReport validate(const Triangulation& tri, const ValidateOptions& options) {
  const auto& pts = tri.points();
  const std::size_t n = pts.size();
  if (tri.is_lower_dimensional()) {
    for (const auto& [a, b] : tri.lower_edges())
      if (a >= n || b >= n || a >= b) return fail(Violation::BadIndex, "lower-dimensional edge out of range");
    ValidationReport r;
    r.message = "lower-dimensional complex (dimension " + std::to_string(tri.dimension()) + ")";
    return r;
  }

  const auto& tets = tri.tets();
  // Indices.
  for (std::size_t t = 0; t < tets.size(); ++t) {
    const Tet& T = tets[t];
    for (int i = 0; i < 4; ++i) {
      const bool ghost_ok = (i == 3);
      if (T.v[i] == kGhostVertex ? !ghost_ok : T.v[i] >= n)
        return fail(Violation::BadIndex, tet_name(t) + " has an invalid vertex in slot " + std::to_string(i));
      if (T.nb[i] >= tets.size())
        return fail(Violation::BadIndex, tet_name(t) + " has an invalid neighbor in slot " + std::to_string(i));
    }
    std::array<VertexId, 4> s = T.v;
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end())
      return fail(Violation::BadIndex, tet_name(t) + " repeats a vertex");
  }

  // Mutual neighbor links across identical faces.
  for (std::size_t t = 0; t < tets.size(); ++t) {
    for (int i = 0; i < 4; ++i) {
      const Tet& N = tets[tets[t].nb[i]];
      int back = -1;
      for (int j = 0; j < 4; ++j)
        if (N.nb[j] == t) back = j;
      if (back < 0)
        return fail(Violation::BadLink, tet_name(t) + " slot " + std::to_string(i) + " is not linked back");
      if (face_sorted(tets[t], i) != face_sorted(N, back))
        return fail(Violation::BadLink, tet_name(t) + " slot " + std::to_string(i) + " shares no face with its neighbor");
    }
  }

  // Orientation: finite tets positive; the finite vertex across a hull face
  // lies strictly on the inner side.
  for (std::size_t t = 0; t < tets.size(); ++t) {
    const Tet& T = tets[t];
    if (!T.is_ghost()) {
      if (orient3d(pts[T.v[0]], pts[T.v[1]], pts[T.v[2]], pts[T.v[3]]) != Sign::Positive)
        return fail(Violation::Orientation, tet_name(t) + " is not positively oriented");
    } else {
      const Tet& F = tets[T.nb[3]];
      if (F.is_ghost()) return fail(Violation::BadLink, tet_name(t) + " hull face borders another ghost");
      VertexId inner = kGhostVertex;
      for (int j = 0; j < 4; ++j)
        if (F.nb[j] == t) inner = F.v[j];
      if (orient3d(pts[T.v[0]], pts[T.v[1]], pts[T.v[2]], pts[inner]) != Sign::Negative)
        return fail(Violation::Orientation, "ghost " + tet_name(t) + " is oriented inward");
    }
  }

  // Euler characteristics of the ball and of its boundary sphere.
  std::vector<char> used(n, 0), on_hull(n, 0);
  std::vector<std::uint64_t> edge_keys, hull_edge_keys;
  std::size_t finite = 0, ghosts = 0;
  for (const Tet& T : tets) {
    if (T.is_ghost()) {
      ++ghosts;
      for (int i = 0; i < 3; ++i) {
        on_hull[T.v[i]] = 1;
        const VertexId a = std::min(T.v[i], T.v[(i + 1) % 3]);
        const VertexId b = std::max(T.v[i], T.v[(i + 1) % 3]);
        hull_edge_keys.push_back((std::uint64_t{a} << 32) | b);
      }
      continue;
    }
    ++finite;
    for (int i = 0; i < 4; ++i) {
      used[T.v[i]] = 1;
      for (int j = i + 1; j < 4; ++j) {
        const VertexId a = std::min(T.v[i], T.v[j]);
        const VertexId b = std::max(T.v[i], T.v[j]);
        edge_keys.push_back((std::uint64_t{a} << 32) | b);
      }
    }
  }
  for (std::size_t v = 0; v < n; ++v)
    if (!used[v]) return fail(Violation::MissingVertex, "vertex " + std::to_string(v) + " is not in any tet");
  std::sort(edge_keys.begin(), edge_keys.end());
  edge_keys.erase(std::unique(edge_keys.begin(), edge_keys.end()), edge_keys.end());
  std::sort(hull_edge_keys.begin(), hull_edge_keys.end());
  hull_edge_keys.erase(std::unique(hull_edge_keys.begin(), hull_edge_keys.end()), hull_edge_keys.end());
  if ((4 * finite + ghosts) % 2 != 0) return fail(Violation::Euler, "odd face count");
  const long long V = static_cast<long long>(n);
  const long long E = static_cast<long long>(edge_keys.size());
  const long long F = static_cast<long long>((4 * finite + ghosts) / 2);
  const long long T = static_cast<long long>(finite);
  if (V - E + F - T != 1)
    return fail(Violation::Euler, "V - E + F - T = " + std::to_string(V - E + F - T) + ", expected 1");
  const long long Vh = std::count(on_hull.begin(), on_hull.end(), 1);
  const long long Eh = static_cast<long long>(hull_edge_keys.size());
  const long long Fh = static_cast<long long>(ghosts);
  if (Vh - Eh + Fh != 2)
    return fail(Violation::HullEuler, "hull V - E + F = " + std::to_string(Vh - Eh + Fh) + ", expected 2");

  ValidationReport report;
  // Local checks: every interior face is locally Delaunay and every hull
  // edge is convex.
  for (std::size_t t = 0; t < tets.size(); ++t) {
    const Tet& A = tets[t];
    for (int i = 0; i < 4; ++i) {
      const std::uint32_t nb = A.nb[i];
      if (nb < t) continue;
      const Tet& B = tets[nb];
      VertexId opposite = kGhostVertex;
      for (int j = 0; j < 4; ++j)
        if (B.nb[j] == t) opposite = B.v[j];
      if (!A.is_ghost() && !B.is_ghost()) {
        ++report.exact_checks;
        if (inside_finite(pts, A, opposite))
          return fail(Violation::NotDelaunay, tet_name(t) + " contains vertex " + std::to_string(opposite) +
                                                  " of its neighbor");
      } else if (A.is_ghost() && B.is_ghost()) {
        if (beyond_hull_face(pts, A, opposite))
          return fail(Violation::HullNotConvex, "hull is not convex at ghost " + tet_name(t));
      }
    }
  }

  if (n <= options.global_scan_limit) {
    report.global_scan = true;
    KdTree tree(pts);
    for (std::size_t t = 0; t < tets.size(); ++t) {
      const Tet& A = tets[t];
      if (A.is_ghost()) continue;
      auto check = [&](VertexId p) {
        if (p == A.v[0] || p == A.v[1] || p == A.v[2] || p == A.v[3]) return true;
        ++report.exact_checks;
        return !inside_finite(pts, A, p);
      };
      const Circumball ball = circumball(pts[A.v[0]], pts[A.v[1]], pts[A.v[2]], pts[A.v[3]]);
      VertexId bad = kGhostVertex;
      if (ball.reliable) {
        tree.for_each_within(ball.center, ball.radius, [&](VertexId p) {
          if (bad == kGhostVertex && !check(p)) bad = p;
        });
      } else {
        for (VertexId p = 0; p < n && bad == kGhostVertex; ++p)
          if (!check(p)) bad = p;
      }
      if (bad != kGhostVertex)
        return fail(Violation::NotDelaunay,
                    tet_name(t) + " circumsphere contains vertex " + std::to_string(bad));
    }
    // Hull faces against all vertices while that stays affordable; above
    // that the local convexity check already done is what remains.
    if (ghosts * n <= 200'000'000) {
      for (std::size_t t = 0; t < tets.size(); ++t) {
        const Tet& G = tets[t];
        if (!G.is_ghost()) continue;
        for (VertexId p = 0; p < n; ++p) {
          if (p == G.v[0] || p == G.v[1] || p == G.v[2]) continue;
          if (beyond_hull_face(pts, G, p))
            return fail(Violation::HullNotConvex,
                        "vertex " + std::to_string(p) + " lies beyond hull face of ghost " + tet_name(t));
        }
      }
    }
  } else {
    std::mt19937_64 rng(options.seed);
    std::vector<std::uint32_t> finite_ids;
    for (std::uint32_t t = 0; t < tets.size(); ++t)
      if (!tets[t].is_ghost()) finite_ids.push_back(t);
    std::uniform_int_distribution<std::size_t> pick_tet(0, finite_ids.size() - 1);
    std::uniform_int_distribution<VertexId> pick_vertex(0, static_cast<VertexId>(n - 1));
    for (std::size_t s = 0; s < options.sample_pairs; ++s) {
      const std::uint32_t t = finite_ids[pick_tet(rng)];
      const VertexId p = pick_vertex(rng);
      const Tet& A = tets[t];
      if (p == A.v[0] || p == A.v[1] || p == A.v[2] || p == A.v[3]) continue;
      ++report.exact_checks;
      if (inside_finite(pts, A, p))
        return fail(Violation::NotDelaunay,
                    tet_name(t) + " circumsphere contains vertex " + std::to_string(p));
    }
  }
  report.message = "ok";
  return report;
}

}  // namespace helixdt
