#include "helixdt/delaunay.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <random>
#include <string>

#include "helixdt/predicates.hpp"

namespace helixdt {

namespace {

// Reorders a tet so the ghost vertex sits in slot 3, using an even
// permutation so the orientation is preserved.
void ghost_to_last(Tet& t) {
  int k = 0;
  while (k < 4 && t.v[k] != kGhostVertex) ++k;
  if (k >= 3) return;
  std::array<int, 2> others{};
  int m = 0;
  for (int i = 0; i < 3; ++i)
    if (i != k) others[m++] = i;
  std::swap(t.v[k], t.v[3]);
  std::swap(t.nb[k], t.nb[3]);
  std::swap(t.v[others[0]], t.v[others[1]]);
  std::swap(t.nb[others[0]], t.nb[others[1]]);
}

struct FaceKey {
  std::uint64_t key;
  std::uint32_t tet;
  int slot;
};

// Each new tet face that contains `apex` (the inserted vertex, or for the
// initial hull the ghost) is identified by the other two vertices on it.
// Matching keys are glued together.
void glue_around_apex(std::vector<Tet>& tets, std::vector<FaceKey>& scratch) {
  std::sort(scratch.begin(), scratch.end(),
            [](const FaceKey& a, const FaceKey& b) { return a.key < b.key; });
  for (std::size_t i = 0; i + 1 < scratch.size(); i += 2) {
    const FaceKey& a = scratch[i];
    const FaceKey& b = scratch[i + 1];
    assert(a.key == b.key);
    tets[a.tet].nb[a.slot] = b.tet;
    tets[b.tet].nb[b.slot] = a.tet;
  }
}

std::uint64_t edge_key(VertexId a, VertexId b) {
  if (a > b) std::swap(a, b);
  return (std::uint64_t{a} << 32) | b;
}

class Builder {
 public:
  Builder(const std::vector<Point3>& pts, std::uint64_t seed) : pts_(pts), rng_(seed ^ 0x9e3779b97f4a7c15ULL) {}

  void init(std::array<VertexId, 4> s) {
    if (orient3d(pts_[s[0]], pts_[s[1]], pts_[s[2]], pts_[s[3]]) == Sign::Negative)
      std::swap(s[0], s[1]);
    Tet base;
    base.v = s;
    tets_.push_back(base);
    scratch_.clear();
    for (int i = 0; i < 4; ++i) {
      Tet g;
      g.v = s;
      g.v[i] = kGhostVertex;
      g.nb = {kNoTet, kNoTet, kNoTet, kNoTet};
      g.nb[i] = 0;
      // The ghost lies on the far side of the face from v[i]: flip orientation.
      const int s0 = (i + 1) & 3;
      const int s1 = (i + 2) & 3;
      std::swap(g.v[s0], g.v[s1]);
      ghost_to_last(g);
      const auto idx = static_cast<std::uint32_t>(tets_.size());
      tets_[0].nb[i] = idx;
      tets_.push_back(g);
    }
    for (std::uint32_t t = 1; t <= 4; ++t) {
      const Tet& g = tets_[t];
      for (int j = 0; j < 3; ++j) {
        std::array<VertexId, 2> e{};
        int m = 0;
        for (int k = 0; k < 3; ++k)
          if (k != j) e[m++] = g.v[k];
        scratch_.push_back({edge_key(e[0], e[1]), t, j});
      }
    }
    glue_around_apex(tets_, scratch_);
    stamp_.assign(tets_.size(), 0);
    last_ = 0;
  }

  void insert(VertexId q) {
    const std::uint32_t seed_tet = locate(q);
    stamp_base_ += 2;
    const std::uint32_t in = stamp_base_;
    const std::uint32_t out = stamp_base_ + 1;

    cavity_.clear();
    boundary_.clear();
    stack_.clear();
    stamp_[seed_tet] = in;
    assert(in_conflict(tets_[seed_tet], q));
    stack_.push_back(seed_tet);
    while (!stack_.empty()) {
      const std::uint32_t t = stack_.back();
      stack_.pop_back();
      cavity_.push_back(t);
      for (int i = 0; i < 4; ++i) {
        const std::uint32_t n = tets_[t].nb[i];
        if (stamp_[n] == in) continue;
        if (stamp_[n] != out) {
          if (in_conflict(tets_[n], q)) {
            stamp_[n] = in;
            stack_.push_back(n);
            continue;
          }
          stamp_[n] = out;
        }
        int back = 0;
        while (tets_[n].nb[back] != t) ++back;
        Tet nt;
        nt.v = tets_[t].v;
        nt.v[i] = q;
        nt.nb = {kNoTet, kNoTet, kNoTet, kNoTet};
        nt.nb[i] = n;
        boundary_.push_back({nt, n, back, i});
      }
    }

    for (std::uint32_t t : cavity_) free_.push_back(t);

    scratch_.clear();
    for (const Pending& p : boundary_) {
      std::uint32_t idx;
      if (!free_.empty()) {
        idx = free_.back();
        free_.pop_back();
        tets_[idx] = p.tet;
      } else {
        idx = static_cast<std::uint32_t>(tets_.size());
        tets_.push_back(p.tet);
        stamp_.push_back(0);
      }
      tets_[p.outside].nb[p.outside_slot] = idx;
      for (int j = 0; j < 4; ++j) {
        if (j == p.apex_slot) continue;
        std::array<VertexId, 2> e{};
        int m = 0;
        for (int k = 0; k < 4; ++k)
          if (k != j && k != p.apex_slot) e[m++] = p.tet.v[k];
        scratch_.push_back({edge_key(e[0], e[1]), idx, j});
      }
      if (!p.tet.is_ghost()) last_ = idx;
    }
    glue_around_apex(tets_, scratch_);
  }

  std::vector<Tet> take_compacted() {
    std::vector<char> dead(tets_.size(), 0);
    for (std::uint32_t f : free_) dead[f] = 1;
    std::vector<std::uint32_t> remap(tets_.size(), kNoTet);
    std::vector<Tet> out;
    out.reserve(tets_.size() - free_.size());
    for (std::uint32_t i = 0; i < tets_.size(); ++i) {
      if (dead[i]) continue;
      remap[i] = static_cast<std::uint32_t>(out.size());
      out.push_back(tets_[i]);
    }
    for (Tet& t : out)
      for (auto& n : t.nb) n = remap[n];
    return out;
  }

 private:
  struct Pending {
    Tet tet;
    std::uint32_t outside;
    int outside_slot;
    int apex_slot;
  };

  bool in_conflict(const Tet& t, VertexId q) const {
    const Point3& p = pts_[q];
    if (t.is_ghost()) {
      const Point3& a = pts_[t.v[0]];
      const Point3& b = pts_[t.v[1]];
      const Point3& c = pts_[t.v[2]];
      const Sign s = orient3d(a, b, c, p);
      if (s != Sign::Zero) return s == Sign::Positive;
      return coplanar_incircle_perturbed(a, b, c, p, {t.v[0], t.v[1], t.v[2], q}) ==
             Sign::Positive;
    }
    return insphere_perturbed(pts_[t.v[0]], pts_[t.v[1]], pts_[t.v[2]], pts_[t.v[3]], p,
                              {t.v[0], t.v[1], t.v[2], t.v[3], q}) == Sign::Positive;
  }

  // Visibility walk from the most recently created tet. Ends in a finite tet
  // whose closure contains q, or in a ghost tet whose hull face q sees.
  std::uint32_t locate(VertexId q) {
    std::uint32_t t = last_;
    if (tets_[t].is_ghost()) t = tets_[t].nb[3];
    const Point3& p = pts_[q];
    std::uint32_t previous = kNoTet;
    for (;;) {
      const Tet& cur = tets_[t];
      if (cur.is_ghost()) return t;
      const int start = static_cast<int>(rng_() & 3u);
      bool moved = false;
      for (int k = 0; k < 4; ++k) {
        const int i = (start + k) & 3;
        const std::uint32_t n = cur.nb[i];
        if (n == previous) continue;
        std::array<const Point3*, 4> v{&pts_[cur.v[0]], &pts_[cur.v[1]], &pts_[cur.v[2]],
                                       &pts_[cur.v[3]]};
        v[i] = &p;
        if (orient3d(*v[0], *v[1], *v[2], *v[3]) == Sign::Negative) {
          previous = t;
          t = n;
          moved = true;
          break;
        }
      }
      // The face back to `previous` needs no test: q is strictly on this side.
      if (!moved) return t;
    }
  }

  const std::vector<Point3>& pts_;
  std::mt19937_64 rng_;
  std::vector<Tet> tets_;
  std::vector<std::uint32_t> free_;
  std::vector<std::uint32_t> stamp_;
  std::uint32_t stamp_base_ = 0;
  std::uint32_t last_ = 0;
  std::vector<std::uint32_t> cavity_;
  std::vector<std::uint32_t> stack_;
  std::vector<Pending> boundary_;
  std::vector<FaceKey> scratch_;
};

// Brute-force planar Delaunay under the same lifted perturbation.
Triangulation coplanar_complex(const PointCloud& cloud, std::size_t cap) {
  const auto& p = cloud.points;
  const std::size_t n = p.size();
  if (n > cap)
    throw InvalidCloudError("coplanar cloud with " + std::to_string(n) +
                            " points exceeds the planar fallback limit of " +
                            std::to_string(cap));
  std::vector<Edge> edges;
  std::vector<std::array<VertexId, 3>> triangles;
  for (VertexId a = 0; a < n; ++a)
    for (VertexId b = a + 1; b < n; ++b)
      for (VertexId c = b + 1; c < n; ++c) {
        if (collinear(p[a], p[b], p[c])) continue;
        bool empty = true;
        for (VertexId d = 0; d < n && empty; ++d) {
          if (d == a || d == b || d == c) continue;
          if (coplanar_incircle_perturbed(p[a], p[b], p[c], p[d], {a, b, c, d}) == Sign::Positive)
            empty = false;
        }
        if (!empty) continue;
        triangles.push_back({a, b, c});
        edges.emplace_back(a, b);
        edges.emplace_back(a, c);
        edges.emplace_back(b, c);
      }
  return Triangulation::lower_dimensional(cloud, 2, std::move(edges), std::move(triangles));
}

Triangulation collinear_complex(const PointCloud& cloud) {
  const auto& p = cloud.points;
  std::vector<VertexId> order(p.size());
  std::iota(order.begin(), order.end(), VertexId{0});
  // Lexicographic order is monotone along a line.
  std::sort(order.begin(), order.end(), [&](VertexId a, VertexId b) {
    if (p[a].x != p[b].x) return p[a].x < p[b].x;
    if (p[a].y != p[b].y) return p[a].y < p[b].y;
    return p[a].z < p[b].z;
  });
  std::vector<Edge> edges;
  for (std::size_t i = 1; i < order.size(); ++i)
    edges.emplace_back(std::min(order[i - 1], order[i]), std::max(order[i - 1], order[i]));
  return Triangulation::lower_dimensional(cloud, p.size() > 1 ? 1 : 0, std::move(edges), {});
}

}  // namespace

int affine_dimension(std::span<const Point3> points) {
  if (points.empty()) return -1;
  std::size_t b = 1;
  while (b < points.size() && points[b] == points[0]) ++b;
  if (b == points.size()) return 0;
  std::size_t c = 0;
  for (c = 1; c < points.size(); ++c)
    if (!collinear(points[0], points[b], points[c])) break;
  if (c == points.size()) return 1;
  for (std::size_t d = 1; d < points.size(); ++d)
    if (orient3d(points[0], points[b], points[c], points[d]) != Sign::Zero) return 3;
  return 2;
}

Triangulation triangulate(const PointCloud& cloud, std::uint64_t seed) {
  TriangulateOptions opt;
  opt.seed = seed;
  return triangulate(cloud, opt);
}

Triangulation triangulate(const PointCloud& cloud, const TriangulateOptions& options) {
  check_cloud(cloud);
  const auto& pts = cloud.points;
  const std::size_t n = pts.size();

  std::vector<VertexId> order(n);
  std::iota(order.begin(), order.end(), VertexId{0});
  std::mt19937_64 rng(options.seed);
  std::shuffle(order.begin(), order.end(), rng);

  // Pick an initial simplex from the front of the shuffled order.
  std::array<std::size_t, 4> pos{0, 0, 0, 0};
  std::size_t k = 1;
  if (n < 2) return collinear_complex(cloud);
  pos[1] = 1;
  for (k = 2; k < n; ++k)
    if (!collinear(pts[order[0]], pts[order[1]], pts[order[k]])) break;
  if (k >= n) return collinear_complex(cloud);
  pos[2] = k;
  for (k = 2; k < n; ++k) {
    if (k == pos[2]) continue;
    if (orient3d(pts[order[0]], pts[order[1]], pts[order[pos[2]]], pts[order[k]]) != Sign::Zero)
      break;
  }
  if (k >= n) return coplanar_complex(cloud, options.max_coplanar_points);
  pos[3] = k;

  Builder builder(pts, options.seed);
  builder.init({order[pos[0]], order[pos[1]], order[pos[2]], order[pos[3]]});
  std::size_t inserted = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (i == pos[0] || i == pos[1] || i == pos[2] || i == pos[3]) continue;
    builder.insert(order[i]);
    if (options.deadline && (++inserted & 255u) == 0 &&
        std::chrono::steady_clock::now() > *options.deadline)
      throw TimeBudgetExceeded("triangulation exceeded its time budget after " +
                               std::to_string(inserted) + " insertions");
  }
  return Triangulation(cloud, builder.take_compacted());
}

}  // namespace helixdt
