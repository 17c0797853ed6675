#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <utility>
#include <vector>

#include "helixdt/point.hpp"

namespace helixdt {

/// Static kd-tree over a borrowed point array (the array must outlive it).
class KdTree {
 public:
  explicit KdTree(std::span<const Point3> points, std::size_t leaf_size = 8)
      : pts_(points), leaf_size_(std::max<std::size_t>(leaf_size, 1)) {
    idx_.resize(points.size());
    std::iota(idx_.begin(), idx_.end(), VertexId{0});
    if (!idx_.empty()) build(0, static_cast<std::uint32_t>(idx_.size()));
  }

  /// Calls f(index) for every point with |p - center| <= radius.
  template <class F>
  void for_each_within(const Point3& center, double radius, F&& f) const {
    if (nodes_.empty()) return;
    const double r2 = radius * radius;
    std::vector<std::uint32_t> stack{0};
    while (!stack.empty()) {
      const Node& node = nodes_[stack.back()];
      stack.pop_back();
      if (box_distance2(node, center) > r2) continue;
      if (node.left == kLeaf) {
        for (std::uint32_t i = node.begin; i < node.end; ++i)
          if (squared_distance(pts_[idx_[i]], center) <= r2) f(idx_[i]);
      } else {
        stack.push_back(node.left);
        stack.push_back(node.right);
      }
    }
  }

  /// The k nearest points to q as (squared distance, index), nearest first.
  std::vector<std::pair<double, VertexId>> nearest(const Point3& q, std::size_t k) const {
    std::vector<std::pair<double, VertexId>> best;
    if (nodes_.empty() || k == 0) return best;
    search(0, q, k, best);
    return best;
  }

 private:
  static constexpr std::uint32_t kLeaf = std::numeric_limits<std::uint32_t>::max();

  struct Node {
    std::array<double, 3> lo{}, hi{};
    std::uint32_t begin = 0, end = 0;
    std::uint32_t left = kLeaf, right = kLeaf;
  };

  static double coord(const Point3& p, int axis) { return axis == 0 ? p.x : (axis == 1 ? p.y : p.z); }

  static double box_distance2(const Node& n, const Point3& q) {
    double d2 = 0.0;
    for (int a = 0; a < 3; ++a) {
      const double v = coord(q, a);
      const double d = v < n.lo[a] ? n.lo[a] - v : (v > n.hi[a] ? v - n.hi[a] : 0.0);
      d2 += d * d;
    }
    return d2;
  }

  std::uint32_t build(std::uint32_t begin, std::uint32_t end) {
    const auto id = static_cast<std::uint32_t>(nodes_.size());
    nodes_.emplace_back();
    Node node;
    node.begin = begin;
    node.end = end;
    node.lo.fill(std::numeric_limits<double>::infinity());
    node.hi.fill(-std::numeric_limits<double>::infinity());
    for (std::uint32_t i = begin; i < end; ++i)
      for (int a = 0; a < 3; ++a) {
        node.lo[a] = std::min(node.lo[a], coord(pts_[idx_[i]], a));
        node.hi[a] = std::max(node.hi[a], coord(pts_[idx_[i]], a));
      }
    if (end - begin > leaf_size_) {
      int axis = 0;
      for (int a = 1; a < 3; ++a)
        if (node.hi[a] - node.lo[a] > node.hi[axis] - node.lo[axis]) axis = a;
      const std::uint32_t mid = begin + (end - begin) / 2;
      std::nth_element(idx_.begin() + begin, idx_.begin() + mid, idx_.begin() + end,
                       [&](VertexId l, VertexId r) { return coord(pts_[l], axis) < coord(pts_[r], axis); });
      node.left = build(begin, mid);
      node.right = build(mid, end);
    }
    nodes_[id] = node;
    return id;
  }

  void search(std::uint32_t id, const Point3& q, std::size_t k,
              std::vector<std::pair<double, VertexId>>& best) const {
    const Node& node = nodes_[id];
    if (best.size() == k && box_distance2(node, q) > best.back().first) return;
    if (node.left == kLeaf) {
      for (std::uint32_t i = node.begin; i < node.end; ++i) {
        const double d2 = squared_distance(pts_[idx_[i]], q);
        if (best.size() < k || d2 < best.back().first) {
          std::pair<double, VertexId> item{d2, idx_[i]};
          best.insert(std::upper_bound(best.begin(), best.end(), item), item);
          if (best.size() > k) best.pop_back();
        }
      }
      return;
    }
    const double dl = box_distance2(nodes_[node.left], q);
    const double dr = box_distance2(nodes_[node.right], q);
    if (dl <= dr) {
      search(node.left, q, k, best);
      search(node.right, q, k, best);
    } else {
      search(node.right, q, k, best);
      search(node.left, q, k, best);
    }
  }

  std::span<const Point3> pts_;
  std::size_t leaf_size_;
  std::vector<VertexId> idx_;
  std::vector<Node> nodes_;
};

}  // namespace helixdt
