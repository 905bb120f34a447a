#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace speedscale {

/// Static index over points (x_u, y_u) with strictly increasing x that answers
///
///     max_{lo <= u < hi} (c - y_u) / (X - x_u)      for X > x_{hi-1}
///
/// i.e. the steepest line from a point on the left set to a query point on
/// its right. A segment tree stores the lower convex hull of every node; a
/// query visits O(log n) nodes and binary-searches each hull. Prefix ranges
/// [0, hi) have a faster path: the lower hull of every prefix is kept as a
/// persistent stack with jump pointers, so a query costs O(log n).
class LeftTangentIndex {
 public:
  LeftTangentIndex() = default;
  LeftTangentIndex(std::span<const double> x, std::span<const double> y);

  std::size_t size() const { return n_; }
  /// Returns -inf for an empty range.
  double max_slope_to(std::size_t lo, std::size_t hi, double qx, double qy) const;
  double max_slope_to_prefix(std::size_t hi, double qx, double qy) const;

 private:
  double slope(std::size_t u, double qx, double qy) const { return (qy - y_[u]) / (qx - x_[u]); }
  double node_max(std::size_t node, double qx, double qy) const;

  std::size_t n_ = 0;
  std::size_t leaves_ = 0;
  std::vector<double> x_, y_;
  std::vector<std::size_t> offset_;  // hull of node k is hulls_[offset_[k], offset_[k+1])
  std::vector<std::size_t> hulls_;
  // jump_[k][u]: 2^k-th predecessor of u on the lower hull of prefix [0, u],
  // or kNone.
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<std::vector<std::size_t>> jump_;
};

/// Steepest line from a point (px, py) to the upper hull `hull` of points that
/// all lie strictly to its right. Hull vertices must be sorted by x.
double max_slope_from(double px, double py, std::span<const double> hx, std::span<const double> hy);

/// Upper convex hull of points sorted by increasing x (ties not allowed).
void upper_hull(std::span<const double> x, std::span<const double> y, std::vector<double>& hx,
                std::vector<double>& hy);

}  // namespace speedscale
