#include "speedscale/hull.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <stdexcept>

namespace speedscale {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double cross(double ox, double oy, double ax, double ay, double bx, double by) {
  return (ax - ox) * (by - oy) - (ay - oy) * (bx - ox);
}

}  // namespace

LeftTangentIndex::LeftTangentIndex(std::span<const double> x, std::span<const double> y)
    : n_(x.size()), x_(x.begin(), x.end()), y_(y.begin(), y.end()) {
  if (x.size() != y.size()) throw std::invalid_argument("LeftTangentIndex: size mismatch");
  for (std::size_t i = 1; i < n_; ++i) {
    if (!(x_[i] > x_[i - 1])) throw std::invalid_argument("LeftTangentIndex: x must increase");
  }
  leaves_ = 1;
  while (leaves_ < std::max<std::size_t>(n_, 1)) leaves_ <<= 1;

  offset_.assign(2 * leaves_ + 1, 0);
  std::vector<std::size_t> hull;
  for (std::size_t node = 1; node < 2 * leaves_; ++node) {
    offset_[node] = hulls_.size();
    // Range covered by `node`.
    const std::size_t level_first = std::bit_floor(node);
    const std::size_t width = leaves_ / level_first;
    const std::size_t lo = (node - level_first) * width;
    const std::size_t hi = std::min(lo + width, n_);
    hull.clear();
    for (std::size_t u = lo; u < hi; ++u) {
      while (hull.size() >= 2) {
        const std::size_t a = hull[hull.size() - 2];
        const std::size_t b = hull.back();
        if (cross(x_[a], y_[a], x_[b], y_[b], x_[u], y_[u]) > 0.0) break;
        hull.pop_back();
      }
      hull.push_back(u);
    }
    hulls_.insert(hulls_.end(), hull.begin(), hull.end());
  }
  offset_[2 * leaves_] = hulls_.size();

  // Monotone chain over the prefixes; the stack below u after pushing u is
  // the hull of [0, u], so one predecessor link per point stores them all.
  std::vector<std::size_t> prev(n_, kNone);
  hull.clear();
  for (std::size_t u = 0; u < n_; ++u) {
    while (hull.size() >= 2) {
      const std::size_t a = hull[hull.size() - 2];
      const std::size_t b = hull.back();
      if (cross(x_[a], y_[a], x_[b], y_[b], x_[u], y_[u]) > 0.0) break;
      hull.pop_back();
    }
    prev[u] = hull.empty() ? kNone : hull.back();
    hull.push_back(u);
  }
  jump_.push_back(std::move(prev));
  while ((std::size_t{1} << jump_.size()) < std::max<std::size_t>(n_, 2)) {
    const auto& last = jump_.back();
    std::vector<std::size_t> next(n_, kNone);
    for (std::size_t u = 0; u < n_; ++u) next[u] = last[u] == kNone ? kNone : last[last[u]];
    jump_.push_back(std::move(next));
  }
}

double LeftTangentIndex::max_slope_to_prefix(std::size_t hi, double qx, double qy) const {
  hi = std::min(hi, n_);
  if (hi == 0) return kNegInf;
  // Walking left from the last point, the slope to Q rises up to the tangent
  // point and then falls. Jump over every node whose predecessor is steeper.
  const auto& prev = jump_.front();
  auto steeper_before = [&](std::size_t u) { return prev[u] != kNone && slope(prev[u], qx, qy) > slope(u, qx, qy); };
  std::size_t cur = hi - 1;
  if (!steeper_before(cur)) return slope(cur, qx, qy);
  for (std::size_t k = jump_.size(); k-- > 0;) {
    const std::size_t cand = jump_[k][cur];
    if (cand != kNone && steeper_before(cand)) cur = cand;
  }
  return slope(prev[cur], qx, qy);
}

double LeftTangentIndex::node_max(std::size_t node, double qx, double qy) const {
  const std::size_t begin = offset_[node];
  const std::size_t end = offset_[node + 1];
  if (begin == end) return kNegInf;
  // Slopes along the hull rise then fall; find the first non-increase.
  std::size_t lo = begin;
  std::size_t hi = end - 1;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (slope(hulls_[mid + 1], qx, qy) > slope(hulls_[mid], qx, qy)) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  double best = slope(hulls_[lo], qx, qy);
  if (lo > begin) best = std::max(best, slope(hulls_[lo - 1], qx, qy));
  if (lo + 1 < end) best = std::max(best, slope(hulls_[lo + 1], qx, qy));
  return best;
}

double LeftTangentIndex::max_slope_to(std::size_t lo, std::size_t hi, double qx, double qy) const {
  hi = std::min(hi, n_);
  double best = kNegInf;
  if (lo >= hi) return best;
  std::size_t l = lo + leaves_;
  std::size_t r = hi + leaves_;
  while (l < r) {
    if (l & 1) best = std::max(best, node_max(l++, qx, qy));
    if (r & 1) best = std::max(best, node_max(--r, qx, qy));
    l >>= 1;
    r >>= 1;
  }
  return best;
}

void upper_hull(std::span<const double> x, std::span<const double> y, std::vector<double>& hx,
                std::vector<double>& hy) {
  hx.clear();
  hy.clear();
  for (std::size_t u = 0; u < x.size(); ++u) {
    while (hx.size() >= 2) {
      const std::size_t m = hx.size();
      if (cross(hx[m - 2], hy[m - 2], hx[m - 1], hy[m - 1], x[u], y[u]) < 0.0) break;
      hx.pop_back();
      hy.pop_back();
    }
    hx.push_back(x[u]);
    hy.push_back(y[u]);
  }
}

double max_slope_from(double px, double py, std::span<const double> hx, std::span<const double> hy) {
  if (hx.empty()) return kNegInf;
  auto f = [&](std::size_t i) { return (hy[i] - py) / (hx[i] - px); };
  std::size_t lo = 0;
  std::size_t hi = hx.size() - 1;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (f(mid + 1) > f(mid)) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  double best = f(lo);
  if (lo > 0) best = std::max(best, f(lo - 1));
  if (lo + 1 < hx.size()) best = std::max(best, f(lo + 1));
  return best;
}

}  // namespace speedscale
