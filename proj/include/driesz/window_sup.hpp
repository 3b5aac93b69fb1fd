#ifndef DRIESZ_WINDOW_SUP_HPP
#define DRIESZ_WINDOW_SUP_HPP

#include <algorithm>
#include <bit>
#include <cmath>
#include <optional>
#include <span>
#include <vector>

#include "core.hpp"

namespace driesz {

struct WindowMax {
  double score = 0;
  std::optional<SymmetricInterval> witness;
};

/// Maximizes V(S)^exponent * G(S) over symmetric windows S contained in [lo, lo + n),
/// where G sums a nonnegative array g and V sums a positive array v (the window
/// cardinality when v is empty). Requires exponent <= 0.
///
/// The search runs over rectangles of centers x radii. Every window of a rectangle
/// lies inside the union of its extreme windows and contains their common core, so
/// G(union) and a lower bound on V give a valid upper bound for the rectangle.
class WindowSupremum {
 public:
  WindowSupremum(Index lo, std::span<const double> g, std::span<const double> v, double exponent)
      : lo_(lo), n_(static_cast<Index>(g.size())), exponent_(exponent), counting_(v.empty()) {
    if (exponent > 0) throw DomainError("window supremum needs a nonpositive size exponent");
    if (!counting_ && v.size() != g.size()) throw DomainError("window supremum needs matching array lengths");
    gp_.resize(g.size() + 1, 0.0L);
    for (std::size_t i = 0; i < g.size(); ++i) gp_[i + 1] = gp_[i] + g[i];
    if (counting_) {
      size_pow_.resize(static_cast<std::size_t>(n_ / 2) + 1);
      for (std::size_t r = 0; r < size_pow_.size(); ++r) size_pow_[r] = std::pow(2.0 * static_cast<double>(r) + 1, exponent_);
    } else {
      vp_.resize(v.size() + 1, 0.0L);
      for (std::size_t i = 0; i < v.size(); ++i) vp_[i + 1] = vp_[i] + v[i];
      build_min_table(v);
    }
  }

  Index lo() const noexcept { return lo_; }
  Index hi() const noexcept { return lo_ + n_ - 1; }

  double run_g(Index a, Index b) const {
    a = std::max(a, lo_);
    b = std::min(b, hi());
    if (a > b) return 0.0;
    return static_cast<double>(gp_[static_cast<std::size_t>(b - lo_ + 1)] - gp_[static_cast<std::size_t>(a - lo_)]);
  }

  double run_v(Index a, Index b) const {
    a = std::max(a, lo_);
    b = std::min(b, hi());
    if (a > b) return 0.0;
    if (counting_) return static_cast<double>(b - a + 1);
    return static_cast<double>(vp_[static_cast<std::size_t>(b - lo_ + 1)] - vp_[static_cast<std::size_t>(a - lo_)]);
  }

  /// V(run)^exponent * (G(run) + extra) for an arbitrary run inside the range.
  double run_score(Index a, Index b, double extra = 0) const {
    double vv = run_v(a, b);
    return std::pow(vv, exponent_) * (run_g(a, b) + extra);
  }

  double window_score(Index m, Index r) const {
    double g = run_g(m - r, m + r);
    if (g == 0) return 0.0;
    double pf = counting_ ? size_pow_[static_cast<std::size_t>(r)] : std::pow(run_v(m - r, m + r), exponent_);
    return pf * g;
  }

  WindowMax maximize() const {
    WindowMax best;
    if (n_ == 0) return best;
    for (Index m = lo_; m <= hi(); ++m) consider(best, m, 0);
    std::vector<Rect> stack;
    push(stack, best, {lo_, hi(), 1, (n_ - 1) / 2});
    while (!stack.empty()) {
      Rect r = stack.back();
      stack.pop_back();
      if (r.bound <= best.score) continue;
      Index dm = r.m2 - r.m1 + 1, dn = r.n2 - r.n1 + 1;
      if (dm * dn <= 64) {
        for (Index m = r.m1; m <= r.m2; ++m) {
          for (Index rad = r.n1; rad <= r.n2; ++rad) {
            if (m - rad >= lo_ && m + rad <= hi()) consider(best, m, rad);
          }
        }
        continue;
      }
      Rect a = r, b = r;
      if (dm >= dn) {
        Index mid = r.m1 + dm / 2;
        a.m2 = mid - 1;
        b.m1 = mid;
      } else {
        Index mid = r.n1 + dn / 2;
        a.n2 = mid - 1;
        b.n1 = mid;
      }
      a.bound = bound(a);
      b.bound = bound(b);
      // larger bound on top of the stack
      if (a.bound >= b.bound) {
        if (b.bound > best.score) stack.push_back(b);
        if (a.bound > best.score) stack.push_back(a);
      } else {
        if (a.bound > best.score) stack.push_back(a);
        if (b.bound > best.score) stack.push_back(b);
      }
    }
    return best;
  }

 private:
  struct Rect {
    Index m1, m2, n1, n2;
    double bound = 0;
  };

  void push(std::vector<Rect>& stack, const WindowMax& best, Rect r) const {
    if (r.n1 > r.n2 || r.m1 > r.m2) return;
    r.bound = bound(r);
    if (r.bound > best.score) stack.push_back(r);
  }

  void consider(WindowMax& best, Index m, Index r) const {
    double s = window_score(m, r);
    if (s > best.score) {
      best.score = s;
      best.witness = SymmetricInterval(m, r);
    }
  }

  double bound(const Rect& r) const {
    // a rectangle with no feasible window
    if (r.m1 + r.n1 > hi() || r.m2 - r.n1 < lo_) return 0.0;
    Index ua = std::max(lo_, r.m1 - r.n2), ub = std::min(hi(), r.m2 + r.n2);
    double g = run_g(ua, ub);
    if (g == 0) return 0.0;
    double vmin;
    if (counting_) {
      vmin = 2.0 * static_cast<double>(r.n1) + 1;
      return (static_cast<std::size_t>(r.n1) < size_pow_.size() ? size_pow_[static_cast<std::size_t>(r.n1)]
                                                                  : std::pow(vmin, exponent_)) *
             g;
    }
    vmin = (2.0 * static_cast<double>(r.n1) + 1) * range_min(ua, ub);
    if (r.m2 - r.n1 <= r.m1 + r.n1) vmin = std::max(vmin, run_v(r.m2 - r.n1, r.m1 + r.n1));
    return std::pow(vmin, exponent_) * g;
  }

  void build_min_table(std::span<const double> v) {
    std::size_t n = v.size();
    mins_.emplace_back(v.begin(), v.end());
    for (std::size_t w = 1; 2 * w <= n; w *= 2) {
      const auto& prev = mins_.back();
      std::vector<double> next(n - 2 * w + 1);
      for (std::size_t i = 0; i < next.size(); ++i) next[i] = std::min(prev[i], prev[i + w]);
      mins_.push_back(std::move(next));
    }
  }

  double range_min(Index a, Index b) const {
    std::size_t i = static_cast<std::size_t>(a - lo_), j = static_cast<std::size_t>(b - lo_);
    std::size_t len = j - i + 1;
    int level = std::bit_width(len) - 1;
    const auto& row = mins_[static_cast<std::size_t>(level)];
    return std::min(row[i], row[j + 1 - (std::size_t{1} << level)]);
  }

  Index lo_;
  Index n_;
  double exponent_;
  bool counting_;
  std::vector<long double> gp_;
  std::vector<long double> vp_;
  std::vector<double> size_pow_;
  std::vector<std::vector<double>> mins_;
};

}  // namespace driesz

#endif
