#ifndef DRIESZ_OPERATORS_HPP
#define DRIESZ_OPERATORS_HPP

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "core.hpp"
#include "fft_convolution.hpp"
#include "parallel.hpp"
#include "summation.hpp"

namespace driesz {

/// Inclusive evaluation range [lo, hi].
struct EvalWindow {
  Index lo = 0;
  Index hi = 0;
  EvalWindow() = default;
  EvalWindow(Index l, Index h) : lo(l), hi(h) {
    if (h < l) throw DomainError("evaluation window needs lo <= hi");
  }
  Index size() const noexcept { return hi - lo + 1; }
};

namespace detail {

inline void check_riesz_alpha(double alpha) {
  if (!(alpha > 0 && alpha < 1)) throw DomainError("riesz potential needs 0<alpha<1");
}

inline void check_maximal_alpha(double alpha) {
  if (!(alpha >= 0 && alpha < 1)) throw DomainError("fractional maximal operator needs 0<=alpha<1");
}

}  // namespace detail

/// Evaluates M_alpha x(m) = sup_N (2N+1)^{alpha-1} sum_{|k-m|<=N} |x(k)| exactly.
///
/// Only N in [dist(m, supp), N*(m)] matter. That range is searched by branch and
/// bound: on [a, b] the value is at most (2a+1)^{alpha-1} times the window sum at b,
/// and both factors are monotone, so a pruned branch can never hold the maximum.
class MaximalEvaluator {
 public:
  MaximalEvaluator(const FiniteSequence& x, double alpha) : alpha_(alpha) {
    detail::check_maximal_alpha(alpha);
    if (x.empty()) return;
    lo_ = x.min_support();
    hi_ = x.max_support();
    prefix_.resize(static_cast<std::size_t>(x.size()) + 1, 0.0L);
    for (Index i = 0; i < x.size(); ++i) {
      prefix_[static_cast<std::size_t>(i) + 1] = prefix_[static_cast<std::size_t>(i)] + std::fabs(x.values()[static_cast<std::size_t>(i)]);
    }
    std::size_t cache = static_cast<std::size_t>(std::min<Index>(Index{1} << 20, 8 * (hi_ - lo_ + 1) + 1024));
    factors_.resize(cache);
    for (std::size_t n = 0; n < cache; ++n) factors_[n] = std::pow(2.0 * static_cast<double>(n) + 1.0, alpha_ - 1);
  }

  bool empty() const noexcept { return prefix_.empty(); }
  double total() const noexcept { return empty() ? 0.0 : static_cast<double>(prefix_.back()); }
  double alpha() const noexcept { return alpha_; }

  double operator()(Index m) const {
    if (empty()) return 0.0;
    Index nmin = m < lo_ ? lo_ - m : (m > hi_ ? m - hi_ : 0);
    Index nmax = std::max(m - lo_, hi_ - m);
    double best = std::max(value(m, nmin), value(m, nmax));
    struct Range {
      Index a, b;
      double bound;
    };
    std::vector<Range> stack;
    auto push = [&](Index a, Index b) {
      if (a > b) return;
      double bound = factor(a) * window_sum(m, b);
      if (bound > best) stack.push_back({a, b, bound});
    };
    push(nmin + 1, nmax - 1);
    while (!stack.empty()) {
      Range r = stack.back();
      stack.pop_back();
      if (r.bound <= best) continue;
      if (r.b - r.a < 8) {
        for (Index n = r.a; n <= r.b; ++n) best = std::max(best, value(m, n));
        continue;
      }
      Index mid = r.a + (r.b - r.a) / 2;
      best = std::max(best, value(m, mid));
      double lb = factor(r.a) * window_sum(m, mid - 1);
      double rb = factor(mid + 1) * window_sum(m, r.b);
      // explore the more promising half first
      if (lb >= rb) {
        if (rb > best) stack.push_back({mid + 1, r.b, rb});
        if (lb > best) stack.push_back({r.a, mid - 1, lb});
      } else {
        if (lb > best) stack.push_back({r.a, mid - 1, lb});
        if (rb > best) stack.push_back({mid + 1, r.b, rb});
      }
    }
    return best;
  }

  std::vector<double> evaluate(const EvalWindow& w, unsigned threads = 1) const {
    std::vector<double> out(static_cast<std::size_t>(w.size()));
    constexpr std::size_t kChunk = 1024;
    std::size_t chunks = (out.size() + kChunk - 1) / kChunk;
    parallel_for(chunks, threads, [&](std::size_t c) {
      std::size_t end = std::min(out.size(), (c + 1) * kChunk);
      for (std::size_t i = c * kChunk; i < end; ++i) out[i] = (*this)(w.lo + static_cast<Index>(i));
    });
    return out;
  }

 private:
  double factor(Index n) const {
    if (static_cast<std::size_t>(n) < factors_.size()) return factors_[static_cast<std::size_t>(n)];
    return std::pow(2.0 * static_cast<double>(n) + 1.0, alpha_ - 1);
  }

  double window_sum(Index m, Index n) const {
    Index a = std::max(m - n, lo_), b = std::min(m + n, hi_);
    if (a > b) return 0.0;
    return static_cast<double>(prefix_[static_cast<std::size_t>(b - lo_ + 1)] - prefix_[static_cast<std::size_t>(a - lo_)]);
  }

  double value(Index m, Index n) const { return factor(n) * window_sum(m, n); }

  double alpha_;
  Index lo_ = 0;
  Index hi_ = -1;
  std::vector<long double> prefix_;
  std::vector<double> factors_;
};

inline std::vector<double> fractional_maximal_values(const FiniteSequence& x, double alpha, const EvalWindow& w,
                                                     unsigned threads = 1) {
  return MaximalEvaluator(x, alpha).evaluate(w, threads);
}

inline FiniteSequence fractional_maximal(const FiniteSequence& x, double alpha, const EvalWindow& w, unsigned threads = 1) {
  return FiniteSequence(w.lo, fractional_maximal_values(x, alpha, w, threads));
}

namespace detail {

/// Kernel |j|^{alpha-1} for j >= 1, tabulated up to a limit and computed directly beyond.
class RieszKernel {
 public:
  RieszKernel(double alpha, Index table_limit) : alpha_(alpha) {
    std::size_t n = static_cast<std::size_t>(std::clamp<Index>(table_limit, 0, Index{1} << 26)) + 1;
    table_.resize(n);
    table_[0] = 0.0;
    for (std::size_t j = 1; j < n; ++j) table_[j] = std::pow(static_cast<double>(j), alpha - 1);
  }
  double operator()(Index j) const {
    if (j < 0) j = -j;
    if (static_cast<std::size_t>(j) < table_.size()) return table_[static_cast<std::size_t>(j)];
    return std::pow(static_cast<double>(j), alpha_ - 1);
  }

 private:
  double alpha_;
  std::vector<double> table_;
};

/// Direct sum at one point, terms taken in ascending distance and accumulated pairwise.
inline double riesz_point(const FiniteSequence& x, const RieszKernel& kernel, Index k) {
  if (x.empty()) return 0.0;
  Index lo = x.min_support(), hi = x.max_support();
  Index jfirst = std::max<Index>(1, std::min(k - hi, lo - k));
  Index jlast = std::max(k - lo, hi - k);
  PairwiseAccumulator acc;
  for (Index j = jfirst; j <= jlast; ++j) {
    double kj = kernel(j);
    if (k - j >= lo && k - j <= hi) acc.add(x(k - j) * kj);
    if (k + j >= lo && k + j <= hi) acc.add(x(k + j) * kj);
  }
  return acc.result();
}

inline Index max_lag(const FiniteSequence& x, const EvalWindow& w) {
  if (x.empty()) return 0;
  return std::max({std::abs(w.hi - x.min_support()), std::abs(x.max_support() - w.lo), Index{1}});
}

}  // namespace detail

/// Direct evaluation of I_alpha x(k) = sum_{i != k} x(i) |k-i|^{alpha-1} on a window.
inline std::vector<double> riesz_naive_values(const FiniteSequence& x, double alpha, const EvalWindow& w,
                                              unsigned threads = 1) {
  detail::check_riesz_alpha(alpha);
  std::vector<double> out(static_cast<std::size_t>(w.size()), 0.0);
  if (x.empty()) return out;
  detail::RieszKernel kernel(alpha, detail::max_lag(x, w));
  constexpr std::size_t kChunk = 256;
  std::size_t chunks = (out.size() + kChunk - 1) / kChunk;
  parallel_for(chunks, threads, [&](std::size_t c) {
    std::size_t end = std::min(out.size(), (c + 1) * kChunk);
    for (std::size_t i = c * kChunk; i < end; ++i) out[i] = detail::riesz_point(x, kernel, w.lo + static_cast<Index>(i));
  });
  return out;
}

inline FiniteSequence riesz_naive(const FiniteSequence& x, double alpha, const EvalWindow& w, unsigned threads = 1) {
  return FiniteSequence(w.lo, riesz_naive_values(x, alpha, w, threads));
}

/// I_alpha x at a single point by direct summation.
inline double riesz_at(const FiniteSequence& x, double alpha, Index k) {
  detail::check_riesz_alpha(alpha);
  if (x.empty()) return 0.0;
  Index reach = std::max(std::abs(k - x.min_support()), std::abs(k - x.max_support()));
  detail::RieszKernel kernel(alpha, std::min<Index>(reach, Index{1} << 20));
  return detail::riesz_point(x, kernel, k);
}

/// Same values as riesz_naive through a zero-padded transform convolution. The kernel
/// vanishes at lag 0, which removes the i = k term.
inline std::vector<double> riesz_fast_values(const FiniteSequence& x, double alpha, const EvalWindow& w,
                                             const FftOptions& opt = {}) {
  detail::check_riesz_alpha(alpha);
  std::size_t count = static_cast<std::size_t>(w.size());
  if (x.empty()) return std::vector<double>(count, 0.0);
  Index lo = x.min_support(), hi = x.max_support();
  Index lag_min = w.lo - hi, lag_max = w.hi - lo;
  std::size_t m = static_cast<std::size_t>(lag_max - lag_min + 1);
  if (convolution_scratch_bytes(detail::next_fast_size(m)) > opt.memory_budget) {
    throw CapacityError("support and window too large for the transform memory budget");
  }
  Index reach = std::max(std::abs(lag_min), std::abs(lag_max));
  std::vector<double> kern(static_cast<std::size_t>(reach) + 1);
  kern[0] = 0.0;
  for (Index j = 1; j <= reach; ++j) kern[static_cast<std::size_t>(j)] = std::pow(static_cast<double>(j), alpha - 1);
  std::vector<double> g(m);
  for (std::size_t u = 0; u < m; ++u) {
    Index lag = lag_min + static_cast<Index>(u);
    g[u] = kern[static_cast<std::size_t>(lag < 0 ? -lag : lag)];
  }
  return convolve_segment(x.values(), g, static_cast<std::size_t>(hi - lo), count, opt);
}

inline FiniteSequence riesz_fast(const FiniteSequence& x, double alpha, const EvalWindow& w, const FftOptions& opt = {}) {
  return FiniteSequence(w.lo, riesz_fast_values(x, alpha, w, opt));
}

/// Symmetric-pairs series sum_{j>=1} (x(k-j) + x(k+j)) j^{alpha-1}.
inline double riesz_symmetric(const FiniteSequence& x, double alpha, Index k) {
  detail::check_riesz_alpha(alpha);
  if (x.empty()) return 0.0;
  Index lo = x.min_support(), hi = x.max_support();
  Index jfirst = std::max<Index>(1, std::min(k - hi, lo - k));
  Index jlast = std::max(k - lo, hi - k);
  PairwiseAccumulator acc;
  for (Index j = jfirst; j <= jlast; ++j) {
    double pair = x(k - j) + x(k + j);
    if (pair != 0) acc.add(pair * std::pow(static_cast<double>(j), alpha - 1));
  }
  return acc.result();
}

/// Series of forward differences sum_{j>=1} (dx(k-j) + dx(k+j)) j^{alpha-1}, dx(i) = x(i+1) - x(i),
/// which equals I_alpha x(k+1) - I_alpha x(k).
inline double riesz_difference(const FiniteSequence& x, double alpha, Index k) {
  detail::check_riesz_alpha(alpha);
  if (x.empty()) return 0.0;
  Index lo = x.min_support() - 1, hi = x.max_support();
  auto dx = [&](Index i) { return x(i + 1) - x(i); };
  Index jfirst = std::max<Index>(1, std::min(k - hi, lo - k));
  Index jlast = std::max(k - lo, hi - k);
  PairwiseAccumulator acc;
  for (Index j = jfirst; j <= jlast; ++j) {
    double pair = dx(k - j) + dx(k + j);
    if (pair != 0) acc.add(pair * std::pow(static_cast<double>(j), alpha - 1));
  }
  return acc.result();
}

struct UniformBound {
  double sup_value = 0;
  double bound = 0;
};

/// Largest value of I_alpha|x| against 4||x||_p / (1 - 2^{alpha-1/p}). Outside the support hull
/// every kernel term decreases, so the maximum sits on the hull widened by one point.
inline UniformBound uniform_bound(const FiniteSequence& x, double alpha, double p) {
  detail::check_riesz_alpha(alpha);
  if (!(p >= 1 && p < 1 / alpha)) throw DomainError("uniform bound needs 1<=p<1/alpha");
  if (x.empty()) return {};
  FiniteSequence ax = x.abs();
  EvalWindow hull(ax.min_support() - 1, ax.max_support() + 1);
  std::vector<double> vals = hull.size() <= 4096 ? riesz_naive_values(ax, alpha, hull) : riesz_fast_values(ax, alpha, hull);
  UniformBound out;
  out.sup_value = *std::max_element(vals.begin(), vals.end());
  PairwiseAccumulator acc;
  for (double v : ax.values()) acc.add(std::pow(v, p));
  out.bound = 4 * std::pow(acc.result(), 1 / p) / (1 - std::pow(2.0, alpha - 1 / p));
  return out;
}

}  // namespace driesz

#endif
