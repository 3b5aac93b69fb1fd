#ifndef DRIESZ_NORMS_HPP
#define DRIESZ_NORMS_HPP

#include <algorithm>
#include <cmath>
#include <optional>
#include <utility>
#include <vector>

#include "core.hpp"
#include "summation.hpp"
#include "weights.hpp"
#include "window_sup.hpp"

namespace driesz {

struct NormValue {
  double value = 0;
  /// Attaining window for the Morrey families.
  std::optional<SymmetricInterval> witness;
};

namespace detail {

inline void check_p(double p) {
  if (!(p >= 1) || !std::isfinite(p)) throw DomainError("norm needs p>=1");
}

inline void check_pq(double p, double q) {
  check_p(p);
  if (!(q >= p) || !std::isfinite(q)) throw DomainError("morrey norm needs p<=q");
}

inline double weight_at(const std::optional<Weight>& w, Index k) { return w ? (*w)(k) : 1.0; }

/// Distinct values of |x| in decreasing order with the weight mass of each level.
inline std::vector<std::pair<double, double>> level_masses(const FiniteSequence& x, const std::optional<Weight>& w) {
  std::vector<std::pair<double, double>> items;
  for (Index k = x.min_support(); !x.empty() && k <= x.max_support(); ++k) {
    double v = std::fabs(x(k));
    if (v > 0) items.emplace_back(v, weight_at(w, k));
  }
  std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  std::vector<std::pair<double, double>> levels;
  for (const auto& it : items) {
    if (!levels.empty() && levels.back().first == it.first) {
      levels.back().second += it.second;
    } else {
      levels.push_back(it);
    }
  }
  return levels;
}

}  // namespace detail

/// (sum |x(k)|^p w(k))^{1/p}; w defaults to 1.
inline double lp_norm(const FiniteSequence& x, double p, const std::optional<Weight>& w = std::nullopt) {
  detail::check_p(p);
  PairwiseAccumulator acc;
  for (Index i = 0; i < x.size(); ++i) {
    double v = std::fabs(x.values()[static_cast<std::size_t>(i)]);
    if (v > 0) acc.add(std::pow(v, p) * detail::weight_at(w, x.offset() + i));
  }
  return std::pow(acc.result(), 1 / p);
}

/// sup over lambda of lambda * w({|x| > lambda})^{1/p}, evaluated at the distinct values of |x|.
inline double weak_lp_norm(const FiniteSequence& x, double p, const std::optional<Weight>& w = std::nullopt) {
  detail::check_p(p);
  double best = 0;
  CompensatedSum mass;
  for (const auto& [v, m] : detail::level_masses(x, w)) {
    mass.add(m);
    best = std::max(best, v * std::pow(mass.result(), 1 / p));
  }
  return best;
}

/// p * int_0^inf lambda^{p-1} w({|x| > lambda}) dlambda, integrated exactly level by level.
inline double layer_cake(const FiniteSequence& x, double p, const std::optional<Weight>& w = std::nullopt) {
  if (!(p > 0)) throw DomainError("layer cake needs p>0");
  auto levels = detail::level_masses(x, w);
  // ascending values; the distribution function on (v_{j-1}, v_j] is the mass of {|x| >= v_j}
  std::reverse(levels.begin(), levels.end());
  std::vector<double> above(levels.size() + 1, 0.0);
  for (std::size_t j = levels.size(); j-- > 0;) above[j] = above[j + 1] + levels[j].second;
  PairwiseAccumulator acc;
  double prev = 0;
  for (std::size_t j = 0; j < levels.size(); ++j) {
    double vp = std::pow(levels[j].first, p);
    acc.add((vp - prev) * above[j]);
    prev = vp;
  }
  return acc.result();
}

namespace detail {

/// Windows inside this range include every window that can attain the supremum: a window
/// reaching past the support can be shrunk without changing its sum, and shrinking never
/// decreases the size factor because its exponent is nonpositive.
inline std::pair<Index, Index> morrey_scan_range(const FiniteSequence& x) {
  Index span = x.max_support() - x.min_support();
  return {x.min_support() - 2 * (span + 1), x.max_support() + 2 * (span + 1)};
}

inline NormValue morrey_sup(const FiniteSequence& x, double p, double q, const std::optional<Weight>& w,
                            const std::optional<Weight>& v) {
  if (x.empty()) return {0.0, std::nullopt};
  auto [lo, hi] = morrey_scan_range(x);
  std::vector<double> g(static_cast<std::size_t>(hi - lo + 1), 0.0);
  for (Index k = x.min_support(); k <= x.max_support(); ++k) {
    double a = std::fabs(x(k));
    if (a > 0) g[static_cast<std::size_t>(k - lo)] = std::pow(a, p) * weight_at(w, k);
  }
  std::vector<double> vv;
  if (v) vv = v->sample(lo, hi);
  double e = 1 / q - 1 / p;
  WindowSupremum sup(lo, g, vv, e * p);
  WindowMax best = sup.maximize();
  return {std::pow(best.score, 1 / p), best.witness};
}

}  // namespace detail

/// sup over windows S of |S|^{1/q - 1/p} (sum_S |x|^p)^{1/p}, with an attaining window.
inline NormValue morrey_norm(const FiniteSequence& x, double p, double q) {
  detail::check_pq(p, q);
  return detail::morrey_sup(x, p, q, std::nullopt, std::nullopt);
}

/// sup over windows S of v(S)^{1/q - 1/p} (sum_S |x|^p w)^{1/p}. For p == q the size
/// factor is 1 and the value is the weighted l^p norm.
inline NormValue weighted_morrey_norm(const FiniteSequence& x, double p, double q, const Weight& w, const Weight& v) {
  detail::check_pq(p, q);
  if (p == q) return {lp_norm(x, p, w), std::nullopt};
  return detail::morrey_sup(x, p, q, w, v);
}

enum class NormFamily { Lp, WeakLp, Morrey, WeightedMorrey };

struct NormSpec {
  NormFamily family = NormFamily::Lp;
  double p = 2;
  std::optional<double> q;
  std::optional<Weight> weight;
  std::optional<Weight> size_weight;
};

inline NormValue evaluate_norm(const NormSpec& spec, const FiniteSequence& x) {
  switch (spec.family) {
    case NormFamily::Lp: return {lp_norm(x, spec.p, spec.weight), std::nullopt};
    case NormFamily::WeakLp: return {weak_lp_norm(x, spec.p, spec.weight), std::nullopt};
    case NormFamily::Morrey:
      if (!spec.q) throw DomainError("morrey norm needs q");
      if (spec.weight || spec.size_weight) throw DomainError("unweighted morrey norm takes no weights");
      return morrey_norm(x, spec.p, *spec.q);
    case NormFamily::WeightedMorrey:
      if (!spec.q) throw DomainError("weighted morrey norm needs q");
      if (!spec.weight || !spec.size_weight) throw DomainError("weighted morrey norm needs both weights");
      return weighted_morrey_norm(x, spec.p, *spec.q, *spec.weight, *spec.size_weight);
  }
  return {};
}

}  // namespace driesz

#endif
