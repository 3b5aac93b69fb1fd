#ifndef DRIESZ_VERIFY_RESOLVED_HPP
#define DRIESZ_VERIFY_RESOLVED_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "../core.hpp"
#include "../operators.hpp"
#include "../summation.hpp"
#include "../weights.hpp"
#include "../window_sup.hpp"

namespace driesz::verify {

/// Two-sided bound on a quantity; hi may be +inf when a tail sum diverges.
struct Enclosure {
  double lo = 0;
  double hi = 0;
  double mid() const noexcept { return std::isfinite(hi) ? 0.5 * (lo + hi) : lo; }
  double width() const noexcept { return hi - lo; }
};

/// Bounds lo <= F(k) <= hi for every k in [first, last].
struct TailBlock {
  Index first = 0;
  Index last = 0;
  double f_lo = 0;
  double f_hi = 0;
};

struct ResolveOptions {
  /// Region = support hull widened by this much on both sides; negative means 2*span + 16.
  Index extension = -1;
  /// Each tail block is this fraction of its distance to the support.
  double block_ratio = 1.0 / 256;
  /// Blocks stop this far beyond the support; a power-law envelope covers the rest.
  Index far_reach = Index{1} << 50;
  /// The region always contains [-must_cover, must_cover].
  Index must_cover = 0;
};

/// A nonnegative sequence F on all of Z (|I_a x| or M_a x for finitely supported x):
/// exact values on a region around the support, enclosures on geometric blocks
/// beyond it, and F(k) <= envelope * dist(k)^{-decay} past the last block, where
/// dist is the distance to the support hull.
struct ResolvedOutput {
  Index region_lo = 0;
  Index region_hi = -1;
  std::vector<double> region;
  std::vector<TailBlock> right;
  std::vector<TailBlock> left;
  Index support_lo = 0;
  Index support_hi = 0;
  double envelope = 0;
  double decay = 1;

  double at(Index k) const {
    if (k < region_lo || k > region_hi) throw DomainError("point outside the resolved region");
    return region[static_cast<std::size_t>(k - region_lo)];
  }
  Index right_end() const noexcept { return right.empty() ? region_hi : right.back().last; }
  Index left_end() const noexcept { return left.empty() ? region_lo : left.back().first; }
};

/// A nonnegative component whose value decreases away from the support hull on both sides.
struct MonotoneTail {
  std::function<double(Index)> exact;
};

namespace detail {

inline std::vector<Index> block_starts(Index start, Index far_limit, double ratio) {
  std::vector<Index> starts;
  Index pos = start;
  while (pos <= far_limit) {
    starts.push_back(pos);
    pos += std::max<Index>(1, static_cast<Index>(ratio * static_cast<double>(pos)));
  }
  starts.push_back(pos);
  return starts;
}

/// Builds the blocks on one side. `sign` = +1 for the right side, -1 for the left; the
/// schedule is expressed in distances from `anchor` so the two sides are mirror images.
/// Block bounds come from the exact values at both ends of each block.
inline std::vector<TailBlock> build_side(int sign, Index edge, Index anchor, const ResolveOptions& opt,
                                         const MonotoneTail& pos, const std::optional<MonotoneTail>& neg) {
  Index start = (edge - anchor) * sign + 1;
  std::vector<Index> starts = block_starts(start, opt.far_reach, opt.block_ratio);
  auto point = [&](Index dist) { return anchor + sign * dist; };
  std::vector<TailBlock> out;
  out.reserve(starts.size());
  for (std::size_t i = 0; i + 1 < starts.size(); ++i) {
    Index k1 = point(starts[i]), k2 = point(starts[i + 1] - 1);
    double phi = pos.exact(k1), plo = k2 == k1 ? phi : pos.exact(k2);
    double nhi = 0, nlo = 0;
    if (neg) {
      nhi = neg->exact(k1);
      nlo = k2 == k1 ? nhi : neg->exact(k2);
    }
    TailBlock blk;
    blk.first = std::min(k1, k2);
    blk.last = std::max(k1, k2);
    blk.f_hi = std::max(phi - nlo, nhi - plo);
    blk.f_lo = std::max({0.0, plo - nhi, nlo - phi});
    out.push_back(blk);
  }
  return out;
}

/// sum_j x(j) |k - j|^{alpha-1} for a nonnegative x, at points k outside its support hull.
/// Far from the hull the kernel is expanded in binomial series around the hull center, so
/// a point costs a fixed number of operations instead of one power per support point.
class FarPotential {
 public:
  FarPotential(const FiniteSequence& x, double alpha) : x_(x), alpha_(alpha) {
    if (x.empty()) return;
    center_ = 0.5 * (static_cast<double>(x.min_support()) + static_cast<double>(x.max_support()));
    half_ = std::max(0.5, 0.5 * static_cast<double>(x.max_support() - x.min_support()));
    if (x.size() <= kDirectLimit) return;
    std::vector<long double> mom(kTerms + 1, 0.0L);
    for (Index i = 0; i < x.size(); ++i) {
      long double v = x.values()[static_cast<std::size_t>(i)];
      if (v == 0) continue;
      long double u = (static_cast<long double>(x.offset() + i) - center_) / half_, pw = v;
      for (int p = 0; p <= kTerms; ++p) {
        mom[static_cast<std::size_t>(p)] += pw;
        pw *= u;
      }
    }
    long double c = 1;
    coef_.resize(kTerms + 1);
    for (int p = 0; p <= kTerms; ++p) {
      coef_[static_cast<std::size_t>(p)] = c * mom[static_cast<std::size_t>(p)];
      c *= (static_cast<long double>(alpha) - 1 - p) / (p + 1);
    }
  }

  double operator()(Index k) const {
    if (x_.empty()) return 0.0;
    double d = std::fabs(static_cast<double>(k) - center_);
    if (coef_.empty() || half_ > 0.25 * d) return direct(k);
    // k - j = D - h u on the right, j - k = D + h u on the left
    long double t = half_ / d * (static_cast<double>(k) > center_ ? -1 : 1);
    long double sum = 0, pw = 1;
    for (long double c : coef_) {
      sum += c * pw;
      pw *= t;
    }
    return static_cast<double>(sum) * std::pow(d, alpha_ - 1);
  }

 private:
  static constexpr Index kDirectLimit = 64;
  static constexpr int kTerms = 48;

  double direct(Index k) const {
    PairwiseAccumulator s;
    for (Index i = 0; i < x_.size(); ++i) {
      double v = x_.values()[static_cast<std::size_t>(i)];
      if (v != 0) s.add(v * std::pow(static_cast<double>(std::abs(k - x_.offset() - i)), alpha_ - 1));
    }
    return s.result();
  }

  FiniteSequence x_;
  double alpha_;
  double center_ = 0;
  double half_ = 0.5;
  std::vector<long double> coef_;
};

}  // namespace detail

/// Assembles a resolved output from exact region values and tail components.
/// F = |pos - neg| (neg absent means F = pos) outside the region.
inline ResolvedOutput assemble(const FiniteSequence& x, Index region_lo, std::vector<double> region, double decay,
                               const ResolveOptions& opt, const MonotoneTail& pos,
                               const std::optional<MonotoneTail>& neg) {
  ResolvedOutput out;
  out.region_lo = region_lo;
  out.region_hi = region_lo + static_cast<Index>(region.size()) - 1;
  out.region = std::move(region);
  out.support_lo = x.min_support();
  out.support_hi = x.max_support();
  out.decay = decay;
  PairwiseAccumulator mass;
  for (double v : x.values()) mass.add(std::fabs(v));
  out.envelope = mass.result();
  out.right = detail::build_side(+1, out.region_hi, out.support_hi, opt, pos, neg);
  out.left = detail::build_side(-1, out.region_lo, out.support_lo, opt, pos, neg);
  return out;
}

inline std::pair<Index, Index> resolve_region(const FiniteSequence& x, const ResolveOptions& opt) {
  Index span = x.max_support() - x.min_support();
  Index ext = opt.extension >= 0 ? opt.extension : 2 * span + 16;
  Index lo = std::min(x.min_support() - ext, -opt.must_cover);
  Index hi = std::max(x.max_support() + ext, opt.must_cover);
  return {lo, hi};
}

/// M_alpha x on Z. Requires x nonzero.
inline ResolvedOutput resolve_maximal(const FiniteSequence& x, double alpha, const ResolveOptions& opt = {}) {
  if (x.empty()) throw DomainError("cannot resolve the output of a zero input");
  auto [lo, hi] = resolve_region(x, opt);
  auto eval = std::make_shared<MaximalEvaluator>(x, alpha);
  std::vector<double> region = eval->evaluate(EvalWindow(lo, hi));
  MonotoneTail tail;
  tail.exact = [eval](Index k) { return (*eval)(k); };
  return assemble(x, lo, std::move(region), 1 - alpha, opt, tail, std::nullopt);
}

/// |I_alpha x| on Z. Requires x nonzero. Outside the region the positive and negative
/// parts of x are propagated separately, each giving a monotone tail.
inline ResolvedOutput resolve_riesz(const FiniteSequence& x, double alpha, const ResolveOptions& opt = {}) {
  if (x.empty()) throw DomainError("cannot resolve the output of a zero input");
  auto [lo, hi] = resolve_region(x, opt);
  std::vector<double> region = riesz_fast_values(x, alpha, EvalWindow(lo, hi));
  for (double& v : region) v = std::fabs(v);
  auto make_tail = [alpha](const FiniteSequence& part) {
    auto far = std::make_shared<detail::FarPotential>(part, alpha);
    return MonotoneTail{[far](Index k) { return (*far)(k); }};
  };
  MonotoneTail pos = make_tail(x.positive_part());
  std::optional<MonotoneTail> neg;
  if (!x.is_nonnegative()) neg = make_tail(x.negative_part());
  return assemble(x, lo, std::move(region), 1 - alpha, opt, pos, neg);
}

namespace detail {

inline double block_weight_min(const Weight& w, const TailBlock& b) { return std::min(w(b.first), w(b.last)); }
inline double block_weight_max(const Weight& w, const TailBlock& b) { return std::max(w(b.first), w(b.last)); }

/// Upper bound of sum_{|k| > K} F(k)^r w(k) on one side past the blocks.
inline double remainder_sum(const ResolvedOutput& f, double r, const Weight& w, Index far_k, Index hull_edge) {
  double K = std::fabs(static_cast<double>(far_k));
  double gamma = r * f.decay - w.tail_exponent();
  if (gamma <= 1) return std::numeric_limits<double>::infinity();
  (void)hull_edge;
  // for |k| >= K >= 2|edge| the distance to the hull is at least |k|/2
  return std::pow(f.envelope, r) * w.tail_coefficient() * std::pow(2.0, r * f.decay) * std::pow(K, 1 - gamma) /
         (gamma - 1);
}

}  // namespace detail

struct SideSums {
  Enclosure region;
  Enclosure right;
  Enclosure left;
  Enclosure total() const {
    return {region.lo + right.lo + left.lo, region.hi + right.hi + left.hi};
  }
};

/// Enclosure of sum_{k in Z} F(k)^r w(k), split into region and the two tails.
inline SideSums power_sums(const ResolvedOutput& f, double r, const Weight& w) {
  SideSums out;
  PairwiseAccumulator reg;
  for (std::size_t i = 0; i < f.region.size(); ++i) {
    double v = f.region[i];
    if (v > 0) reg.add(std::pow(v, r) * w(f.region_lo + static_cast<Index>(i)));
  }
  out.region = {reg.result(), reg.result()};
  auto side = [&](const std::vector<TailBlock>& blocks, Index far_k, Index edge) {
    CompensatedSum lo, hi;
    for (const auto& b : blocks) {
      double len = static_cast<double>(b.last - b.first + 1);
      if (b.f_lo > 0) lo.add(len * std::pow(b.f_lo, r) * detail::block_weight_min(w, b));
      if (b.f_hi > 0) hi.add(len * std::pow(b.f_hi, r) * detail::block_weight_max(w, b));
    }
    return Enclosure{lo.result(), hi.result() + detail::remainder_sum(f, r, w, far_k, edge)};
  };
  out.right = side(f.right, f.right_end(), f.support_hi);
  out.left = side(f.left, f.left_end(), f.support_lo);
  return out;
}

inline Enclosure power_sum(const ResolvedOutput& f, double r, const Weight& w) { return power_sums(f, r, w).total(); }

/// Enclosure of sup_{v>0} v * w({F >= v})^{1/r}.
inline Enclosure weak_norm(const ResolvedOutput& f, double r, const Weight& w) {
  struct Item {
    double value;
    double mass;
  };
  std::vector<Item> lower, upper;
  for (std::size_t i = 0; i < f.region.size(); ++i) {
    double v = f.region[i];
    if (v > 0) {
      double m = w(f.region_lo + static_cast<Index>(i));
      lower.push_back({v, m});
      upper.push_back({v, m});
    }
  }
  for (const auto* side : {&f.right, &f.left}) {
    for (const auto& b : *side) {
      double len = static_cast<double>(b.last - b.first + 1);
      if (b.f_lo > 0) lower.push_back({b.f_lo, len * detail::block_weight_min(w, b)});
      if (b.f_hi > 0) upper.push_back({b.f_hi, len * detail::block_weight_max(w, b)});
    }
  }
  auto desc = [](const Item& a, const Item& b) { return a.value > b.value; };
  std::sort(lower.begin(), lower.end(), desc);
  std::sort(upper.begin(), upper.end(), desc);

  Enclosure out;
  {
    CompensatedSum mass;
    for (std::size_t i = 0; i < lower.size(); ++i) {
      mass.add(lower[i].mass);
      if (i + 1 == lower.size() || lower[i + 1].value < lower[i].value) {
        out.lo = std::max(out.lo, lower[i].value * std::pow(mass.result(), 1 / r));
      }
    }
  }

  // points past the last blocks: dist <= (envelope / v)^{1/decay} wherever F >= v there
  double e = w.tail_exponent();
  double c = w.tail_coefficient();
  double gamma = r * f.decay - e;
  double anchor = static_cast<double>(std::max(std::abs(f.support_lo), std::abs(f.support_hi))) + 1;
  double far_dist = std::min(static_cast<double>(f.right_end() - f.support_hi),
                             static_cast<double>(f.support_lo - f.left_end()));
  double beyond_threshold = f.envelope * std::pow(far_dist, -f.decay);
  auto remainder = [&](double v) {
    if (v > beyond_threshold) return 0.0;
    double reach = anchor + std::pow(f.envelope / v, 1 / f.decay);
    double ee = e == -1 ? -1 + 1e-9 : e;
    double one_side = ee > -1 ? c * (1 + std::pow(reach, ee + 1) / (ee + 1))
                              : c * std::pow(std::min(std::fabs(static_cast<double>(f.right_end())),
                                                      std::fabs(static_cast<double>(f.left_end()))),
                                             ee + 1) / -(ee + 1);
    return 2 * one_side;
  };

  std::vector<double> breaks;
  breaks.reserve(lower.size() + upper.size() + 1);
  for (const auto& it : lower) breaks.push_back(it.value);
  for (const auto& it : upper) breaks.push_back(it.value);
  breaks.push_back(beyond_threshold);
  std::sort(breaks.begin(), breaks.end(), std::greater<>());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

  // for v in (b[i+1], b[i]] every point with F >= v has an upper value >= b[i], so
  // v * w({F >= v})^{1/r} <= b[i] * (mass_upper(>= b[i]) + remainder(b[i+1]))^{1/r}
  std::size_t cursor = 0;
  CompensatedSum mass;
  double hi = 0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    while (cursor < upper.size() && upper[cursor].value >= breaks[i]) mass.add(upper[cursor++].mass);
    hi = std::max(hi, breaks[i] * std::pow(mass.result() + remainder(breaks[i + 1]), 1 / r));
  }
  // (0, b_last]: v^r (mass + remainder(v)) increases with v when gamma >= 1
  if (gamma < 1) {
    hi = std::numeric_limits<double>::infinity();
  } else if (!breaks.empty()) {
    double vlast = breaks.back();
    while (cursor < upper.size()) mass.add(upper[cursor++].mass);
    hi = std::max(hi, vlast * std::pow(mass.result() + remainder(vlast), 1 / r));
  }
  out.hi = std::max(hi, out.lo);
  return out;
}

namespace detail {

struct TailCut {
  /// Upper bound of the tail mass within the cut distance.
  double mass = 0;
  /// Lower bound of the size of the tail points before the cut.
  double size = 0;
};

/// Cuts at distances 1, 2, 4, ... past the region edge, then one past the last block. A block
/// the cut passes through contributes per point.
inline std::vector<TailCut> tail_cuts(const std::vector<TailBlock>& blocks, int sign, Index edge, double r,
                                      const Weight& w, const std::optional<Weight>& v, double remainder) {
  auto near_dist = [&](const TailBlock& b) { return sign > 0 ? b.first - edge : edge - b.last; };
  auto far_dist = [&](const TailBlock& b) { return sign > 0 ? b.last - edge : edge - b.first; };
  auto point_mass = [&](const TailBlock& b) { return b.f_hi > 0 ? std::pow(b.f_hi, r) * block_weight_max(w, b) : 0.0; };
  auto point_size = [&](const TailBlock& b) { return v ? block_weight_min(*v, b) : 1.0; };
  // running totals over whole blocks; the block holding distance d is added in part
  struct Cumulative {
    std::size_t at = 0;
    CompensatedSum whole;
  };
  auto upto = [&](Cumulative& c, Index d, auto per_point) {
    while (c.at < blocks.size() && far_dist(blocks[c.at]) <= d) {
      const auto& b = blocks[c.at++];
      c.whole.add(static_cast<double>(b.last - b.first + 1) * per_point(b));
    }
    double part = 0;
    if (c.at < blocks.size() && near_dist(blocks[c.at]) <= d) {
      const auto& b = blocks[c.at];
      part = static_cast<double>(d - near_dist(b) + 1) * per_point(b);
    }
    return c.whole.result() + part;
  };
  std::vector<TailCut> out;
  Cumulative mass, size;
  Index before = 0;
  for (Index t = 1;; t *= 2) {
    bool last = blocks.empty() || t >= far_dist(blocks.back());
    double m = upto(mass, t, point_mass);
    out.push_back({m + (last ? remainder : 0.0), upto(size, before + 1, point_size)});
    if (last) break;
    before = t;
  }
  return out;
}

}  // namespace detail

struct MorreyEnclosure {
  Enclosure value;
  std::optional<SymmetricInterval> witness;
  /// Whether windows leaving the region were shown not to exceed the interior supremum.
  bool certified = false;
};

/// Enclosure of sup_S V(S)^{size_exponent} (sum_S F^r W)^{1/r} over windows of Z, where V sums
/// `size_weight` (cardinality if absent). Requires size_exponent < 0.
inline MorreyEnclosure morrey_sup(const ResolvedOutput& f, double r, double size_exponent,
                                  const std::optional<Weight>& size_weight, const Weight& sum_weight) {
  if (!(size_exponent < 0)) throw DomainError("morrey supremum needs a negative size exponent");
  std::vector<double> g(f.region.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    double v = f.region[i];
    g[i] = v > 0 ? std::pow(v, r) * sum_weight(f.region_lo + static_cast<Index>(i)) : 0.0;
  }
  std::vector<double> vv;
  if (size_weight) vv = size_weight->sample(f.region_lo, f.region_hi);
  double ex = size_exponent * r;
  WindowSupremum sup(f.region_lo, g, vv, ex);
  WindowMax best = sup.maximize();
  // a window leaving the region meets it in a run touching the boundary; if it reaches
  // past distance t_{c-1} but not past t_c it adds at most the tail mass within t_c and at
  // least the size of the first t_{c-1} + 1 tail points
  auto right = detail::tail_cuts(f.right, +1, f.region_hi, r, sum_weight, size_weight,
                                 detail::remainder_sum(f, r, sum_weight, f.right_end(), f.support_hi));
  auto left = detail::tail_cuts(f.left, -1, f.region_lo, r, sum_weight, size_weight,
                                detail::remainder_sum(f, r, sum_weight, f.left_end(), f.support_lo));
  auto score = [ex](double g, double v) { return g > 0 ? std::pow(v, ex) * g : 0.0; };
  double cert = 0;
  for (Index j = f.region_lo; j <= f.region_hi; ++j) {
    double gr = sup.run_g(j, f.region_hi), vr = sup.run_v(j, f.region_hi);
    double gl = sup.run_g(f.region_lo, j), vl = sup.run_v(f.region_lo, j);
    for (const auto& c : right) cert = std::max(cert, score(gr + c.mass, vr + c.size));
    for (const auto& c : left) cert = std::max(cert, score(gl + c.mass, vl + c.size));
  }
  double gall = sup.run_g(f.region_lo, f.region_hi), vall = sup.run_v(f.region_lo, f.region_hi);
  for (const auto& cl : left) {
    for (const auto& cr : right) cert = std::max(cert, score(gall + cl.mass + cr.mass, vall + cl.size + cr.size));
  }
  MorreyEnclosure out;
  out.value.lo = std::pow(best.score, 1 / r);
  out.value.hi = std::pow(std::max(best.score, cert), 1 / r);
  out.witness = best.witness;
  out.certified = cert <= best.score;
  return out;
}

}  // namespace driesz::verify

#endif
