#ifndef DRIESZ_WEIGHTS_HPP
#define DRIESZ_WEIGHTS_HPP

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "core.hpp"
#include "rng.hpp"
#include "summation.hpp"

namespace driesz {

/// Strictly positive weight on the integers.
class Weight {
 public:
  enum class Kind { Table, Power, Constant };

  /// w(k) = coefficient * max(|k|, 1)^beta
  static Weight power(double beta, double coefficient = 1.0) {
    if (!std::isfinite(beta)) throw DomainError("power weight exponent must be finite");
    check_positive(coefficient, "power weight coefficient");
    Weight w;
    w.kind_ = Kind::Power;
    w.beta_ = beta;
    w.coef_ = coefficient;
    return w;
  }

  static Weight constant(double c) {
    check_positive(c, "constant weight");
    Weight w;
    w.kind_ = Kind::Constant;
    w.coef_ = c;
    return w;
  }

  static Weight table(Index offset, std::vector<double> values, double outside) {
    for (double v : values) check_positive(v, "table weight value");
    check_positive(outside, "table weight outside value");
    Weight w;
    w.kind_ = Kind::Table;
    w.offset_ = offset;
    w.values_ = std::move(values);
    w.coef_ = outside;
    return w;
  }

  /// Table weight with w(k) = on_naturals[|k|] for |k| < size and `outside` beyond.
  static Weight reflected(const std::vector<double>& on_naturals, double outside) {
    if (on_naturals.empty()) return table(0, {}, outside);
    Index n = static_cast<Index>(on_naturals.size());
    std::vector<double> vals(static_cast<std::size_t>(2 * n - 1));
    for (Index k = -(n - 1); k <= n - 1; ++k) vals[static_cast<std::size_t>(k + n - 1)] = on_naturals[static_cast<std::size_t>(k < 0 ? -k : k)];
    return table(-(n - 1), std::move(vals), outside);
  }

  double operator()(Index k) const noexcept {
    switch (kind_) {
      case Kind::Constant: return coef_;
      case Kind::Power: {
        double a = k < 0 ? -static_cast<double>(k) : static_cast<double>(k);
        if (a < 1) a = 1;
        return beta_ == 0 ? coef_ : coef_ * std::pow(a, beta_);
      }
      case Kind::Table: {
        Index i = k - offset_;
        if (i < 0 || i >= static_cast<Index>(values_.size())) return coef_;
        return values_[static_cast<std::size_t>(i)];
      }
    }
    return coef_;
  }

  /// Pointwise power w^r.
  Weight pow(double r) const {
    Weight w = *this;
    switch (kind_) {
      case Kind::Constant: w.coef_ = std::pow(coef_, r); break;
      case Kind::Power:
        w.beta_ = beta_ * r;
        w.coef_ = std::pow(coef_, r);
        break;
      case Kind::Table:
        for (double& v : w.values_) v = std::pow(v, r);
        w.coef_ = std::pow(coef_, r);
        break;
    }
    return w;
  }

  Weight scaled(double c) const {
    check_positive(c, "weight scale");
    Weight w = *this;
    w.coef_ *= c;
    for (double& v : w.values_) v *= c;
    return w;
  }

  double mass(const IntervalRun& run) const {
    if (kind_ == Kind::Constant) return coef_ * static_cast<double>(run.cardinality());
    PairwiseAccumulator acc;
    for (Index k = run.start; k <= run.end; ++k) acc.add((*this)(k));
    return acc.result();
  }

  std::vector<double> sample(Index lo, Index hi) const {
    std::vector<double> out;
    if (hi < lo) return out;
    out.reserve(static_cast<std::size_t>(hi - lo + 1));
    for (Index k = lo; k <= hi; ++k) out.push_back((*this)(k));
    return out;
  }

  Kind kind() const noexcept { return kind_; }
  double beta() const noexcept { return beta_; }
  /// Scale factor of a power weight, value of a constant weight, or outside value of a table.
  double coefficient() const noexcept { return coef_; }
  Index offset() const noexcept { return offset_; }
  const std::vector<double>& values() const noexcept { return values_; }

  /// For |k| > regular_radius() the weight equals tail_coefficient() * |k|^tail_exponent(),
  /// hence is monotone on each side.
  Index regular_radius() const noexcept {
    switch (kind_) {
      case Kind::Constant: return 0;
      case Kind::Power: return 1;
      case Kind::Table: {
        if (values_.empty()) return 0;
        Index last = offset_ + static_cast<Index>(values_.size()) - 1;
        return std::max(offset_ < 0 ? -offset_ : offset_, last < 0 ? -last : last) + 1;
      }
    }
    return 0;
  }
  double tail_exponent() const noexcept { return kind_ == Kind::Power ? beta_ : 0.0; }
  double tail_coefficient() const noexcept { return coef_; }

  bool is_constant() const noexcept { return kind_ == Kind::Constant || (kind_ == Kind::Power && beta_ == 0); }

  std::string describe() const {
    switch (kind_) {
      case Kind::Constant: return "constant(" + std::to_string(coef_) + ")";
      case Kind::Power: return "power(" + std::to_string(beta_) + ")";
      case Kind::Table: return "table(" + std::to_string(values_.size()) + ")";
    }
    return "?";
  }

 private:
  static void check_positive(double v, const char* what) {
    if (!(v > 0) || !std::isfinite(v)) throw DomainError(std::string(what) + " must be positive and finite");
  }

  Kind kind_ = Kind::Constant;
  double beta_ = 0;
  double coef_ = 1;
  Index offset_ = 0;
  std::vector<double> values_;
};

enum class FamilyRule { AllRuns, Symmetric };

/// Finite family of intervals inside the window [lo, hi] with at most max_cardinality points.
struct IntervalFamily {
  Index lo = 0;
  Index hi = 0;
  Index max_cardinality = 1;
  FamilyRule rule = FamilyRule::AllRuns;

  IntervalFamily() = default;
  IntervalFamily(Index l, Index h, Index cap, FamilyRule r = FamilyRule::AllRuns)
      : lo(l), hi(h), max_cardinality(cap), rule(r) {
    if (h < l) throw DomainError("interval family needs lo <= hi");
    if (cap < 1) throw DomainError("interval family needs a positive cardinality cap");
  }

  /// All runs inside [-L, L] with at most L points.
  static IntervalFamily window(Index cap, FamilyRule r = FamilyRule::AllRuns) { return {-cap, cap, cap, r}; }

  template <class Fn>
  void for_each(Fn&& fn) const {
    if (rule == FamilyRule::AllRuns) {
      for (Index a = lo; a <= hi; ++a) {
        Index last = std::min(hi, a + max_cardinality - 1);
        for (Index b = a; b <= last; ++b) fn(IntervalRun(a, b));
      }
    } else {
      for (Index m = lo; m <= hi; ++m) {
        for (Index n = 0; m - n >= lo && m + n <= hi && 2 * n + 1 <= max_cardinality; ++n) fn(IntervalRun(m - n, m + n));
      }
    }
  }
};

struct ConstantEstimate {
  double value = 0;
  IntervalRun witness;
};

namespace detail {

/// base^e with exact shortcuts for the exponents that show up in practice.
inline double pow_fast(double base, double e) noexcept {
  if (e == 1) return base;
  if (e == 2) return base * base;
  if (e == 3) return base * base * base;
  if (e == 0.5) return std::sqrt(base);
  return std::pow(base, e);
}

/// Maximizes score(sum_a, sum_b, count) over the family, where the sums run over
/// the interval of the two sampled arrays. Runs are grown point by point from each
/// start, so no prefix-sum cancellation enters.
template <class Score>
ConstantEstimate scan_two_sums(const IntervalFamily& fam, const std::vector<double>& a, const std::vector<double>& b,
                               Score score) {
  ConstantEstimate best;
  best.value = -1;
  auto consider = [&](double v, Index s, Index e) {
    if (v > best.value) {
      best.value = v;
      best.witness = IntervalRun(s, e);
    }
  };
  if (fam.rule == FamilyRule::AllRuns) {
    for (Index s = fam.lo; s <= fam.hi; ++s) {
      double sa = 0, sb = 0;
      Index last = std::min(fam.hi, s + fam.max_cardinality - 1);
      for (Index e = s; e <= last; ++e) {
        std::size_t i = static_cast<std::size_t>(e - fam.lo);
        sa += a[i];
        sb += b[i];
        consider(score(sa, sb, static_cast<double>(e - s + 1), s, e), s, e);
      }
    }
  } else {
    for (Index m = fam.lo; m <= fam.hi; ++m) {
      std::size_t c = static_cast<std::size_t>(m - fam.lo);
      double sa = a[c], sb = b[c];
      consider(score(sa, sb, 1.0, m, m), m, m);
      for (Index n = 1; m - n >= fam.lo && m + n <= fam.hi && 2 * n + 1 <= fam.max_cardinality; ++n) {
        std::size_t l = static_cast<std::size_t>(m - n - fam.lo), r = static_cast<std::size_t>(m + n - fam.lo);
        sa += a[l] + a[r];
        sb += b[l] + b[r];
        consider(score(sa, sb, static_cast<double>(2 * n + 1), m - n, m + n), m - n, m + n);
      }
    }
  }
  return best;
}

inline double run_min(const Weight& w, const IntervalRun& j) {
  double m = w(j.start);
  for (Index k = j.start + 1; k <= j.end; ++k) m = std::min(m, w(k));
  return m;
}

inline double run_sum(const Weight& w, const IntervalRun& j, double power) {
  CompensatedSum s;
  for (Index k = j.start; k <= j.end; ++k) s.add(power == 1 ? w(k) : std::pow(w(k), power));
  return s.result();
}

}  // namespace detail

inline double a1_ratio(const Weight& w, const IntervalRun& j) {
  return detail::run_sum(w, j, 1) / static_cast<double>(j.cardinality()) / detail::run_min(w, j);
}

inline double ap_ratio(const Weight& w, const IntervalRun& j, double p) {
  if (!(p > 1)) throw DomainError("ap ratio needs p>1");
  double n = static_cast<double>(j.cardinality());
  double avg_w = detail::run_sum(w, j, 1) / n;
  double avg_dual = detail::run_sum(w, j, -1 / (p - 1)) / n;
  return avg_w * detail::pow_fast(avg_dual, p - 1);
}

inline double apq_ratio(const Weight& w, const IntervalRun& j, double p, double q) {
  if (!(p > 1 && q > 1)) throw DomainError("apq ratio needs p>1 and q>1");
  double pc = p / (p - 1);
  double n = static_cast<double>(j.cardinality());
  return std::pow(detail::run_sum(w, j, q) / n, 1 / q) * std::pow(detail::run_sum(w, j, -pc) / n, 1 / pc);
}

/// Supremum of the A_p ratio (A_1 ratio when p == 1) over the family, with an attaining interval.
inline ConstantEstimate ap_constant(const Weight& w, const IntervalFamily& fam, double p) {
  if (!(p >= 1)) throw DomainError("ap constant needs p>=1");
  std::vector<double> vals = w.sample(fam.lo, fam.hi);
  if (p == 1) {
    ConstantEstimate best;
    best.value = -1;
    auto consider = [&](double sum, double mn, Index s, Index e) {
      double v = sum / static_cast<double>(e - s + 1) / mn;
      if (v > best.value) best = {v, IntervalRun(s, e)};
    };
    if (fam.rule == FamilyRule::AllRuns) {
      for (Index s = fam.lo; s <= fam.hi; ++s) {
        double sum = 0, mn = vals[static_cast<std::size_t>(s - fam.lo)];
        for (Index e = s; e <= std::min(fam.hi, s + fam.max_cardinality - 1); ++e) {
          double v = vals[static_cast<std::size_t>(e - fam.lo)];
          sum += v;
          mn = std::min(mn, v);
          consider(sum, mn, s, e);
        }
      }
    } else {
      for (Index m = fam.lo; m <= fam.hi; ++m) {
        double sum = vals[static_cast<std::size_t>(m - fam.lo)], mn = sum;
        consider(sum, mn, m, m);
        for (Index n = 1; m - n >= fam.lo && m + n <= fam.hi && 2 * n + 1 <= fam.max_cardinality; ++n) {
          double l = vals[static_cast<std::size_t>(m - n - fam.lo)], r = vals[static_cast<std::size_t>(m + n - fam.lo)];
          sum += l + r;
          mn = std::min({mn, l, r});
          consider(sum, mn, m - n, m + n);
        }
      }
    }
    return best;
  }
  std::vector<double> dual(vals.size());
  double e = -1 / (p - 1);
  for (std::size_t i = 0; i < vals.size(); ++i) dual[i] = std::pow(vals[i], e);
  return detail::scan_two_sums(fam, vals, dual, [p](double sa, double sb, double n, Index, Index) {
    return (sa / n) * detail::pow_fast(sb / n, p - 1);
  });
}

inline ConstantEstimate apq_constant(const Weight& w, const IntervalFamily& fam, double p, double q) {
  if (!(p > 1 && q > 1)) throw DomainError("apq constant needs p>1 and q>1");
  double pc = p / (p - 1);
  std::vector<double> vals = w.sample(fam.lo, fam.hi);
  std::vector<double> a(vals.size()), b(vals.size());
  for (std::size_t i = 0; i < vals.size(); ++i) {
    a[i] = std::pow(vals[i], q);
    b[i] = std::pow(vals[i], -pc);
  }
  // maximise the q-th power of the ratio, then take the root once
  double ex = q / pc;
  ConstantEstimate best = detail::scan_two_sums(fam, a, b, [ex](double sa, double sb, double n, Index, Index) {
    return (sa / n) * detail::pow_fast(sb / n, ex);
  });
  best.value = std::pow(best.value, 1 / q);
  return best;
}

/// x*(k) = w(k)^{-1/(p-1)} on the run, the extremizer of the duality ratio.
inline std::vector<double> duality_extremizer(const Weight& w, const IntervalRun& j, double p) {
  if (!(p > 1)) throw DomainError("duality extremizer needs p>1");
  std::vector<double> x;
  for (Index k = j.start; k <= j.end; ++k) x.push_back(std::pow(w(k), -1 / (p - 1)));
  return x;
}

/// [(1/|J|) sum |x|] / [(1/w(J)) sum |x|^p w]^{1/p} for x given on the run.
inline double duality_ratio(const Weight& w, const IntervalRun& j, double p, std::span<const double> x) {
  if (static_cast<Index>(x.size()) != j.cardinality()) throw DomainError("duality ratio needs one value per point");
  CompensatedSum s1, sp, sw;
  for (Index k = j.start; k <= j.end; ++k) {
    double v = std::fabs(x[static_cast<std::size_t>(k - j.start)]);
    double wk = w(k);
    s1.add(v);
    sp.add(std::pow(v, p) * wk);
    sw.add(wk);
  }
  return (s1.result() / static_cast<double>(j.cardinality())) / std::pow(sp.result() / sw.result(), 1 / p);
}

struct DoublingRatio {
  SymmetricInterval interval;
  double ratio = 0;
};

inline std::vector<DoublingRatio> doubling_ratios(const Weight& w, std::span<const SymmetricInterval> family, Index factor) {
  std::vector<DoublingRatio> out;
  out.reserve(family.size());
  for (const auto& s : family) out.push_back({s, w.mass(dilate(s, factor)) / w.mass(s.run())});
  return out;
}

struct ReverseDoubling {
  double value = 0;
  SymmetricInterval witness;
};

inline ReverseDoubling reverse_doubling_constant(const Weight& w, std::span<const SymmetricInterval> family) {
  if (family.empty()) throw DomainError("reverse doubling needs a nonempty family");
  ReverseDoubling best{std::numeric_limits<double>::infinity(), family.front()};
  for (const auto& d : doubling_ratios(w, family, 2)) {
    if (d.ratio < best.value) best = {d.ratio, d.interval};
  }
  return best;
}

/// {S_{center,N} : lo <= N <= hi}
inline std::vector<SymmetricInterval> centered_family(Index center, Index radius_lo, Index radius_hi) {
  std::vector<SymmetricInterval> out;
  for (Index n = radius_lo; n <= radius_hi; ++n) out.emplace_back(center, n);
  return out;
}

struct SubsetSampler {
  bool sub_runs = true;
  std::vector<double> densities{0.125, 0.25, 0.5};
  int draws_per_density = 4;
  /// Enumerate every nonempty subset when |J| <= 16.
  bool exhaustive_small = false;
  std::uint64_t seed = 0;
};

struct SubsetRecord {
  IntervalRun interval;
  double density = 0;
  double mass_fraction = 0;
};

struct AInfinityReport {
  double epsilon = 0;
  double delta_hat = 0;
  std::size_t violations = 0;
  std::vector<SubsetRecord> records;
  /// Requests the sampler could not satisfy, e.g. a density too small for |J|.
  std::vector<std::string> exhausted;
};

inline AInfinityReport a_infinity_eps_delta(const Weight& w, const IntervalFamily& fam, double epsilon,
                                            const SubsetSampler& sampler = {}) {
  if (!(epsilon > 0 && epsilon < 1)) throw DomainError("epsilon must lie in (0,1)");
  AInfinityReport rep;
  rep.epsilon = epsilon;
  // mass ratios equal to epsilon up to roundoff count as satisfied
  const double limit = epsilon * (1 + 1e-12);
  CounterRng root(sampler.seed);
  std::uint64_t interval_id = 0;
  fam.for_each([&](const IntervalRun& j) {
    std::size_t n = static_cast<std::size_t>(j.cardinality());
    std::vector<double> vals = w.sample(j.start, j.end);
    double total = pairwise_sum(vals);
    auto record = [&](double count, double mass) {
      SubsetRecord r{j, count / static_cast<double>(n), mass / total};
      if (r.mass_fraction > limit) ++rep.violations;
      rep.records.push_back(r);
    };
    if (sampler.sub_runs) {
      for (std::size_t a = 0; a < n; ++a) {
        double m = 0;
        for (std::size_t b = a; b < n; ++b) {
          m += vals[b];
          record(static_cast<double>(b - a + 1), m);
        }
      }
    }
    if (sampler.exhaustive_small && n <= 16) {
      for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        double m = 0;
        for (std::size_t i = 0; i < n; ++i) {
          if (mask >> i & 1u) m += vals[i];
        }
        record(static_cast<double>(std::popcount(mask)), m);
      }
    }
    CounterRng stream = root.split(interval_id++);
    for (std::size_t di = 0; di < sampler.densities.size(); ++di) {
      double d = sampler.densities[di];
      std::size_t size = static_cast<std::size_t>(std::llround(d * static_cast<double>(n)));
      std::string where = "[" + std::to_string(j.start) + "," + std::to_string(j.end) + "] density " + std::to_string(d);
      if (size < 1 || size > n) {
        rep.exhausted.push_back(where + ": no subset of that size");
        continue;
      }
      // count distinct subsets of this size, saturating at the number of draws
      double distinct = 1;
      for (std::size_t i = 0; i < size && distinct < sampler.draws_per_density; ++i) {
        distinct = distinct * static_cast<double>(n - i) / static_cast<double>(i + 1);
      }
      int draws = sampler.draws_per_density;
      if (distinct < draws) {
        rep.exhausted.push_back(where + ": only " + std::to_string(static_cast<long long>(std::llround(distinct))) +
                                " distinct subsets");
        draws = static_cast<int>(std::llround(distinct));
      }
      CounterRng g = stream.split(di);
      std::vector<std::size_t> idx(n);
      for (int t = 0; t < draws; ++t) {
        std::iota(idx.begin(), idx.end(), std::size_t{0});
        double m = 0;
        for (std::size_t i = 0; i < size; ++i) {
          std::size_t pick = i + static_cast<std::size_t>(g.below(n - i));
          std::swap(idx[i], idx[pick]);
          m += vals[idx[i]];
        }
        record(static_cast<double>(size), m);
      }
    }
  });
  double first_violation = std::numeric_limits<double>::infinity();
  for (const auto& r : rep.records) {
    if (r.mass_fraction > limit) first_violation = std::min(first_violation, r.density);
  }
  double delta = 0;
  for (const auto& r : rep.records) {
    if (r.mass_fraction <= limit && r.density < first_violation) delta = std::max(delta, r.density);
  }
  if (rep.records.empty()) rep.exhausted.push_back("family produced no subsets");
  rep.delta_hat = delta;
  return rep;
}

enum class Verdict { Bounded, Growing, Inconclusive };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Bounded: return "bounded";
    case Verdict::Growing: return "growing";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

/// Relative growth over the final doubling below this is read as stabilization.
inline constexpr double kBoundedGrowth = 0.05;
/// Relative growth at or above this is read as divergence.
inline constexpr double kGrowingGrowth = 0.20;

inline Verdict classify_growth(double growth) {
  if (!std::isfinite(growth)) return Verdict::Inconclusive;
  if (growth < kBoundedGrowth) return Verdict::Bounded;
  if (growth >= kGrowingGrowth) return Verdict::Growing;
  return Verdict::Inconclusive;
}

/// last/previous - 1 over a sequence of values at increasing caps; NaN if undefined.
inline double final_growth(std::span<const double> values) {
  if (values.size() < 2) return std::numeric_limits<double>::quiet_NaN();
  double prev = values[values.size() - 2], last = values.back();
  if (!(prev > 0)) return std::numeric_limits<double>::quiet_NaN();
  return last / prev - 1;
}

struct CapConstant {
  Index cap = 0;
  double value = 0;
  IntervalRun witness;
};

struct GrowthProfile {
  std::vector<CapConstant> entries;
  double growth = 0;
  Verdict verdict = Verdict::Inconclusive;
};

/// A_p (q absent) or A(p,q) (q present) condition.
struct MuckenhouptSpec {
  double p = 2;
  std::optional<double> q;
};

inline GrowthProfile constant_growth_profile(const Weight& w, const MuckenhouptSpec& spec, std::span<const Index> caps) {
  for (std::size_t i = 0; i < caps.size(); ++i) {
    if (caps[i] < 1 || (i > 0 && caps[i] <= caps[i - 1])) throw DomainError("caps must be positive and increasing");
  }
  GrowthProfile out;
  std::vector<double> values;
  for (Index cap : caps) {
    IntervalFamily fam = IntervalFamily::window(cap);
    ConstantEstimate c = spec.q ? apq_constant(w, fam, spec.p, *spec.q) : ap_constant(w, fam, spec.p);
    out.entries.push_back({cap, c.value, c.witness});
    values.push_back(c.value);
  }
  out.growth = final_growth(values);
  out.verdict = classify_growth(out.growth);
  return out;
}

}  // namespace driesz

#endif
