#ifndef DRIESZ_VERIFY_EXPERIMENTS_HPP
#define DRIESZ_VERIFY_EXPERIMENTS_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "../core.hpp"
#include "../norms.hpp"
#include "../operators.hpp"
#include "../parallel.hpp"
#include "../weights.hpp"
#include "families.hpp"
#include "resolved.hpp"

namespace driesz::verify {

enum class ExperimentTag {
  MaximalMorrey,         // t3.7
  MaximalWeakL1,         // t3.7ii
  RieszHedberg,          // c3.5
  RieszWeakL1,           // c3.5ii
  MaximalWeighted,       // t3.1
  MaximalWeightedWeak,   // t3.8
  RieszWeighted,         // t1.1
  GoodLambda,            // l3.12
  GoodSet,               // l3.16
  RieszWeightedMorrey,   // t3.10
  MaximalWeightedMorrey, // t3.11
  MembershipScan,        // m2.13
};

struct TagName {
  ExperimentTag tag;
  std::string_view name;
};

inline constexpr std::array<TagName, 12> kTagNames{{
    {ExperimentTag::MaximalMorrey, "t3.7"},
    {ExperimentTag::MaximalWeakL1, "t3.7ii"},
    {ExperimentTag::RieszHedberg, "c3.5"},
    {ExperimentTag::RieszWeakL1, "c3.5ii"},
    {ExperimentTag::MaximalWeighted, "t3.1"},
    {ExperimentTag::MaximalWeightedWeak, "t3.8"},
    {ExperimentTag::RieszWeighted, "t1.1"},
    {ExperimentTag::GoodLambda, "l3.12"},
    {ExperimentTag::GoodSet, "l3.16"},
    {ExperimentTag::RieszWeightedMorrey, "t3.10"},
    {ExperimentTag::MaximalWeightedMorrey, "t3.11"},
    {ExperimentTag::MembershipScan, "m2.13"},
}};

inline std::string_view tag_name(ExperimentTag t) {
  for (const auto& e : kTagNames) {
    if (e.tag == t) return e.name;
  }
  return "?";
}

inline ExperimentTag parse_tag(std::string_view s) {
  for (const auto& e : kTagNames) {
    if (e.name == s) return e.tag;
  }
  throw DomainError("unknown experiment tag '" + std::string(s) + "'");
}

struct CaseResult {
  std::string id;
  Index size = 0;
  double lhs = 0;
  double rhs = 0;
  double ratio = 0;
  Enclosure lhs_bounds;
  Enclosure rhs_bounds;
};

struct SkippedCase {
  std::string id;
  std::string reason;
};

struct TrendPoint {
  Index cap = 0;
  double running_sup = 0;
};

struct EmpiricalConstantReport {
  std::string tag;
  std::vector<CaseResult> cases;
  std::vector<SkippedCase> skipped;
  double sup_ratio = 0;
  std::vector<TrendPoint> trend;
  double growth = 0;
  Verdict verdict = Verdict::Inconclusive;
};

struct ExperimentSetup {
  ExperimentTag tag = ExperimentTag::MaximalWeighted;
  double alpha = 0.25;
  std::optional<double> p;
  std::optional<double> q;
  std::optional<Weight> weight;
  std::vector<TestFamily> families;
  /// Support lengths, increasing; each is also a trend point.
  std::vector<Index> caps;
  /// Runs experiments whose weight lies outside the hypotheses.
  bool force = false;
  unsigned threads = 1;
  ResolveOptions resolve;
};

/// Exponents and weights a tag works with once its hypotheses are checked.
struct CheckedSetup {
  std::optional<ExponentProfile> profile;
  double q = 0;
  Weight weight = Weight::constant(1);
};

namespace detail {

inline bool takes_weight(ExperimentTag t) {
  switch (t) {
    case ExperimentTag::MaximalWeighted:
    case ExperimentTag::MaximalWeightedWeak:
    case ExperimentTag::RieszWeighted:
    case ExperimentTag::GoodLambda:
    case ExperimentTag::RieszWeightedMorrey:
    case ExperimentTag::MaximalWeightedMorrey: return true;
    default: return false;
  }
}

inline double need(const std::optional<double>& v, const char* what) {
  if (!v) throw DomainError(std::string("this experiment needs ") + what);
  return *v;
}

inline std::string number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

/// Power weights |k|^beta are in A(p,q) exactly when -1/q < beta < 1/p'.
inline void check_power_in_apq(const Weight& w, const ExponentProfile& prof) {
  if (w.kind() != Weight::Kind::Power) return;
  double b = w.beta();
  double lo = -1 / prof.q, hi = 1 / prof.p_conjugate;
  if (!(b > lo && b < hi)) {
    throw DomainError("power weight exponent " + number(b) + " outside the A(p,q) range (" + number(lo) + ", " +
                      number(hi) + "); pass --force to run anyway");
  }
}

}  // namespace detail

inline CheckedSetup check_hypotheses(const ExperimentSetup& s) {
  CheckedSetup out;
  if (!(s.alpha > 0 && s.alpha < 1)) throw DomainError("experiment needs 0<alpha<1");
  if (s.weight && !detail::takes_weight(s.tag)) {
    throw DomainError("experiment " + std::string(tag_name(s.tag)) + " takes no weight");
  }
  if (s.weight) out.weight = *s.weight;
  switch (s.tag) {
    case ExperimentTag::MaximalMorrey:
    case ExperimentTag::RieszHedberg:
      out.profile = make_profile(ProfileKind::MorreyScale, s.alpha, detail::need(s.p, "p"), detail::need(s.q, "q"));
      break;
    case ExperimentTag::MaximalWeighted:
    case ExperimentTag::MaximalWeightedWeak:
    case ExperimentTag::RieszWeighted:
    case ExperimentTag::MembershipScan:
      out.profile = make_profile(ProfileKind::SobolevScale, s.alpha, detail::need(s.p, "p"), s.q);
      if (!s.force) detail::check_power_in_apq(out.weight, *out.profile);
      break;
    case ExperimentTag::RieszWeightedMorrey:
    case ExperimentTag::MaximalWeightedMorrey:
      out.profile = make_profile(ProfileKind::WeightedMorreyScale, s.alpha, detail::need(s.p, "p"), s.q);
      if (!s.force) detail::check_power_in_apq(out.weight, *out.profile);
      break;
    case ExperimentTag::GoodLambda: {
      double q = detail::need(s.q, "q");
      if (!(q > 0) || !std::isfinite(q)) throw DomainError("good-lambda experiment needs q>0");
      out.q = q;
      if (!s.force && out.weight.kind() == Weight::Kind::Power && !(out.weight.beta() > -1)) {
        throw DomainError("power weight exponent must exceed -1 to be an A_infinity weight");
      }
      // both sums over Z converge only when the tail decays fast enough
      if (!(q * (1 - s.alpha) - out.weight.tail_exponent() > 1)) {
        throw DomainError("weighted sums diverge: need q(1-alpha) - beta > 1");
      }
      break;
    }
    case ExperimentTag::MaximalWeakL1:
    case ExperimentTag::RieszWeakL1:
    case ExperimentTag::GoodSet: break;
  }
  if (out.profile) out.q = out.profile->q;
  return out;
}

namespace detail {

inline Enclosure root(Enclosure e, double r) { return {std::pow(e.lo, 1 / r), std::pow(e.hi, 1 / r)}; }

/// Weighted Morrey-type norm of a resolved output; widens the region when windows leaving it
/// cannot be ruled out.
template <class Resolve>
Enclosure morrey_of(Resolve&& resolve, const ResolveOptions& base, Index span, double r, double e,
                    const std::optional<Weight>& v, const Weight& w) {
  if (e == 0) return root(power_sum(resolve(base), r, w), r);
  ResolveOptions opt = base;
  Index ext = opt.extension >= 0 ? opt.extension : 2 * span + 16;
  MorreyEnclosure m;
  for (int attempt = 0; attempt < 3; ++attempt) {
    opt.extension = ext;
    m = morrey_sup(resolve(opt), r, e, v, w);
    if (m.certified) break;
    ext *= 4;
  }
  return m.value;
}

/// sup_k |I x(k)| / (M_0 x(k))^{1 - alpha q}, exact on the region; outside it the ratio is at
/// most mass^{alpha q} 4^{1 - alpha q} d^{alpha (1 - q)} with d the distance to the support.
inline Enclosure hedberg_sup(const FiniteSequence& x, double alpha, double q, const ResolveOptions& opt) {
  auto [lo, hi] = resolve_region(x, opt);
  std::vector<double> ix = riesz_fast_values(x, alpha, EvalWindow(lo, hi));
  std::vector<double> m0 = fractional_maximal_values(x, 0.0, EvalWindow(lo, hi));
  double ex = 1 - alpha * q;
  double best = 0;
  for (std::size_t i = 0; i < ix.size(); ++i) {
    if (m0[i] > 0) best = std::max(best, std::fabs(ix[i]) / std::pow(m0[i], ex));
  }
  double mass = lp_norm(x, 1);
  double d = static_cast<double>(std::min(x.min_support() - lo, hi - x.max_support()));
  double tail = std::pow(mass, alpha * q) * std::pow(4.0, ex) * std::pow(d, alpha * (1 - q));
  return {best, std::max(best, tail)};
}

inline std::string case_id(const TestFamily& f, Index size) { return f.label() + "/n=" + std::to_string(size); }

/// The generated support [0, size) is centered on the origin so weights see both signs.
inline FiniteSequence centered_input(const TestFamily& f, Index size) { return f.generate(size).shifted(-(size / 2)); }

}  // namespace detail

/// Evaluates the two sides of the tag's inequality for one input. Returns nullopt for a zero input.
inline std::optional<CaseResult> evaluate_case(const ExperimentSetup& s, const CheckedSetup& c, const FiniteSequence& x) {
  if (x.empty()) return std::nullopt;
  const double a = s.alpha;
  const Index span = x.max_support() - x.min_support();
  ResolveOptions opt = s.resolve;
  opt.must_cover = std::max(opt.must_cover, c.weight.regular_radius());
  auto maximal = [&](const ResolveOptions& o) { return resolve_maximal(x, a, o); };
  auto riesz = [&](const ResolveOptions& o) { return resolve_riesz(x, a, o); };
  const Weight one = Weight::constant(1);
  CaseResult r;
  r.size = x.size();
  switch (s.tag) {
    case ExperimentTag::MaximalMorrey: {
      const auto& pr = *c.profile;
      r.lhs_bounds = detail::morrey_of(maximal, opt, span, *pr.s, 1 / *pr.t - 1 / *pr.s, std::nullopt, one);
      double v = morrey_norm(x, pr.p, pr.q).value;
      r.rhs_bounds = {v, v};
      break;
    }
    case ExperimentTag::MaximalWeakL1:
    case ExperimentTag::RieszWeakL1: {
      auto f = s.tag == ExperimentTag::MaximalWeakL1 ? maximal(opt) : riesz(opt);
      r.lhs_bounds = weak_norm(f, 1 / (1 - a), one);
      double v = lp_norm(x, 1);
      r.rhs_bounds = {v, v};
      break;
    }
    case ExperimentTag::RieszHedberg: {
      const auto& pr = *c.profile;
      r.lhs_bounds = detail::hedberg_sup(x, a, pr.q, opt);
      double v = std::pow(morrey_norm(x, pr.p, pr.q).value, a * pr.q);
      r.rhs_bounds = {v, v};
      break;
    }
    case ExperimentTag::MaximalWeighted:
    case ExperimentTag::RieszWeighted: {
      const auto& pr = *c.profile;
      auto f = s.tag == ExperimentTag::MaximalWeighted ? maximal(opt) : riesz(opt);
      r.lhs_bounds = detail::root(power_sum(f, pr.q, c.weight.pow(pr.q)), pr.q);
      double v = lp_norm(x, pr.p, c.weight.pow(pr.p));
      r.rhs_bounds = {v, v};
      break;
    }
    case ExperimentTag::MaximalWeightedWeak: {
      const auto& pr = *c.profile;
      r.lhs_bounds = weak_norm(maximal(opt), pr.q, c.weight.pow(pr.q));
      double v = lp_norm(x, pr.p, c.weight.pow(pr.p));
      r.rhs_bounds = {v, v};
      break;
    }
    case ExperimentTag::RieszWeightedMorrey:
    case ExperimentTag::MaximalWeightedMorrey: {
      const auto& pr = *c.profile;
      Weight wq = c.weight.pow(pr.q);
      double e = 1 / *pr.s - 1 / pr.q;
      r.lhs_bounds = s.tag == ExperimentTag::RieszWeightedMorrey
                         ? detail::morrey_of(riesz, opt, span, pr.q, e, wq, wq)
                         : detail::morrey_of(maximal, opt, span, pr.q, e, wq, wq);
      double v = weighted_morrey_norm(x, pr.p, pr.q, c.weight.pow(pr.p), wq).value;
      r.rhs_bounds = {v, v};
      break;
    }
    case ExperimentTag::GoodLambda: {
      r.lhs_bounds = power_sum(riesz(opt), c.q, c.weight);
      r.rhs_bounds = power_sum(maximal(opt), c.q, c.weight);
      break;
    }
    case ExperimentTag::GoodSet:
    case ExperimentTag::MembershipScan: throw DomainError("tag has its own driver");
  }
  r.lhs = r.lhs_bounds.mid();
  r.rhs = r.rhs_bounds.mid();
  r.ratio = r.rhs > 0 ? r.lhs / r.rhs : 0.0;
  return r;
}

namespace detail {

inline void finish_report(EmpiricalConstantReport& rep, std::span<const Index> caps) {
  rep.sup_ratio = 0;
  for (const auto& c : rep.cases) rep.sup_ratio = std::max(rep.sup_ratio, c.ratio);
  rep.trend.clear();
  double running = 0;
  for (Index cap : caps) {
    for (const auto& c : rep.cases) {
      if (c.size <= cap) running = std::max(running, c.ratio);
    }
    rep.trend.push_back({cap, running});
  }
  std::vector<double> sups;
  for (const auto& t : rep.trend) sups.push_back(t.running_sup);
  rep.growth = final_growth(sups);
  rep.verdict = sups.size() < 2 ? Verdict::Inconclusive : classify_growth(rep.growth);
}

inline void check_caps(std::span<const Index> caps) {
  if (caps.empty()) throw DomainError("experiment needs at least one cap");
  for (std::size_t i = 0; i < caps.size(); ++i) {
    if (caps[i] < 1) throw DomainError("caps must be positive");
    if (i > 0 && caps[i] <= caps[i - 1]) throw DomainError("caps must be increasing");
  }
}

}  // namespace detail

struct GoodSetCase {
  SymmetricInterval window{0, 0};
  double a = 0;
  double b = 6;
  double c = 1;
  Index good_count = 0;
  double ratio = 0;
  bool vacuous = false;
};

/// Counts E = {k in S : I x(k) > a b, M x(k) <= a c} and returns |E| / (|S| (c/b)^{1/(1-alpha)}).
/// x must be nonnegative. The case is vacuous when I x > a on all of S.
inline GoodSetCase good_set_case(const FiniteSequence& x, double alpha, const SymmetricInterval& window, double a,
                                 double b, double c) {
  if (!x.is_nonnegative()) throw DomainError("good-set experiment needs a nonnegative input");
  if (!(b >= 6)) throw DomainError("good-set experiment needs b>=6");
  if (!(a > 0) || !(c > 0)) throw DomainError("good-set experiment needs a>0 and c>0");
  GoodSetCase out;
  out.window = window;
  out.a = a;
  out.b = b;
  out.c = c;
  EvalWindow w(window.center - window.radius, window.center + window.radius);
  std::vector<double> ix = riesz_fast_values(x, alpha, w);
  std::vector<double> mx = fractional_maximal_values(x, alpha, w);
  out.vacuous = std::none_of(ix.begin(), ix.end(), [a](double v) { return v <= a; });
  if (out.vacuous) return out;
  for (std::size_t i = 0; i < ix.size(); ++i) {
    if (ix[i] > a * b && mx[i] <= a * c) ++out.good_count;
  }
  double scale = static_cast<double>(window.cardinality()) * std::pow(c / b, 1 / (1 - alpha));
  out.ratio = static_cast<double>(out.good_count) / scale;
  return out;
}

namespace detail {

inline void good_set_cases(const ExperimentSetup& s, const FiniteSequence& x, const std::string& base,
                           std::vector<CaseResult>& cases, std::vector<SkippedCase>& skipped) {
  Index n = x.size();
  Index lo = x.min_support();
  Index center = lo + n / 2;
  std::array<SymmetricInterval, 2> windows{SymmetricInterval(center, std::max<Index>(1, n / 4)),
                                           SymmetricInterval(lo + std::max<Index>(1, n / 8), std::max<Index>(1, n / 8))};
  for (std::size_t wi = 0; wi < windows.size(); ++wi) {
    const auto& S = windows[wi];
    std::vector<double> ix = riesz_fast_values(x, s.alpha, EvalWindow(S.center - S.radius, S.center + S.radius));
    double a = *std::min_element(ix.begin(), ix.end());
    for (double b : {6.0, 12.0, 24.0}) {
      for (double c : {1.0, b / 4, b / 2}) {
        std::string id = base + "/S" + std::to_string(wi) + "/b=" + number(b) + "/c=" + number(c);
        if (!(a > 0)) {
          skipped.push_back({id, "vacuous: I x vanishes somewhere on S"});
          continue;
        }
        GoodSetCase g = good_set_case(x, s.alpha, S, a, b, c);
        if (g.vacuous) {
          skipped.push_back({id, "vacuous"});
          continue;
        }
        CaseResult r;
        r.id = id;
        r.size = n;
        r.lhs = static_cast<double>(g.good_count);
        r.rhs = static_cast<double>(S.cardinality()) * std::pow(c / b, 1 / (1 - s.alpha));
        r.lhs_bounds = {r.lhs, r.lhs};
        r.rhs_bounds = {r.rhs, r.rhs};
        r.ratio = g.ratio;
        cases.push_back(r);
      }
    }
  }
}

}  // namespace detail

/// Runs every (cap, family) case of a tag and aggregates the per-case ratios.
inline EmpiricalConstantReport run_experiment(const ExperimentSetup& s) {
  if (s.tag == ExperimentTag::MembershipScan) throw DomainError("membership scan has its own driver");
  CheckedSetup checked = check_hypotheses(s);
  detail::check_caps(s.caps);
  if (s.families.empty()) throw DomainError("experiment needs at least one family");
  struct Job {
    Index cap;
    std::size_t family;
  };
  std::vector<Job> jobs;
  for (Index cap : s.caps) {
    for (std::size_t f = 0; f < s.families.size(); ++f) jobs.push_back({cap, f});
  }
  std::vector<std::vector<CaseResult>> results(jobs.size());
  std::vector<std::vector<SkippedCase>> skips(jobs.size());
  parallel_for(jobs.size(), resolve_threads(s.threads), [&](std::size_t i) {
    const auto& job = jobs[i];
    const auto& fam = s.families[job.family];
    std::string id = detail::case_id(fam, job.cap);
    FiniteSequence x = detail::centered_input(fam, job.cap);
    if (s.tag == ExperimentTag::GoodSet) {
      if (x.empty()) {
        skips[i].push_back({id, "zero input"});
        return;
      }
      detail::good_set_cases(s, x.abs(), id, results[i], skips[i]);
      return;
    }
    auto r = evaluate_case(s, checked, x);
    if (!r) {
      skips[i].push_back({id, "zero input"});
      return;
    }
    r->id = id;
    r->size = job.cap;
    if (r->ratio > 0) {
      results[i].push_back(*r);
    } else {
      skips[i].push_back({id, "zero ratio"});
    }
  });
  EmpiricalConstantReport rep;
  rep.tag = std::string(tag_name(s.tag));
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    for (auto& r : results[i]) {
      if (s.tag == ExperimentTag::GoodSet && r.ratio == 0) {
        rep.skipped.push_back({r.id, "empty good set"});
      } else {
        rep.cases.push_back(std::move(r));
      }
    }
    for (auto& k : skips[i]) rep.skipped.push_back(std::move(k));
  }
  detail::finish_report(rep, s.caps);
  return rep;
}

/// Membership verdicts for one power exponent under the three equivalent formulations.
struct MembershipRow {
  double beta = 0;
  /// apq(w), Ap(w^q, 1 + q/p'), Ap(w^{-p'}, 1 + p'/q).
  std::array<GrowthProfile, 3> profiles;
  std::array<Verdict, 3> raw;
  /// Verdicts of the constants taken to the powers 1, 1/q, 1/p', which put all three on the
  /// same scale as the A(p,q) constant.
  std::array<Verdict, 3> normalized;
  bool agree = false;
  Verdict expected = Verdict::Inconclusive;
  bool in_guard_band = false;
};

inline constexpr double kGuardBand = 0.1;

struct MembershipScanReport {
  double alpha = 0;
  double p = 0;
  double q = 0;
  std::vector<MembershipRow> rows;
};

inline MembershipScanReport membership_scan(double alpha, double p, std::span<const double> betas,
                                            std::span<const Index> caps, unsigned threads = 1) {
  ExponentProfile pr = make_profile(ProfileKind::SobolevScale, alpha, p);
  detail::check_caps(caps);
  MembershipScanReport rep;
  rep.alpha = alpha;
  rep.p = p;
  rep.q = pr.q;
  double pc = pr.p_conjugate, q = pr.q;
  double lo = -1 / q, hi = 1 / pc;
  rep.rows.resize(betas.size());
  struct Job {
    std::size_t row;
    int which;
  };
  std::vector<Job> jobs;
  for (std::size_t i = 0; i < betas.size(); ++i) {
    for (int k = 0; k < 3; ++k) jobs.push_back({i, k});
  }
  parallel_for(jobs.size(), resolve_threads(threads), [&](std::size_t j) {
    const auto& job = jobs[j];
    Weight w = Weight::power(betas[job.row]);
    GrowthProfile g;
    switch (job.which) {
      case 0: g = constant_growth_profile(w, MuckenhouptSpec{p, q}, caps); break;
      case 1: g = constant_growth_profile(w.pow(q), MuckenhouptSpec{1 + q / pc, std::nullopt}, caps); break;
      default: g = constant_growth_profile(w.pow(-pc), MuckenhouptSpec{1 + pc / q, std::nullopt}, caps); break;
    }
    rep.rows[job.row].profiles[static_cast<std::size_t>(job.which)] = std::move(g);
  });
  const std::array<double, 3> degree{1.0, q, pc};
  for (std::size_t i = 0; i < betas.size(); ++i) {
    auto& row = rep.rows[i];
    row.beta = betas[i];
    for (std::size_t k = 0; k < 3; ++k) {
      row.raw[k] = row.profiles[k].verdict;
      std::vector<double> scaled;
      for (const auto& e : row.profiles[k].entries) scaled.push_back(std::pow(e.value, 1 / degree[k]));
      row.normalized[k] = classify_growth(final_growth(scaled));
    }
    row.agree = row.normalized[0] == row.normalized[1] && row.normalized[1] == row.normalized[2];
    bool inside = row.beta > lo && row.beta < hi;
    row.expected = inside ? Verdict::Bounded : Verdict::Growing;
    double dist = std::min(std::fabs(row.beta - lo), std::fabs(row.beta - hi));
    row.in_guard_band = dist < kGuardBand - 1e-12;
  }
  return rep;
}

}  // namespace driesz::verify

#endif
