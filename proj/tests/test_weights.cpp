#include <gtest/gtest.h>

#include <cmath>

#include "driesz/weights.hpp"
#include "oracles.hpp"

using namespace driesz;

TEST(Weight, PowerIsRegularizedAtOrigin) {
  Weight w = Weight::power(1);
  EXPECT_EQ(w(0), 1);
  EXPECT_EQ(w(-3), 3);
  EXPECT_EQ(w(5), 5);
  EXPECT_EQ(Weight::power(-0.5)(0), 1);
}

TEST(Weight, TableNeedsPositiveOutsideValue) {
  EXPECT_THROW(Weight::table(0, {1, 2}, 0), DomainError);
  EXPECT_THROW(Weight::table(0, {1, -2}, 1), DomainError);
  Weight w = Weight::table(-1, {2, 3, 4}, 0.5);
  EXPECT_EQ(w(-1), 2);
  EXPECT_EQ(w(1), 4);
  EXPECT_EQ(w(2), 0.5);
  EXPECT_EQ(w(-50), 0.5);
  EXPECT_EQ(w.regular_radius(), 2);
}

TEST(Weight, ReflectedMirrorsNaturals) {
  Weight w = Weight::reflected({5, 6, 7}, 1);
  EXPECT_EQ(w(0), 5);
  EXPECT_EQ(w(2), 7);
  EXPECT_EQ(w(-2), 7);
  EXPECT_EQ(w(-1), w(1));
  EXPECT_EQ(w(3), 1);
}

TEST(Weight, PowAndScale) {
  Weight w = Weight::power(0.5, 2).pow(2);
  EXPECT_DOUBLE_EQ(w(9), 4 * 9);
  EXPECT_DOUBLE_EQ(Weight::constant(3).scaled(2)(100), 6);
}

TEST(Ratios, ConstantWeightsGiveOne) {
  for (double c : {1.0, 7.0, 0.01}) {
    Weight w = Weight::constant(c);
    IntervalRun j(-3, 3);
    EXPECT_NEAR(a1_ratio(w, j), 1, 1e-12);
    EXPECT_NEAR(ap_ratio(w, j, 2), 1, 1e-12);
    EXPECT_NEAR(ap_ratio(w, j, 3.5), 1, 1e-12);
    EXPECT_NEAR(apq_ratio(w, j, 2, 4), 1, 1e-12);
  }
}

TEST(Ratios, PowerOneOnTwoPoints) {
  Weight w = Weight::power(1);
  IntervalRun j(1, 2);
  EXPECT_NEAR(a1_ratio(w, j), 1.5, 1e-15);
  // avg w = 3/2, avg w^{-1} = 3/4
  EXPECT_NEAR(ap_ratio(w, j, 2), 1.125, 1e-15);
}

TEST(Ratios, ApqPowerOnTwoPoints) {
  Weight w = Weight::power(0.1);
  double want = std::pow((1 + std::pow(2.0, 0.4)) / 2, 0.25) * std::pow((1 + std::pow(2.0, -0.2)) / 2, 0.5);
  EXPECT_NEAR(apq_ratio(w, IntervalRun(1, 2), 2, 4), want, 1e-14);
  EXPECT_NEAR(want, 1.0036, 5e-5);
}

TEST(Ratios, ScaleInvarianceAndOrdering) {
  for (double beta : {-0.7, 0.3, 1.4}) {
    Weight w = Weight::power(beta);
    Weight cw = w.scaled(13.5);
    for (Index a = -6; a <= 6; ++a) {
      for (Index b = a; b <= 8; ++b) {
        IntervalRun j(a, b);
        EXPECT_NEAR(ap_ratio(cw, j, 2.5), ap_ratio(w, j, 2.5), 1e-12 * ap_ratio(w, j, 2.5));
        EXPECT_NEAR(apq_ratio(cw, j, 2, 4), apq_ratio(w, j, 2, 4), 1e-12 * apq_ratio(w, j, 2, 4));
        double a1 = a1_ratio(w, j), ap2 = ap_ratio(w, j, 2), ap3 = ap_ratio(w, j, 3);
        EXPECT_GE(a1 * (1 + 1e-12), ap3);
        EXPECT_GE(ap2 * (1 + 1e-12), ap3);
        EXPECT_GE(ap3, 1 - 1e-12);
        EXPECT_NEAR(ap2, oracle::ap_ratio(w, a, b, 2), 1e-12 * ap2);
      }
    }
  }
}

TEST(Constants, ApConstantMatchesExhaustiveOracle) {
  Weight w = Weight::power(1);
  IntervalFamily fam(-8, 8, 5);
  ConstantEstimate c = ap_constant(w, fam, 2);
  double want = 0;
  for (Index a = -8; a <= 8; ++a) {
    for (Index b = a; b <= std::min<Index>(8, a + 4); ++b) want = std::max(want, oracle::ap_ratio(w, a, b, 2));
  }
  EXPECT_NEAR(c.value, want, 1e-12 * want);
  EXPECT_GE(c.value, 1.125);
  EXPECT_NEAR(ap_ratio(w, c.witness, 2), c.value, 1e-12 * c.value);
}

TEST(Constants, ConstantsMatchOracleAcrossKinds) {
  IntervalFamily fam = IntervalFamily::window(12);
  for (double beta : {-0.6, 0.0, 0.5, 1.5}) {
    Weight w = Weight::power(beta);
    double a1 = oracle::constant_over_runs(12, [&](Index a, Index b) { return oracle::a1_ratio(w, a, b); });
    double ap = oracle::constant_over_runs(12, [&](Index a, Index b) { return oracle::ap_ratio(w, a, b, 2.5); });
    double apq = oracle::constant_over_runs(12, [&](Index a, Index b) { return oracle::apq_ratio(w, a, b, 2, 4); });
    EXPECT_NEAR(ap_constant(w, fam, 1).value, a1, 1e-12 * a1);
    EXPECT_NEAR(ap_constant(w, fam, 2.5).value, ap, 1e-12 * ap);
    EXPECT_NEAR(apq_constant(w, fam, 2, 4).value, apq, 1e-12 * apq);
  }
}

TEST(Constants, MonotoneInP) {
  Weight w = Weight::power(0.5);
  IntervalFamily fam(-8, 8, 5);
  EXPECT_LE(ap_constant(w, fam, 3).value, ap_constant(w, fam, 2).value);
}

TEST(Duality, ExtremizerAttainsApRatioRoot) {
  Weight w = Weight::power(0.8);
  for (double p : {1.5, 2.0, 3.0}) {
    IntervalRun j(-3, 9);
    auto x = duality_extremizer(w, j, p);
    double want = std::pow(ap_ratio(w, j, p), 1 / p);
    EXPECT_NEAR(duality_ratio(w, j, p, x), want, 1e-12 * want);
    CounterRng g(11);
    for (int t = 0; t < 50; ++t) {
      std::vector<double> y(x.size());
      for (auto& v : y) v = g.uniform() * 2 - 1;
      EXPECT_LE(duality_ratio(w, j, p, y), want * (1 + 1e-12));
    }
  }
}

TEST(Doubling, CountingRatios) {
  Weight one = Weight::constant(1);
  std::vector<SymmetricInterval> fam{SymmetricInterval(0, 2), SymmetricInterval(0, 0)};
  auto d = doubling_ratios(one, fam, 2);
  EXPECT_NEAR(d[0].ratio, 1.8, 1e-15);
  EXPECT_NEAR(d[1].ratio, 3, 1e-15);
}

TEST(Doubling, PowerWeightDoubling) {
  std::vector<SymmetricInterval> fam{SymmetricInterval(0, 1)};
  auto d = doubling_ratios(Weight::power(1), fam, 2);
  // {-2..2} carries 2+1+1+1+2, {-1,0,1} carries 1+1+1
  EXPECT_NEAR(d[0].ratio, 7.0 / 3, 1e-15);
}

TEST(ReverseDoubling, CountingMinimumAtRadiusOne) {
  auto fam = centered_family(0, 1, 100);
  auto r = reverse_doubling_constant(Weight::constant(1), fam);
  // (4N+1)/(2N+1) increases in N, so the minimum is 5/3 at N = 1
  EXPECT_NEAR(r.value, 5.0 / 3, 1e-15);
  EXPECT_EQ(r.witness, SymmetricInterval(0, 1));
  auto with_zero = centered_family(0, 0, 100);
  EXPECT_NEAR(reverse_doubling_constant(Weight::constant(1), with_zero).value, 5.0 / 3, 1e-15);
  EXPECT_NEAR(reverse_doubling_constant(Weight::constant(4.2), with_zero).value, 5.0 / 3, 1e-15);
  auto d = doubling_ratios(Weight::constant(1), fam, 2);
  EXPECT_NEAR(d.back().ratio, 401.0 / 201, 1e-15);
}

TEST(AInfinity, CountingWeightDeltaIsEpsilon) {
  IntervalFamily fam(0, 7, 8);
  SubsetSampler s;
  s.seed = 5;
  auto rep = a_infinity_eps_delta(Weight::constant(1), fam, 0.5, s);
  EXPECT_DOUBLE_EQ(rep.delta_hat, 0.5);
  auto rep_c = a_infinity_eps_delta(Weight::constant(3), fam, 0.5, s);
  EXPECT_EQ(rep_c.delta_hat, rep.delta_hat);
  EXPECT_EQ(rep_c.violations, rep.violations);
  EXPECT_EQ(rep_c.records.size(), rep.records.size());
}

TEST(AInfinity, HeavyTailSubsetViolates) {
  Weight w = Weight::power(2);
  double frac = (49.0 + 64.0) / 204.0;
  EXPECT_NEAR(frac, 0.554, 1e-3);
  IntervalFamily fam(1, 8, 8);
  SubsetSampler s;
  auto rep = a_infinity_eps_delta(w, fam, 0.5, s);
  EXPECT_GT(rep.violations, 0u);
  EXPECT_LT(rep.delta_hat, 0.25);
}

TEST(AInfinity, ReportsSamplerExhaustion) {
  IntervalFamily fam(0, 1, 2);
  auto rep = a_infinity_eps_delta(Weight::constant(1), fam, 0.5, SubsetSampler{});
  EXPECT_FALSE(rep.exhausted.empty());
  EXPECT_THROW(a_infinity_eps_delta(Weight::constant(1), fam, 1.5, SubsetSampler{}), DomainError);
}

TEST(GrowthProfile, ConstantWeightIsFlat) {
  std::vector<Index> caps{8, 16, 32};
  auto g = constant_growth_profile(Weight::constant(2), MuckenhouptSpec{2, std::nullopt}, caps);
  for (const auto& e : g.entries) EXPECT_NEAR(e.value, 1, 1e-12);
  EXPECT_EQ(g.verdict, Verdict::Bounded);
}

TEST(GrowthProfile, StabilizesInsideAndGrowsOutside) {
  std::vector<Index> caps{64, 128, 256, 512, 1024, 2048, 4096};
  auto inside = constant_growth_profile(Weight::power(0.5), MuckenhouptSpec{2, std::nullopt}, caps);
  for (std::size_t i = 1; i < inside.entries.size(); ++i) {
    EXPECT_GE(inside.entries[i].value, inside.entries[i - 1].value * (1 - 1e-12));
  }
  EXPECT_EQ(inside.verdict, Verdict::Bounded);
  auto outside = constant_growth_profile(Weight::power(1.5), MuckenhouptSpec{2, std::nullopt}, caps);
  EXPECT_EQ(outside.verdict, Verdict::Growing);
}

TEST(GrowthProfile, RejectsUnorderedCaps) {
  std::vector<Index> caps{16, 8};
  EXPECT_THROW(constant_growth_profile(Weight::constant(1), MuckenhouptSpec{2, std::nullopt}, caps), DomainError);
}

TEST(Verdicts, Thresholds) {
  EXPECT_EQ(classify_growth(0.049), Verdict::Bounded);
  EXPECT_EQ(classify_growth(0.05), Verdict::Inconclusive);
  EXPECT_EQ(classify_growth(0.2), Verdict::Growing);
  EXPECT_EQ(classify_growth(NAN), Verdict::Inconclusive);
}
