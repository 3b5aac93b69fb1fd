#include <gtest/gtest.h>

#include <cmath>

#include "driesz/operators.hpp"
#include "driesz/rng.hpp"
#include "oracles.hpp"

using namespace driesz;

namespace {

FiniteSequence random_sequence(std::uint64_t seed, Index n, bool signed_values, Index offset = 0) {
  CounterRng g = CounterRng(seed).split(static_cast<std::uint64_t>(n));
  std::vector<double> v(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < v.size(); ++i) {
    double u = g.uniform_at(i);
    v[i] = signed_values ? 2 * u - 1 : u;
  }
  return FiniteSequence(offset, std::move(v));
}

}  // namespace

TEST(Maximal, DeltaValues) {
  auto d = FiniteSequence::delta(0);
  auto v = fractional_maximal_values(d, 0.5, EvalWindow(0, 2));
  EXPECT_DOUBLE_EQ(v[0], 1);
  EXPECT_NEAR(v[2], 1 / std::sqrt(5.0), 1e-15);
  FiniteSequence ones(-1, {1, 1, 1});
  EXPECT_DOUBLE_EQ(fractional_maximal_values(ones, 0, EvalWindow(0, 0))[0], 1);
}

TEST(Maximal, MatchesExhaustiveScan) {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    auto x = random_sequence(seed, 40, true, -7);
    for (double alpha : {0.0, 0.2, 0.5, 0.9}) {
      EvalWindow w(-60, 60);
      auto got = fractional_maximal_values(x, alpha, w);
      for (Index m = w.lo; m <= w.hi; ++m) {
        double want = oracle::maximal(x, alpha, m, oracle::maximal_reach(x, m));
        EXPECT_NEAR(got[static_cast<std::size_t>(m - w.lo)], want, 1e-13 * want) << m;
      }
    }
  }
}

TEST(Maximal, SparseSupportMatchesScan) {
  auto x = FiniteSequence::from_pairs({{-50, 2.0}, {-3, 0.5}, {0, -1.0}, {71, 4.0}});
  EvalWindow w(-120, 140);
  auto got = fractional_maximal_values(x, 0.3, w, 2);
  for (Index m = w.lo; m <= w.hi; ++m) {
    double want = oracle::maximal(x, 0.3, m, oracle::maximal_reach(x, m));
    EXPECT_NEAR(got[static_cast<std::size_t>(m - w.lo)], want, 1e-13 * want);
  }
}

TEST(Maximal, ZeroInputGivesZero) {
  auto v = fractional_maximal_values(FiniteSequence(), 0.5, EvalWindow(-3, 3));
  for (double x : v) EXPECT_EQ(x, 0);
}

TEST(Riesz, DeltaKernelReadback) {
  auto d = FiniteSequence::delta(0);
  EvalWindow w(-20, 20);
  for (double alpha : {0.1, 0.5, 0.75}) {
    auto naive = riesz_naive_values(d, alpha, w);
    auto fast = riesz_fast_values(d, alpha, w);
    for (Index k = w.lo; k <= w.hi; ++k) {
      double want = k == 0 ? 0.0 : std::pow(static_cast<double>(std::abs(k)), alpha - 1);
      std::size_t i = static_cast<std::size_t>(k - w.lo);
      EXPECT_DOUBLE_EQ(naive[i], want);
      if (k == 0) {
        EXPECT_NEAR(fast[i], 0, 1e-14);
      } else {
        EXPECT_NEAR(fast[i], want, 1e-10 * want);
      }
    }
  }
}

TEST(Riesz, TwoPointExamples) {
  FiniteSequence x(0, {1, 1});
  EXPECT_NEAR(riesz_at(x, 0.5, 2), 1 / std::sqrt(2.0) + 1, 1e-15);
  EXPECT_DOUBLE_EQ(riesz_at(x, 0.5, 0), 1);
}

TEST(Riesz, NaiveMatchesLongDoubleOracle) {
  auto x = random_sequence(9, 300, true, -100);
  EvalWindow w(-500, 400);
  auto got = riesz_naive_values(x, 0.3, w, 3);
  for (Index k = w.lo; k <= w.hi; k += 7) {
    double want = oracle::riesz(x, 0.3, k);
    double scale = oracle::riesz(x.abs(), 0.3, k);
    EXPECT_NEAR(got[static_cast<std::size_t>(k - w.lo)], want, 1e-13 * scale);
  }
}

TEST(Riesz, FastMatchesNaiveOnRandomInput) {
  auto x = random_sequence(21, 4096, false);
  EvalWindow w(0, 4095);
  auto naive = riesz_naive_values(x, 0.3, w);
  auto fast = riesz_fast_values(x, 0.3, w);
  double worst = 0;
  for (std::size_t i = 0; i < naive.size(); ++i) worst = std::max(worst, std::fabs(fast[i] - naive[i]) / naive[i]);
  EXPECT_LE(worst, 1e-10);
}

TEST(Riesz, FastHandlesWindowsAwayFromSupport) {
  auto x = random_sequence(4, 50, true, 1000);
  for (auto w : {EvalWindow(-300, -200), EvalWindow(990, 1060), EvalWindow(2000, 2003), EvalWindow(1020, 1020)}) {
    auto naive = riesz_naive_values(x, 0.6, w);
    auto fast = riesz_fast_values(x, 0.6, w);
    auto absn = riesz_naive_values(x.abs(), 0.6, w);
    for (std::size_t i = 0; i < naive.size(); ++i) EXPECT_NEAR(fast[i], naive[i], 1e-10 * absn[i]);
  }
}

TEST(Riesz, ZeroInputGivesExactZero) {
  auto v = riesz_fast_values(FiniteSequence(), 0.4, EvalWindow(-5, 5));
  for (double x : v) EXPECT_EQ(x, 0.0);
}

TEST(Riesz, CapacityErrorAboveBudget) {
  FftOptions small;
  small.memory_budget = 1 << 16;
  auto x = random_sequence(1, 10000, false);
  EXPECT_THROW(riesz_fast_values(x, 0.5, EvalWindow(0, 9999), small), CapacityError);
}

TEST(RieszSymmetric, Examples) {
  double a = 0.37;
  EXPECT_NEAR(riesz_symmetric(FiniteSequence::delta(0), a, 3), std::pow(3.0, a - 1), 1e-15);
  FiniteSequence pair = FiniteSequence::from_pairs({{-2, 1.0}, {2, 1.0}});
  EXPECT_NEAR(riesz_symmetric(pair, 0.5, 0), std::sqrt(2.0), 1e-15);
  EXPECT_EQ(riesz_symmetric(FiniteSequence(), 0.5, 0), 0);
}

TEST(RieszDifference, Examples) {
  double a = 0.4;
  double d = riesz_difference(FiniteSequence::delta(0), a, 5);
  EXPECT_NEAR(d, std::pow(6.0, a - 1) - std::pow(5.0, a - 1), 1e-15);
  EXPECT_LT(d, 0);
  FiniteSequence pair = FiniteSequence::from_pairs({{-2, 1.0}, {2, 1.0}});
  double want = (1 / std::sqrt(3.0) + 1) - std::sqrt(2.0);
  EXPECT_NEAR(riesz_difference(pair, 0.5, 0), want, 1e-14);
  EXPECT_NEAR(want, 0.163137, 1e-6);
  EXPECT_EQ(riesz_difference(FiniteSequence(), 0.5, 0), 0);
}

TEST(RieszSeries, AgreeWithNaive) {
  auto x = random_sequence(33, 200, true, -50);
  for (double alpha : {0.2, 0.5, 0.8}) {
    for (Index k = -120; k <= 220; k += 3) {
      double naive = oracle::riesz(x, alpha, k);
      double scale = oracle::riesz(x.abs(), alpha, k);
      EXPECT_NEAR(riesz_symmetric(x, alpha, k), naive, 1e-12 * scale);
      double diff = oracle::riesz(x, alpha, k + 1) - naive;
      double dscale = scale + oracle::riesz(x.abs(), alpha, k + 1);
      EXPECT_NEAR(riesz_difference(x, alpha, k), diff, 1e-12 * dscale);
    }
  }
}

TEST(Operators, LinearityAndSublinearity) {
  auto x = random_sequence(5, 64, true, -10), y = random_sequence(6, 80, true, 5);
  std::vector<std::pair<Index, double>> sum;
  for (Index k = -10; k <= 84; ++k) sum.emplace_back(k, 2 * x(k) - 3 * y(k));
  auto z = FiniteSequence::from_pairs(sum);
  EvalWindow w(-40, 120);
  auto iz = riesz_naive_values(z, 0.4, w), ix = riesz_naive_values(x, 0.4, w), iy = riesz_naive_values(y, 0.4, w);
  auto ax = riesz_naive_values(x.abs(), 0.4, w), ay = riesz_naive_values(y.abs(), 0.4, w);
  for (std::size_t i = 0; i < iz.size(); ++i) EXPECT_NEAR(iz[i], 2 * ix[i] - 3 * iy[i], 1e-12 * (2 * ax[i] + 3 * ay[i]));
  std::vector<std::pair<Index, double>> plain;
  for (Index k = -10; k <= 84; ++k) plain.emplace_back(k, x(k) + y(k));
  auto s = FiniteSequence::from_pairs(plain);
  auto ms = fractional_maximal_values(s, 0.4, w), mx = fractional_maximal_values(x, 0.4, w),
       my = fractional_maximal_values(y, 0.4, w);
  for (std::size_t i = 0; i < ms.size(); ++i) EXPECT_LE(ms[i], (mx[i] + my[i]) * (1 + 1e-12));
}

TEST(Operators, MonotoneInNonnegativeInput) {
  auto x = random_sequence(8, 100, false);
  std::vector<double> bigger(x.values().begin(), x.values().end());
  for (auto& v : bigger) v += 0.25;
  FiniteSequence y(0, bigger);
  EvalWindow w(-50, 150);
  auto ix = riesz_fast_values(x, 0.5, w), iy = riesz_fast_values(y, 0.5, w);
  auto mx = fractional_maximal_values(x, 0.5, w), my = fractional_maximal_values(y, 0.5, w);
  for (std::size_t i = 0; i < ix.size(); ++i) {
    EXPECT_LE(ix[i], iy[i] * (1 + 1e-12));
    EXPECT_LE(mx[i], my[i] * (1 + 1e-12));
  }
}

TEST(Operators, MaximalExceedsPotentialAtIsolatedMass) {
  // The potential drops the self term, so at an isolated point mass the maximal value
  // (window of radius 0) is strictly larger.
  auto d = FiniteSequence::delta(0);
  double m = fractional_maximal_values(d, 0.5, EvalWindow(0, 0))[0];
  double i = riesz_naive_values(d, 0.5, EvalWindow(0, 0))[0];
  EXPECT_EQ(m, 1);
  EXPECT_EQ(i, 0);
  // adding the self term back restores the comparison
  EXPECT_LE(m, i + std::fabs(d(0)));
}

TEST(UniformBound, DeltaExample) {
  auto u = uniform_bound(FiniteSequence::delta(0), 0.5, 1);
  EXPECT_DOUBLE_EQ(u.sup_value, 1);
  EXPECT_NEAR(u.bound, 4 / (1 - std::pow(2.0, -0.5)), 1e-12);
  EXPECT_NEAR(u.bound, 13.657, 1e-3);
  auto z = uniform_bound(FiniteSequence(), 0.5, 1);
  EXPECT_EQ(z.sup_value, 0);
  EXPECT_EQ(z.bound, 0);
  EXPECT_THROW(uniform_bound(FiniteSequence::delta(0), 0.5, 2), DomainError);
}

TEST(UniformBound, RandomInputSatisfiesBound) {
  auto x = random_sequence(77, 500, true);
  auto u = uniform_bound(x, 0.3, 2);
  EXPECT_LE(u.sup_value, u.bound);
  double direct = 0;
  for (Index k = -10; k <= 510; ++k) direct = std::max(direct, oracle::riesz(x.abs(), 0.3, k));
  EXPECT_NEAR(u.sup_value, direct, 1e-12 * direct);
}
