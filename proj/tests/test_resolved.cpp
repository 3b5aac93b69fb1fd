#include <gtest/gtest.h>

#include <cmath>

#include "driesz/verify/resolved.hpp"
#include "oracles.hpp"

using namespace driesz;
using namespace driesz::verify;

namespace {

bool contains(const Enclosure& e, long double v, double slack = 1e-12) {
  return e.lo <= v * (1 + slack) && v <= e.hi * (1 + slack);
}

}  // namespace

TEST(Resolved, DeltaPotentialPowerSumEnclosesZeta) {
  // sum_{k != 0} |k|^{(alpha-1) r} = 2 zeta((1-alpha) r)
  for (auto [alpha, r] : {std::pair{0.25, 4.0}, {0.5, 3.0}, {0.2, 2.0}}) {
    auto f = resolve_riesz(FiniteSequence::delta(0), alpha);
    Enclosure e = power_sum(f, r, Weight::constant(1));
    long double want = 2 * oracle::zeta((1 - alpha) * r);
    EXPECT_TRUE(contains(e, want)) << e.lo << " " << e.hi << " " << static_cast<double>(want);
    EXPECT_LT(e.width() / e.lo, 1e-3);
    EXPECT_NEAR(e.mid(), static_cast<double>(want), 1e-6 * e.mid());
  }
}

TEST(Resolved, DivergentSumHasInfiniteUpperBound) {
  auto f = resolve_riesz(FiniteSequence::delta(0), 0.5);
  Enclosure e = power_sum(f, 2, Weight::constant(1));
  EXPECT_TRUE(std::isinf(e.hi));
}

TEST(Resolved, MaximalPowerSumEnclosesDirectSum) {
  FiniteSequence x(-3, {1, 0.5, 0, 2});
  double alpha = 0.3, r = 3, beta = 0.4;
  auto f = resolve_maximal(x, alpha);
  Weight w = Weight::power(beta);
  Enclosure e = power_sum(f, r, w);
  // exact scan near the support, the saturated window far from it (checked below), and an
  // upper bound for |k| > K
  long double s = 0, mass = 3.5;
  const Index K = 200000;
  for (Index k = -K; k <= K; ++k) {
    long double v;
    if (std::abs(k) < 40) {
      v = oracle::maximal(x, alpha, k, oracle::maximal_reach(x, k));
    } else {
      Index n = k > 0 ? k + 3 : -k;
      v = mass * std::pow(2.0L * n + 1, alpha - 1.0L);
    }
    s += std::pow(v, static_cast<long double>(r)) * w(k);
  }
  long double gamma = r * (1 - alpha) - beta;
  long double tail = 2 * std::pow(mass, static_cast<long double>(r)) * std::pow(2.0L, r * (alpha - 1)) *
                     std::pow(static_cast<long double>(K), 1 - gamma) / (gamma - 1);
  EXPECT_LE(e.lo, (s + tail) * (1 + 1e-12));
  EXPECT_GE(e.hi, s * (1 - 1e-12));
  EXPECT_LT(e.width() / e.lo, 1e-2);
}

TEST(Resolved, FarFieldMaximalMatchesSaturatedWindow) {
  FiniteSequence x(-3, {1, 0.5, 0, 2});
  for (Index k : {40, 100, -57}) {
    double want = oracle::maximal(x, 0.3, k, oracle::maximal_reach(x, k));
    Index n = k > 0 ? k + 3 : -k;
    EXPECT_NEAR(want, 3.5 * std::pow(2.0 * n + 1, -0.7), 1e-12 * want);
  }
}

TEST(Resolved, BlocksBracketExactValues) {
  FiniteSequence x(0, {1, -2, 0.5, 3, -1});
  double alpha = 0.4;
  auto f = resolve_riesz(x, alpha);
  for (const auto* side : {&f.right, &f.left}) {
    for (std::size_t i = 0; i < side->size() && i < 200; i += 7) {
      const auto& b = (*side)[i];
      for (Index k : {b.first, b.last, b.first + (b.last - b.first) / 2}) {
        double v = std::fabs(oracle::riesz(x, alpha, k));
        EXPECT_LE(b.f_lo, v * (1 + 1e-12) + 1e-300);
        EXPECT_LE(v, b.f_hi * (1 + 1e-12));
      }
    }
  }
}

TEST(Resolved, WeakNormEnclosesLevelScan) {
  auto x = FiniteSequence::delta(0);
  double alpha = 0.5, r = 1 / (1 - alpha);
  auto f = resolve_maximal(x, alpha);
  Enclosure e = weak_norm(f, r, Weight::constant(1));
  // M delta(k) = (2|k|+1)^{-1/2}; level set {M >= v} has 2K+1 points with (2K+1) = v^{-2}
  // so v * |{M >= v}|^{1/2} = 1 at every level
  EXPECT_TRUE(contains(e, 1.0L, 1e-9)) << e.lo << " " << e.hi;
}

TEST(Resolved, MorreySupDominatesFiniteWindowScan) {
  FiniteSequence x(0, {1, 2, 3});
  double alpha = 0.5, r = 3, e = 1.0 / 4 - 1.0 / 3;
  auto f = resolve_maximal(x, alpha);
  auto m = morrey_sup(f, r, e, std::nullopt, Weight::constant(1));
  EXPECT_TRUE(m.certified);
  // the same supremum restricted to windows inside [-30, 32], from exact values
  std::vector<std::pair<Index, double>> vals;
  for (Index k = -30; k <= 32; ++k) vals.emplace_back(k, oracle::maximal(x, alpha, k, oracle::maximal_reach(x, k)));
  auto mx = FiniteSequence::from_pairs(vals);
  double inner = oracle::morrey(mx, r, 1 / (e + 1 / r), -20, 22, 10);
  EXPECT_GE(m.value.lo, inner * (1 - 1e-12));
  EXPECT_LE(m.value.hi, m.value.lo * (1 + 1e-9));
}

TEST(Resolved, SeriesTailMatchesDirectSum) {
  std::vector<double> v(500);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = 1 + std::sin(0.37 * static_cast<double>(i));
  FiniteSequence x(-120, v);
  for (double alpha : {0.2, 0.5, 0.9}) {
    auto f = resolve_riesz(x, alpha);
    for (const auto* side : {&f.right, &f.left}) {
      for (std::size_t i = 0; i < side->size(); i += 97) {
        const auto& b = (*side)[i];
        if (std::abs(b.first) > 1000000) break;
        double want = oracle::riesz(x, alpha, b.first);
        double got = side == &f.right ? b.f_hi : b.f_lo;  // the value at b.first
        EXPECT_NEAR(got, want, 1e-12 * want) << alpha << " " << b.first;
      }
    }
  }
}

TEST(Resolved, MorreyCertifiesWhenFirstTailBlockIsWide) {
  // far from the origin the tail blocks hold dozens of points; a window reaching a few of
  // them must only be charged for those
  FiniteSequence x(0, std::vector<double>(4096, 1.0));
  double alpha = 0.4, p = 1.2, q = 1 / (1 / p - alpha), s = q * p / (2 * p - q);
  auto f = resolve_maximal(x, alpha);
  ASSERT_GT(f.right.front().last - f.right.front().first, 8);
  auto m = morrey_sup(f, q, 1 / s - 1 / q, Weight::constant(1), Weight::constant(1));
  EXPECT_TRUE(m.certified);
  EXPECT_EQ(m.value.lo, m.value.hi);
}
