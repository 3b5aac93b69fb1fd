#include <gtest/gtest.h>

#include <cmath>

#include "driesz/core.hpp"
#include "driesz/rng.hpp"
#include "driesz/summation.hpp"

using namespace driesz;

TEST(FiniteSequence, TrimsZerosAndEvaluatesOffSupportAsZero) {
  FiniteSequence x(-3, {0, 0, 2, 0, 5, 0});
  EXPECT_EQ(x.offset(), -1);
  EXPECT_EQ(x.size(), 3);
  EXPECT_EQ(x(-1), 2);
  EXPECT_EQ(x(0), 0);
  EXPECT_EQ(x(1), 5);
  EXPECT_EQ(x(-100), 0);
  EXPECT_EQ(x(1000), 0);
  EXPECT_TRUE(FiniteSequence(4, {0, 0}).empty());
  EXPECT_EQ(FiniteSequence(4, {0, 0}), FiniteSequence());
}

TEST(FiniteSequence, RejectsNonFiniteValues) {
  EXPECT_THROW(FiniteSequence(0, {1, NAN}), DomainError);
  EXPECT_THROW(FiniteSequence(0, {INFINITY}), DomainError);
}

TEST(FiniteSequence, FromPairsFillsGapsAndRejectsDuplicates) {
  auto x = FiniteSequence::from_pairs({{5, 1.0}, {2, -1.0}});
  EXPECT_EQ(x.min_support(), 2);
  EXPECT_EQ(x.max_support(), 5);
  EXPECT_EQ(x(3), 0);
  EXPECT_THROW(FiniteSequence::from_pairs({{1, 1.0}, {1, 2.0}}), DomainError);
}

TEST(FiniteSequence, PartsRecombine) {
  FiniteSequence x(0, {1, -2, 3, -4});
  auto pos = x.positive_part(), neg = x.negative_part();
  for (Index k = -1; k <= 4; ++k) {
    EXPECT_EQ(pos(k) - neg(k), x(k));
    EXPECT_EQ(x.abs()(k), std::fabs(x(k)));
  }
  EXPECT_TRUE(pos.is_nonnegative());
  EXPECT_FALSE(x.is_nonnegative());
}

TEST(SymmetricInterval, CardinalityAndMembership) {
  SymmetricInterval s(5, 3);
  EXPECT_EQ(s.cardinality(), 7);
  EXPECT_TRUE(s.contains(2));
  EXPECT_TRUE(s.contains(8));
  EXPECT_FALSE(s.contains(9));
  EXPECT_THROW(SymmetricInterval(0, -1), DomainError);
  EXPECT_THROW(IntervalRun(3, 2), DomainError);
}

TEST(Dilate, SingletonUsesRadiusFactorMinusOne) {
  IntervalRun d = dilate(SymmetricInterval(0, 0), 4);
  EXPECT_EQ(d.start, -3);
  EXPECT_EQ(d.end, 3);
}

TEST(Dilate, ScalesRadius) {
  IntervalRun d = dilate(SymmetricInterval(5, 3), 2);
  EXPECT_EQ(d.start, -1);
  EXPECT_EQ(d.end, 11);
}

TEST(Dilate, FactorOneIsIdentityAndCardinalityFormula) {
  for (Index m : {-7, 0, 12}) {
    for (Index n = 0; n <= 6; ++n) {
      SymmetricInterval s(m, n);
      EXPECT_EQ(dilate(s, 1), s.run());
      for (Index lam = 1; lam <= 5; ++lam) {
        IntervalRun d = dilate(s, lam);
        Index want = n >= 1 ? 2 * lam * n + 1 : 2 * lam - 1;
        EXPECT_EQ(d.cardinality(), want);
        IntervalRun next = dilate(s, lam + 1);
        EXPECT_LE(next.start, d.start);
        EXPECT_GE(next.end, d.end);
      }
    }
  }
  EXPECT_THROW(dilate(SymmetricInterval(0, 1), 0), DomainError);
}

TEST(LeftDilate, KeepsRightEndpointAndMultipliesCardinality) {
  Index m = 10, n = 3;
  IntervalRun single(m + n + 1, m + n + 1);
  IntervalRun six = left_dilate(single, 6);
  EXPECT_EQ(six.start, m + n - 4);
  EXPECT_EQ(six.end, m + n + 1);
  IntervalRun r(1, 4);
  EXPECT_EQ(left_dilate(r, 1), r);
  IntervalRun three = left_dilate(r, 3);
  EXPECT_EQ(three.start, -7);
  EXPECT_EQ(three.end, 4);
  EXPECT_EQ(three.cardinality(), 12);
}

TEST(ExponentProfile, SobolevDerivesQ) {
  auto p = make_profile(ProfileKind::SobolevScale, 0.25, 2);
  EXPECT_NEAR(p.q, 4, 1e-12);
  EXPECT_NEAR(p.p_conjugate, 2, 1e-12);
  EXPECT_GT(p.q, p.p);
  EXPECT_NEAR(p.alpha * p.q, p.q / p.p - 1, 1e-12);
  EXPECT_THROW(make_profile(ProfileKind::SobolevScale, 0.25, 2, 3.0), DomainError);
  EXPECT_THROW(make_profile(ProfileKind::SobolevScale, 0.5, 2), DomainError);
}

TEST(ExponentProfile, MorreyDerivesSAndT) {
  auto p = make_profile(ProfileKind::MorreyScale, 0.25, 2, 3.0);
  // s = p/(1 - alpha q), t = q s / p
  EXPECT_NEAR(*p.s, 2 / (1 - 0.75), 1e-12);
  EXPECT_NEAR(*p.t, 3 * 8 / 2.0, 1e-12);
  EXPECT_THROW(make_profile(ProfileKind::MorreyScale, 0.25, 2, 1.5), DomainError);
  EXPECT_THROW(make_profile(ProfileKind::MorreyScale, 0.25, 2, 4.0), DomainError);
}

TEST(ExponentProfile, WeightedMorreyRejectsQEqualTwoP) {
  try {
    make_profile(ProfileKind::WeightedMorreyScale, 0.25, 2);
    FAIL() << "expected a domain error";
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("q<2p"), std::string::npos);
  }
  auto p = make_profile(ProfileKind::WeightedMorreyScale, 0.2, 2);
  // q = 10/3, s = q p / (2p - q)
  EXPECT_NEAR(*p.s, (10.0 / 3) * 2 / (4 - 10.0 / 3), 1e-12);
}

TEST(Summation, PairwiseMatchesLongDouble) {
  CounterRng g(7);
  std::vector<double> v(100000);
  long double ref = 0;
  for (auto& x : v) {
    x = g.uniform();
    ref += x;
  }
  EXPECT_LT(std::fabs(pairwise_sum(v) - static_cast<double>(ref)) / static_cast<double>(ref), 1e-14);
  PairwiseAccumulator acc;
  for (double x : v) acc.add(x);
  EXPECT_EQ(acc.result(), pairwise_sum(v));
}

TEST(CounterRng, SplitStreamsAreReproducibleAndDistinct) {
  CounterRng a(1729), b(1729);
  EXPECT_EQ(a.split(3).at(10), b.split(3).at(10));
  EXPECT_NE(a.split(3).at(10), a.split(4).at(10));
  for (int i = 0; i < 1000; ++i) {
    double u = a.uniform();
    EXPECT_GE(u, 0);
    EXPECT_LT(u, 1);
    EXPECT_LT(a.below(7), 7u);
  }
}
