#include <gtest/gtest.h>

#include <cmath>

#include "driesz/norms.hpp"
#include "driesz/rng.hpp"
#include "oracles.hpp"

using namespace driesz;

namespace {

FiniteSequence random_sparse(std::uint64_t seed, Index n, Index offset) {
  CounterRng g = CounterRng(seed).split(1);
  std::vector<double> v(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < v.size(); ++i) {
    v[i] = g.uniform_at(2 * i) < 0.4 ? 2 * g.uniform_at(2 * i + 1) - 1 : 0.0;
  }
  return FiniteSequence(offset, std::move(v));
}

}  // namespace

TEST(Lp, Examples) {
  EXPECT_DOUBLE_EQ(lp_norm(FiniteSequence::delta(0), 3), 1);
  EXPECT_DOUBLE_EQ(lp_norm(FiniteSequence(0, {3, 4}), 2), 5);
  EXPECT_DOUBLE_EQ(lp_norm(FiniteSequence::delta(0), 2, Weight::power(1)), 1);
  EXPECT_EQ(lp_norm(FiniteSequence(), 2), 0);
  EXPECT_THROW(lp_norm(FiniteSequence::delta(0), 0.5), DomainError);
}

TEST(WeakLp, Examples) {
  EXPECT_DOUBLE_EQ(weak_lp_norm(FiniteSequence::delta(0), 2), 1);
  EXPECT_DOUBLE_EQ(weak_lp_norm(FiniteSequence(0, {3, 1}), 1), 3);
}

TEST(WeakLp, MatchesLevelScanAndChebyshev) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    auto x = random_sparse(seed, 60, -20);
    for (double p : {1.0, 1.5, 3.0}) {
      for (auto w : {std::optional<Weight>{}, std::optional<Weight>{Weight::power(0.7)}}) {
        double got = weak_lp_norm(x, p, w);
        EXPECT_NEAR(got, oracle::weak_lp(x, p, w), 1e-8 * got);
        EXPECT_LE(got, lp_norm(x, p, w) * (1 + 1e-12));
      }
    }
  }
}

TEST(LayerCake, Examples) {
  EXPECT_NEAR(layer_cake(FiniteSequence::delta(0, 2), 2), 4, 1e-15);
  EXPECT_NEAR(layer_cake(FiniteSequence(0, {3, 1}), 1), 4, 1e-15);
  EXPECT_EQ(layer_cake(FiniteSequence(), 2), 0);
}

TEST(LayerCake, EqualsLpPower) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    auto x = random_sparse(seed, 80, -40);
    for (double p : {1.0, 1.5, 2.0, 3.0}) {
      for (auto w : {std::optional<Weight>{}, std::optional<Weight>{Weight::power(-0.3)}}) {
        double want = std::pow(lp_norm(x, p, w), p);
        EXPECT_NEAR(layer_cake(x, p, w), want, 1e-12 * want);
      }
    }
  }
}

TEST(Morrey, DeltaIsOne) {
  for (auto [p, q] : {std::pair{1.0, 1.0}, {1.0, 2.0}, {2.0, 5.0}}) {
    auto v = morrey_norm(FiniteSequence::delta(3), p, q);
    EXPECT_DOUBLE_EQ(v.value, 1);
    ASSERT_TRUE(v.witness);
    EXPECT_EQ(*v.witness, SymmetricInterval(3, 0));
  }
}

TEST(Morrey, OnesOnThreePoints) {
  auto v = morrey_norm(FiniteSequence(-1, {1, 1, 1}), 1, 2);
  EXPECT_NEAR(v.value, std::sqrt(3.0), 1e-12);
  EXPECT_EQ(*v.witness, SymmetricInterval(0, 1));
}

TEST(Morrey, BruteForceOverEnlargedRangeNeverExceeds) {
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    auto x = random_sparse(seed, 24, -5);
    Index span = x.max_support() - x.min_support();
    Index lo = x.min_support() - 4 * (span + 1), hi = x.max_support() + 4 * (span + 1);
    for (auto [p, q] : {std::pair{1.0, 2.0}, {2.0, 3.0}, {1.5, 1.5}}) {
      double got = morrey_norm(x, p, q).value;
      double brute = oracle::morrey(x, p, q, lo, hi, 4 * (span + 1));
      EXPECT_NEAR(got, brute, 1e-12 * brute);
      EXPECT_LE(brute, got * (1 + 1e-12));
    }
    Weight w = Weight::power(0.6), v = Weight::power(-0.4);
    double got = weighted_morrey_norm(x, 1.5, 3, w, v).value;
    double brute = oracle::morrey(x, 1.5, 3, lo, hi, 4 * (span + 1), w, v);
    EXPECT_NEAR(got, brute, 1e-12 * brute);
  }
}

TEST(WeightedMorrey, EqualExponentsGiveWeightedLp) {
  auto x = random_sparse(3, 50, 0);
  Weight w = Weight::power(0.5);
  for (double p : {1.0, 2.0, 2.5}) {
    EXPECT_EQ(weighted_morrey_norm(x, p, p, w, Weight::power(3)).value, lp_norm(x, p, w));
  }
}

TEST(Norms, HomogeneityTriangleMonotonicity) {
  auto x = random_sparse(10, 40, -10), y = random_sparse(11, 40, -5);
  std::vector<std::pair<Index, double>> s, big;
  for (Index k = -10; k <= 35; ++k) {
    s.emplace_back(k, x(k) + y(k));
    big.emplace_back(k, std::fabs(x(k)) + 0.1);
  }
  auto sum = FiniteSequence::from_pairs(s), dom = FiniteSequence::from_pairs(big);
  Weight w = Weight::power(0.3), v = Weight::power(0.2);
  std::vector<NormSpec> specs = {
      {NormFamily::Lp, 2, std::nullopt, w, std::nullopt},
      {NormFamily::WeakLp, 1.5, std::nullopt, w, std::nullopt},
      {NormFamily::Morrey, 1.5, 3.0, std::nullopt, std::nullopt},
      {NormFamily::WeightedMorrey, 2, 4.0, w, v},
  };
  for (const auto& spec : specs) {
    double nx = evaluate_norm(spec, x).value;
    EXPECT_NEAR(evaluate_norm(spec, x.scaled(-2.5)).value, 2.5 * nx, 1e-12 * nx);
    EXPECT_LE(nx, evaluate_norm(spec, dom).value * (1 + 1e-12));
    if (spec.family != NormFamily::WeakLp) {
      EXPECT_LE(evaluate_norm(spec, sum).value, (nx + evaluate_norm(spec, y).value) * (1 + 1e-12));
    }
  }
}

TEST(NormSpec, RejectsMissingPieces) {
  auto x = FiniteSequence::delta(0);
  EXPECT_THROW(evaluate_norm({NormFamily::Morrey, 1, std::nullopt, std::nullopt, std::nullopt}, x), DomainError);
  EXPECT_THROW(evaluate_norm({NormFamily::WeightedMorrey, 1, 2.0, Weight::constant(1), std::nullopt}, x), DomainError);
  EXPECT_THROW(morrey_norm(x, 2, 1), DomainError);
}
