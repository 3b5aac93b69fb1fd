#ifndef DRIESZ_VERIFY_FAMILIES_HPP
#define DRIESZ_VERIFY_FAMILIES_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "../core.hpp"
#include "../rng.hpp"

namespace driesz::verify {

enum class FamilyKind { Deltas, Blocks, RandomSigned, PowerDecay, AdversarialExtremal };

inline const char* to_string(FamilyKind k) {
  switch (k) {
    case FamilyKind::Deltas: return "deltas";
    case FamilyKind::Blocks: return "blocks";
    case FamilyKind::RandomSigned: return "randomSigned";
    case FamilyKind::PowerDecay: return "powerDecay";
    case FamilyKind::AdversarialExtremal: return "adversarialExtremal";
  }
  return "?";
}

/// Deterministic generator of test inputs supported on [0, size).
struct TestFamily {
  FamilyKind kind = FamilyKind::Blocks;
  std::uint64_t seed = 0;
  /// RandomSigned: probability that a point carries a nonzero value.
  double density = 0.5;
  /// PowerDecay: x(k) = (k+1)^{-gamma}.
  double gamma = 1.0;
  /// AdversarialExtremal: x(k) = (1 + ((k-c)/sigma)^2)^{-theta}, sigma = size/16.
  double theta = 0.5;

  FiniteSequence generate(Index size) const {
    if (size < 1) throw DomainError("family size must be positive");
    std::vector<double> v(static_cast<std::size_t>(size), 0.0);
    switch (kind) {
      case FamilyKind::Deltas:
        v.front() = 1;
        v[static_cast<std::size_t>(size / 2)] = 1;
        v.back() = 1;
        break;
      case FamilyKind::Blocks: std::fill(v.begin(), v.end(), 1.0); break;
      case FamilyKind::RandomSigned: {
        CounterRng g = CounterRng(seed).split(static_cast<std::uint64_t>(size));
        for (std::size_t k = 0; k < v.size(); ++k) {
          if (g.uniform_at(2 * k) < density) v[k] = 2 * g.uniform_at(2 * k + 1) - 1;
        }
        break;
      }
      case FamilyKind::PowerDecay:
        for (std::size_t k = 0; k < v.size(); ++k) v[k] = std::pow(static_cast<double>(k) + 1, -gamma);
        break;
      case FamilyKind::AdversarialExtremal: {
        double c = 0.5 * static_cast<double>(size - 1);
        double sigma = std::max(1.0, static_cast<double>(size) / 16);
        for (std::size_t k = 0; k < v.size(); ++k) {
          double u = (static_cast<double>(k) - c) / sigma;
          v[k] = std::pow(1 + u * u, -theta);
        }
        break;
      }
    }
    return FiniteSequence(0, std::move(v));
  }

  std::string label() const {
    std::string s = to_string(kind);
    switch (kind) {
      case FamilyKind::RandomSigned:
        return s + "(seed=" + std::to_string(seed) + ",density=" + short_number(density) + ")";
      case FamilyKind::PowerDecay: return s + "(gamma=" + short_number(gamma) + ")";
      case FamilyKind::AdversarialExtremal: return s + "(theta=" + short_number(theta) + ")";
      default: return s;
    }
  }

 private:
  static std::string short_number(double v) {
    std::string s = std::to_string(v);
    while (s.size() > 1 && s.back() == '0') s.pop_back();
    if (!s.empty() && s.back() == '.') s.pop_back();
    return s;
  }
};

/// The five generators used by every experiment; the extremal profile decays like |k|^{-2/p}.
inline std::vector<TestFamily> standard_families(double p, std::uint64_t seed) {
  std::vector<TestFamily> out(5);
  out[0].kind = FamilyKind::Deltas;
  out[1].kind = FamilyKind::Blocks;
  out[2].kind = FamilyKind::RandomSigned;
  out[2].seed = seed;
  out[2].density = 0.5;
  out[3].kind = FamilyKind::PowerDecay;
  out[3].gamma = 1.0;
  out[4].kind = FamilyKind::AdversarialExtremal;
  out[4].theta = 1 / p;
  return out;
}

}  // namespace driesz::verify

#endif
