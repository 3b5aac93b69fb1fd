#ifndef DRIESZ_SUMMATION_HPP
#define DRIESZ_SUMMATION_HPP

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>

namespace driesz {

/// Streaming pairwise (cascade) summation. Values are summed in blocks and
/// the block sums are merged like a binary counter, so the rounding error
/// grows with log n instead of n.
class PairwiseAccumulator {
 public:
  void add(double v) noexcept {
    block_ += v;
    if (++in_block_ == kBlock) flush();
  }

  double result() const noexcept {
    double total = block_;
    for (int level = 0; level < kLevels; ++level) {
      if (occupied_ >> level & 1u) total += levels_[static_cast<std::size_t>(level)];
    }
    return total;
  }

 private:
  static constexpr int kBlock = 32;
  static constexpr int kLevels = 48;

  void flush() noexcept {
    double carry = block_;
    block_ = 0;
    in_block_ = 0;
    int level = 0;
    while (occupied_ >> level & 1u) {
      carry += levels_[static_cast<std::size_t>(level)];
      occupied_ &= ~(std::uint64_t{1} << level);
      ++level;
    }
    levels_[static_cast<std::size_t>(level)] = carry;
    occupied_ |= std::uint64_t{1} << level;
  }

  double block_ = 0;
  int in_block_ = 0;
  std::uint64_t occupied_ = 0;
  std::array<double, kLevels> levels_{};
};

/// Neumaier compensated sum.
class CompensatedSum {
 public:
  void add(double v) noexcept {
    double t = sum_ + v;
    if (std::fabs(sum_) >= std::fabs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double result() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0;
  double comp_ = 0;
};

inline double pairwise_sum(std::span<const double> values) noexcept {
  PairwiseAccumulator acc;
  for (double v : values) acc.add(v);
  return acc.result();
}

}  // namespace driesz

#endif
