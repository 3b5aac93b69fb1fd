#ifndef DRIESZ_RNG_HPP
#define DRIESZ_RNG_HPP

#include <cstdint>
#include <limits>

namespace driesz {

constexpr std::uint64_t splitmix64(std::uint64_t z) noexcept {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

/// Counter-based generator: the n-th draw depends only on (key, n), so any
/// sub-stream can be reproduced without replaying the others.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  explicit constexpr CounterRng(std::uint64_t seed = 0) noexcept : key_(splitmix64(seed)) {}

  /// Independent child stream identified by `id`.
  constexpr CounterRng split(std::uint64_t id) const noexcept {
    CounterRng child;
    child.key_ = splitmix64(key_ ^ splitmix64(id + 0x632BE59BD9B4E019ull));
    return child;
  }

  constexpr std::uint64_t at(std::uint64_t counter) const noexcept {
    return splitmix64(key_ + splitmix64(counter));
  }

  /// Uniform double in [0, 1) built from the top 53 bits of draw `counter`.
  constexpr double uniform_at(std::uint64_t counter) const noexcept {
    return static_cast<double>(at(counter) >> 11) * 0x1.0p-53;
  }

  result_type operator()() noexcept { return at(counter_++); }
  double uniform() noexcept { return uniform_at(counter_++); }
  /// Uniform integer in [0, bound). Requires bound > 0.
  std::uint64_t below(std::uint64_t bound) noexcept {
    // rejection keeps the distribution exact
    std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
    for (;;) {
      std::uint64_t r = (*this)();
      if (r < limit) return r % bound;
    }
  }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

 private:
  std::uint64_t key_ = 0;
  std::uint64_t counter_ = 0;
};

}  // namespace driesz

#endif
