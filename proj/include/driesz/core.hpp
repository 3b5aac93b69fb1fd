#ifndef DRIESZ_CORE_HPP
#define DRIESZ_CORE_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace driesz {

using Index = std::int64_t;

/// Thrown when an argument lies outside the domain an operation is defined on.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when a computation would exceed a configured memory budget.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Finitely supported real sequence on the integers, stored densely from an offset.
/// Zeros at both ends are trimmed on construction so equal sequences compare equal.
class FiniteSequence {
 public:
  FiniteSequence() = default;

  FiniteSequence(Index offset, std::vector<double> values) : offset_(offset), values_(std::move(values)) {
    for (double v : values_) {
      if (!std::isfinite(v)) throw DomainError("sequence values must be finite");
    }
    canonicalize();
  }

  static FiniteSequence delta(Index at, double value = 1.0) { return FiniteSequence(at, {value}); }

  /// Builds a sequence from sparse (index, value) pairs. Repeated indices are rejected.
  static FiniteSequence from_pairs(std::vector<std::pair<Index, double>> pairs) {
    if (pairs.empty()) return {};
    std::sort(pairs.begin(), pairs.end());
    for (std::size_t i = 1; i < pairs.size(); ++i) {
      if (pairs[i].first == pairs[i - 1].first) throw DomainError("duplicate index in sequence input");
    }
    Index lo = pairs.front().first;
    Index hi = pairs.back().first;
    if (hi - lo > (Index{1} << 34)) throw CapacityError("sequence support too wide");
    std::vector<double> vals(static_cast<std::size_t>(hi - lo + 1), 0.0);
    for (auto& [k, v] : pairs) vals[static_cast<std::size_t>(k - lo)] = v;
    return FiniteSequence(lo, std::move(vals));
  }

  double operator()(Index k) const noexcept {
    if (k < offset_ || k >= offset_ + size()) return 0.0;
    return values_[static_cast<std::size_t>(k - offset_)];
  }

  bool empty() const noexcept { return values_.empty(); }
  Index offset() const noexcept { return offset_; }
  Index size() const noexcept { return static_cast<Index>(values_.size()); }
  /// Smallest index of the support. Requires a nonempty sequence.
  Index min_support() const noexcept { return offset_; }
  /// Largest index of the support. Requires a nonempty sequence.
  Index max_support() const noexcept { return offset_ + size() - 1; }
  std::span<const double> values() const noexcept { return values_; }

  FiniteSequence abs() const {
    std::vector<double> v(values_);
    for (double& e : v) e = std::fabs(e);
    return FiniteSequence(offset_, std::move(v));
  }

  FiniteSequence scaled(double c) const {
    std::vector<double> v(values_);
    for (double& e : v) e *= c;
    return FiniteSequence(offset_, std::move(v));
  }

  FiniteSequence positive_part() const {
    std::vector<double> v(values_);
    for (double& e : v) e = e > 0 ? e : 0.0;
    return FiniteSequence(offset_, std::move(v));
  }

  FiniteSequence negative_part() const {
    std::vector<double> v(values_);
    for (double& e : v) e = e < 0 ? -e : 0.0;
    return FiniteSequence(offset_, std::move(v));
  }

  FiniteSequence shifted(Index by) const { return FiniteSequence(offset_ + by, values_); }

  bool is_nonnegative() const noexcept {
    return std::all_of(values_.begin(), values_.end(), [](double v) { return v >= 0; });
  }

  friend bool operator==(const FiniteSequence& a, const FiniteSequence& b) {
    return a.offset_ == b.offset_ && a.values_ == b.values_;
  }

 private:
  void canonicalize() {
    std::size_t first = 0;
    while (first < values_.size() && values_[first] == 0.0) ++first;
    if (first == values_.size()) {
      values_.clear();
      offset_ = 0;
      return;
    }
    std::size_t last = values_.size();
    while (values_[last - 1] == 0.0) --last;
    if (first > 0 || last < values_.size()) {
      values_ = std::vector<double>(values_.begin() + static_cast<std::ptrdiff_t>(first),
                                    values_.begin() + static_cast<std::ptrdiff_t>(last));
    }
    offset_ += static_cast<Index>(first);
  }

  Index offset_ = 0;
  std::vector<double> values_;
};

/// Run of consecutive integers [start, end].
struct IntervalRun {
  Index start = 0;
  Index end = 0;

  IntervalRun() = default;
  IntervalRun(Index s, Index e) : start(s), end(e) {
    if (e < s) throw DomainError("interval run needs start <= end");
  }
  Index cardinality() const noexcept { return end - start + 1; }
  bool contains(Index k) const noexcept { return start <= k && k <= end; }
  friend bool operator==(const IntervalRun&, const IntervalRun&) = default;
};

/// Symmetric interval {m-N, ..., m+N}.
struct SymmetricInterval {
  Index center = 0;
  Index radius = 0;

  SymmetricInterval() = default;
  SymmetricInterval(Index m, Index n) : center(m), radius(n) {
    if (n < 0) throw DomainError("radius must be nonnegative");
  }
  Index cardinality() const noexcept { return 2 * radius + 1; }
  bool contains(Index k) const noexcept { return center - radius <= k && k <= center + radius; }
  IntervalRun run() const { return {center - radius, center + radius}; }
  friend bool operator==(const SymmetricInterval&, const SymmetricInterval&) = default;
};

/// Dilation by an integer factor. A singleton becomes the interval of radius factor-1.
inline IntervalRun dilate(const SymmetricInterval& s, Index factor) {
  if (factor < 1) throw DomainError("dilation factor must be >= 1");
  Index r = s.radius == 0 ? factor - 1 : factor * s.radius;
  return {s.center - r, s.center + r};
}

/// Extends a run to the left so that it keeps its right endpoint and has n times as many points.
inline IntervalRun left_dilate(const IntervalRun& run, Index n) {
  if (n < 1) throw DomainError("left dilation factor must be >= 1");
  return {run.end - n * run.cardinality() + 1, run.end};
}

enum class ProfileKind { MorreyScale, SobolevScale, WeightedMorreyScale };

inline const char* to_string(ProfileKind k) {
  switch (k) {
    case ProfileKind::MorreyScale: return "morrey";
    case ProfileKind::SobolevScale: return "sobolev";
    case ProfileKind::WeightedMorreyScale: return "weighted-morrey";
  }
  return "?";
}

/// Validated exponent tuple. s and t are only present for the Morrey kinds that define them.
struct ExponentProfile {
  ProfileKind kind = ProfileKind::SobolevScale;
  double alpha = 0;
  double p = 0;
  double q = 0;
  std::optional<double> s;
  std::optional<double> t;
  double p_conjugate = 0;
};

namespace detail {
inline std::string fmt(double v) { return std::to_string(v); }
}  // namespace detail

inline ExponentProfile make_profile(ProfileKind kind, double alpha, double p, std::optional<double> q = std::nullopt) {
  if (!(alpha > 0 && alpha < 1)) throw DomainError("profile needs 0<alpha<1");
  if (!(p > 1)) throw DomainError("profile needs p>1");
  ExponentProfile prof;
  prof.kind = kind;
  prof.alpha = alpha;
  prof.p = p;
  prof.p_conjugate = p / (p - 1);
  switch (kind) {
    case ProfileKind::MorreyScale: {
      if (!q) throw DomainError("morrey profile needs q");
      if (!(p <= *q)) throw DomainError("morrey profile needs p<=q");
      if (!(*q < 1 / alpha)) throw DomainError("morrey profile needs q<1/alpha");
      prof.q = *q;
      prof.s = p / (1 - alpha * *q);
      prof.t = *q * *prof.s / p;
      break;
    }
    case ProfileKind::SobolevScale:
    case ProfileKind::WeightedMorreyScale: {
      if (!(p < 1 / alpha)) throw DomainError("profile needs p<1/alpha");
      double derived = 1 / (1 / p - alpha);
      if (q && std::fabs(*q - derived) > 1e-12 * derived) {
        throw DomainError("q must satisfy 1/q=1/p-alpha (expected " + detail::fmt(derived) + ")");
      }
      prof.q = derived;
      if (kind == ProfileKind::WeightedMorreyScale) {
        if (!(prof.q < 2 * p)) throw DomainError("weighted morrey profile needs q<2p");
        prof.s = prof.q * p / (2 * p - prof.q);
      }
      break;
    }
  }
  return prof;
}

}  // namespace driesz

#endif
