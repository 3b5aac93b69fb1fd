#ifndef DRIESZ_WHITNEY_HPP
#define DRIESZ_WHITNEY_HPP

#include <algorithm>
#include <optional>
#include <vector>

#include "core.hpp"

namespace driesz {

/// Subset of the integers: finitely many runs plus optional left ray (-inf, left] and
/// right ray [right, +inf). Components are merged on construction, so every stored
/// run is maximal and separated from its neighbours by at least one missing integer.
class IntegerSet {
 public:
  IntegerSet() = default;

  explicit IntegerSet(std::vector<IntervalRun> runs, std::optional<Index> left_ray = std::nullopt,
                      std::optional<Index> right_ray = std::nullopt)
      : left_(left_ray), right_(right_ray) {
    std::sort(runs.begin(), runs.end(), [](const IntervalRun& a, const IntervalRun& b) { return a.start < b.start; });
    for (const auto& r : runs) {
      if (!runs_.empty() && r.start <= runs_.back().end + 1) {
        runs_.back().end = std::max(runs_.back().end, r.end);
      } else {
        runs_.push_back(r);
      }
    }
    if (right_) {
      while (!runs_.empty() && runs_.back().end >= *right_ - 1) {
        right_ = std::min(*right_, runs_.back().start);
        runs_.pop_back();
      }
    }
    if (left_) {
      std::size_t drop = 0;
      while (drop < runs_.size() && runs_[drop].start <= *left_ + 1) {
        left_ = std::max(*left_, runs_[drop].end);
        ++drop;
      }
      runs_.erase(runs_.begin(), runs_.begin() + static_cast<std::ptrdiff_t>(drop));
    }
    if (left_ && right_ && *left_ >= *right_ - 1) throw DomainError("set covers every integer, its complement is empty");
  }

  const std::vector<IntervalRun>& runs() const noexcept { return runs_; }
  std::optional<Index> left_ray() const noexcept { return left_; }
  std::optional<Index> right_ray() const noexcept { return right_; }
  bool empty() const noexcept { return runs_.empty() && !left_ && !right_; }

  bool contains(Index k) const { return contains_run(k, k); }

  /// Whether every integer of [a, b] belongs to the set.
  bool contains_run(Index a, Index b) const {
    if (left_ && b <= *left_) return true;
    if (right_ && a >= *right_) return true;
    auto it = std::upper_bound(runs_.begin(), runs_.end(), a, [](Index v, const IntervalRun& r) { return v < r.start; });
    if (it == runs_.begin()) return false;
    --it;
    return it->start <= a && b <= it->end;
  }

 private:
  std::vector<IntervalRun> runs_;
  std::optional<Index> left_;
  std::optional<Index> right_;
};

struct Decomposition {
  std::vector<SymmetricInterval> parts;
  /// First integer of the right ray not covered by `parts`.
  std::optional<Index> right_remainder;
  /// Last integer of the left ray not covered by `parts`.
  std::optional<Index> left_remainder;
};

namespace detail {

inline void append_run_parts(const IntervalRun& run, std::vector<SymmetricInterval>& out) {
  Index c = run.cardinality();
  auto centered = [&](Index a, Index b) { out.emplace_back(a + (b - a) / 2, (b - a) / 2); };
  if (c % 2 == 1) {
    centered(run.start, run.end);
    return;
  }
  Index half = c / 2;
  Index first = half % 2 == 1 ? half : half - 1;
  centered(run.start, run.start + first - 1);
  centered(run.start + first, run.end);
}

/// Offset of the j-th ray interval's center from the ray start.
constexpr Index ray_center_offset(int j) { return 3 * (Index{1} << j) + j - 5; }

}  // namespace detail

inline constexpr int kMaxRayDepth = 60;

/// Splits the set into disjoint symmetric intervals whose 4-dilations reach the
/// complement. Each ray contributes `ray_depth` intervals of radii 2, 4, 8, ...
inline Decomposition decompose(const IntegerSet& set, int ray_depth) {
  if (set.empty()) throw DomainError("cannot decompose the empty set");
  if (ray_depth < 0 || ray_depth > kMaxRayDepth) throw DomainError("ray depth must lie in [0, 60]");
  Decomposition out;
  if (auto j0 = set.left_ray()) {
    for (int j = ray_depth; j >= 1; --j) out.parts.emplace_back(*j0 - detail::ray_center_offset(j), Index{1} << j);
    out.left_remainder = ray_depth == 0 ? *j0 : out.parts.front().center - out.parts.front().radius - 1;
  }
  for (const auto& run : set.runs()) detail::append_run_parts(run, out.parts);
  if (auto i0 = set.right_ray()) {
    for (int j = 1; j <= ray_depth; ++j) out.parts.emplace_back(*i0 + detail::ray_center_offset(j), Index{1} << j);
    out.right_remainder = ray_depth == 0 ? *i0 : out.parts.back().center + out.parts.back().radius + 1;
  }
  return out;
}

struct DecompositionCheck {
  bool disjoint = false;
  bool covers = false;
  bool touches_complement = false;
  bool ok() const noexcept { return disjoint && covers && touches_complement; }
};

/// Checks disjointness, exact coverage (of the ray portions reached by the parts), and
/// that every part's 4-dilation, with the singleton rule, meets the complement.
inline DecompositionCheck verify_decomposition(const IntegerSet& set, const std::vector<SymmetricInterval>& parts) {
  DecompositionCheck rep;
  std::vector<IntervalRun> runs;
  for (const auto& s : parts) runs.push_back(s.run());
  std::sort(runs.begin(), runs.end(), [](const IntervalRun& a, const IntervalRun& b) { return a.start < b.start; });
  rep.disjoint = true;
  for (std::size_t i = 1; i < runs.size(); ++i) {
    if (runs[i].start <= runs[i - 1].end) rep.disjoint = false;
  }
  std::vector<IntervalRun> covered;
  for (const auto& r : runs) {
    if (!covered.empty() && r.start <= covered.back().end + 1) {
      covered.back().end = std::max(covered.back().end, r.end);
    } else {
      covered.push_back(r);
    }
  }
  std::vector<IntervalRun> expected;
  if (auto j0 = set.left_ray()) {
    std::optional<Index> reach;
    for (const auto& r : runs) {
      if (r.end <= *j0) reach = reach ? std::min(*reach, r.start) : r.start;
    }
    if (reach) expected.emplace_back(*reach, *j0);
  }
  expected.insert(expected.end(), set.runs().begin(), set.runs().end());
  if (auto i0 = set.right_ray()) {
    std::optional<Index> reach;
    for (const auto& r : runs) {
      if (r.start >= *i0) reach = reach ? std::max(*reach, r.end) : r.end;
    }
    if (reach) expected.emplace_back(*i0, *reach);
  }
  rep.covers = covered == expected && !expected.empty();
  rep.touches_complement = true;
  for (const auto& s : parts) {
    IntervalRun d = dilate(s, 4);
    if (set.contains_run(d.start, d.end)) rep.touches_complement = false;
  }
  return rep;
}

struct RayGap {
  Index offset = 0;
  Index slack = 0;
};

/// Distance d_j = 3*2^j + j - 5 from the ray start to the j-th center and the margin
/// 4*2^j - d_j by which its 4-dilation passes the ray start.
inline RayGap ray_gap_check(int j) {
  if (j < 1 || j > kMaxRayDepth) throw DomainError("ray gap index must lie in [1, 60]");
  Index d = detail::ray_center_offset(j);
  return {d, 4 * (Index{1} << j) - d};
}

}  // namespace driesz

#endif
