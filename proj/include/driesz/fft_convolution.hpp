#ifndef DRIESZ_FFT_CONVOLUTION_HPP
#define DRIESZ_FFT_CONVOLUTION_HPP

#include <fftw3.h>

#include <complex>
#include <cstddef>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <vector>

#include "core.hpp"

namespace driesz {

namespace detail {

// The FFTW planner is not thread safe; execution of distinct plans is.
inline std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwFree {
  void operator()(void* p) const noexcept { fftw_free(p); }
};

template <class T>
using FftwBuffer = std::unique_ptr<T[], FftwFree>;

template <class T>
FftwBuffer<T> fftw_buffer(std::size_t n) {
  void* p = fftw_malloc(sizeof(T) * n);
  if (p == nullptr) throw CapacityError("fftw allocation failed");
  return FftwBuffer<T>(static_cast<T*>(p));
}

class FftwPlan {
 public:
  explicit FftwPlan(fftw_plan p) : plan_(p) {
    if (plan_ == nullptr) throw CapacityError("fftw could not create a plan");
  }
  FftwPlan(const FftwPlan&) = delete;
  FftwPlan& operator=(const FftwPlan&) = delete;
  ~FftwPlan() {
    std::lock_guard lock(fftw_planner_mutex());
    fftw_destroy_plan(plan_);
  }
  void execute() const noexcept { fftw_execute(plan_); }

 private:
  fftw_plan plan_;
};

/// Smallest n >= target whose prime factors are all in {2, 3, 5, 7}.
inline std::size_t next_fast_size(std::size_t target) {
  if (target <= 1) return 1;
  for (std::size_t n = target;; ++n) {
    std::size_t m = n;
    for (std::size_t f : {2u, 3u, 5u, 7u}) {
      while (m % f == 0) m /= f;
    }
    if (m == 1) return n;
  }
}

}  // namespace detail

struct FftOptions {
  /// Upper bound on transform scratch memory in bytes.
  std::size_t memory_budget = std::size_t{2} << 30;
};

/// Bytes of scratch needed for a real cyclic convolution of length n.
inline std::size_t convolution_scratch_bytes(std::size_t n) {
  return 2 * n * sizeof(double) + 2 * (n / 2 + 1) * sizeof(fftw_complex);
}

/// Linear correlation-style product used by the potential: for t in [first, first + count)
/// returns sum_j f[j] * g[t - j], where g is indexed 0..g.size()-1 and treated as zero outside.
/// Requires first >= f.size() - 1 and first + count <= g.size() so no wrap-around enters.
inline std::vector<double> convolve_segment(std::span<const double> f, std::span<const double> g, std::size_t first,
                                            std::size_t count, const FftOptions& opt = {}) {
  std::vector<double> out(count, 0.0);
  if (f.empty() || g.empty() || count == 0) return out;
  if (first + 1 < f.size() || first + count > g.size()) throw DomainError("convolution segment out of range");
  std::size_t n = detail::next_fast_size(g.size());
  if (convolution_scratch_bytes(n) > opt.memory_budget) {
    throw CapacityError("transform length " + std::to_string(n) + " exceeds the memory budget");
  }
  std::size_t nc = n / 2 + 1;
  auto a = detail::fftw_buffer<double>(n);
  auto b = detail::fftw_buffer<double>(n);
  auto fa = detail::fftw_buffer<fftw_complex>(nc);
  auto fb = detail::fftw_buffer<fftw_complex>(nc);
  std::unique_ptr<detail::FftwPlan> pa, pb, pinv;
  {
    std::lock_guard lock(detail::fftw_planner_mutex());
    pa = std::make_unique<detail::FftwPlan>(fftw_plan_dft_r2c_1d(static_cast<int>(n), a.get(), fa.get(), FFTW_ESTIMATE));
    pb = std::make_unique<detail::FftwPlan>(fftw_plan_dft_r2c_1d(static_cast<int>(n), b.get(), fb.get(), FFTW_ESTIMATE));
    pinv = std::make_unique<detail::FftwPlan>(fftw_plan_dft_c2r_1d(static_cast<int>(n), fa.get(), a.get(), FFTW_ESTIMATE));
  }
  for (std::size_t i = 0; i < n; ++i) {
    a[i] = i < f.size() ? f[i] : 0.0;
    b[i] = i < g.size() ? g[i] : 0.0;
  }
  pa->execute();
  pb->execute();
  for (std::size_t i = 0; i < nc; ++i) {
    double re = fa[i][0] * fb[i][0] - fa[i][1] * fb[i][1];
    double im = fa[i][0] * fb[i][1] + fa[i][1] * fb[i][0];
    fa[i][0] = re;
    fa[i][1] = im;
  }
  pinv->execute();
  double scale = 1.0 / static_cast<double>(n);
  for (std::size_t i = 0; i < count; ++i) out[i] = a[first + i] * scale;
  return out;
}

}  // namespace driesz

#endif
