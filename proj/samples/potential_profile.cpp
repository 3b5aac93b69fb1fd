// Prints M_alpha x and I_alpha x for a block of ones around the origin.
#include <cstdio>

#include "driesz/driesz.hpp"

int main() {
  using namespace driesz;
  const double alpha = 0.5;
  FiniteSequence block(-2, {1, 1, 1, 1, 1});
  EvalWindow w(-10, 10);
  auto m = fractional_maximal_values(block, alpha, w);
  auto i = riesz_fast_values(block, alpha, w);
  std::printf("%5s %12s %12s\n", "k", "M x(k)", "I x(k)");
  for (Index k = w.lo; k <= w.hi; ++k) {
    auto j = static_cast<std::size_t>(k - w.lo);
    std::printf("%5lld %12.6f %12.6f\n", static_cast<long long>(k), m[j], i[j]);
  }
  std::printf("morrey norm (p=1, q=2): %.6f\n", morrey_norm(block, 1, 2).value);
}
