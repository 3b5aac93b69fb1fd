// A(p,q) constants of |k|^beta over growing windows, for alpha = 1/4, p = 2.
#include <cstdio>
#include <vector>

#include "driesz/driesz.hpp"

int main() {
  using namespace driesz;
  auto prof = make_profile(ProfileKind::SobolevScale, 0.25, 2.0);
  std::vector<Index> caps{64, 128, 256, 512};
  for (double beta : {-0.4, 0.0, 0.4, 0.8}) {
    auto g = constant_growth_profile(Weight::power(beta), MuckenhouptSpec{prof.p, prof.q}, caps);
    std::printf("beta=%5.2f ", beta);
    for (const auto& e : g.entries) std::printf(" %9.5f", e.value);
    std::printf("  growth %6.3f  %s\n", g.growth, to_string(g.verdict));
  }
}
