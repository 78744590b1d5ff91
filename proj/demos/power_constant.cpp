// The power inequality constant 8a 2^(-2a) against the worst ratio a sweep finds.
#include <cstdio>

#include "frechet/frechet.hpp"

using namespace frechet;

int main() {
  std::printf("%6s %10s %12s %12s\n", "alpha", "constant", "case (a)", "violations");
  for (double a : {0.5, 0.6, 0.7213475204444817, 0.8, 0.9, 1.0}) {
    const auto rep = sweep_structure(Euclidean{3}, {structure::Power{a}}, 200000, 7);
    std::printf("%6.3f %10.5f %12.5f %12llu\n", a, power_constant(a), optimality_case(OptimalityCase::A, a, 1e-5),
                static_cast<unsigned long long>(rep.violations));
  }
}
