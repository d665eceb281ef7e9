// Bound and actual root count for the level-3 example.

#include <cstdio>

#include "fewnomial/fewnomial.hpp"

int main() {
  using namespace fewnomial;

  const SeedReport report = compute_dd_n(3);
  std::printf("%s", pretty_trace(report.trace).c_str());
  std::printf("DD(3) = %zu, at most %zu solutions\n", report.dd_steps,
              report.fp_bound);

  ProblemParams params;
  params.a = {-0.012, 0.0035836, -8.39e-6};
  params.r = {Exponent::ratio(53, 150), Exponent::ratio(11, 8), Exponent(2.0)};
  const RootReport roots = find_roots(params);
  std::printf("domain starts at %.6g; %zu solutions:\n", roots.interval.lower,
              roots.count);
  for (const Root& r : roots.roots) std::printf("  %.7g\n", r.refined);
}
