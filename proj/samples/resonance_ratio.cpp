/// Error ratio e_r / a of the DPG solution near the first Dirichlet resonance.

#include <cstdio>

#include "helmdpg/helmdpg.hpp"

int main() {
  using namespace helmdpg;
  const auto rows = resonance_sweep({3.5, 4.0, 4.3, 4.4, 4.5, 5.0}, {1.0, 1e-2, 1e-4}, 16, 3);
  std::printf("omega,eps,e_r,a,ratio\n");
  for (const auto& r : rows) {
    if (!r.report) {
      std::fprintf(stderr, "omega=%g eps=%g: %s\n", r.omega, r.eps, r.error.c_str());
      continue;
    }
    std::printf("%s,%s,%s,%s,%s\n", format_double(r.omega).c_str(), format_double(r.eps).c_str(),
                format_double(r.report->e_r).c_str(), format_double(r.report->a).c_str(),
                format_double(r.report->ratio).c_str());
  }
  return 0;
}
