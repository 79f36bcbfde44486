/// Discrete wavenumber of DPG, FOSLS and FEM against omega h at theta = 0.

#include <cstdio>
#include <numbers>

#include "helmdpg/helmdpg.hpp"

int main() {
  using namespace helmdpg;
  std::printf("omega_h_norm,method,re_wh,im_wh\n");
  for (int k = 1; k <= 12; ++k) {
    const double wh = 0.25 * k;
    for (Method m : {Method::Dpg, Method::Fosls, Method::Fem}) {
      const auto st = extract_stencils(m, 1.0, wh, 1e-2, 3);
      const auto p = solve_root(st, 0.0, 1.0, wh);
      std::printf("%s,%s,%s,%s\n", format_double(wh).c_str(), to_string(m).c_str(), format_double(p.wh.real()).c_str(),
                  format_double(p.wh.imag()).c_str());
    }
  }
  return 0;
}
