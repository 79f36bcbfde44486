/// Normalized DPG stencil rows with their structural and numeric support sizes.

#include <cstdio>
#include <numbers>

#include "helmdpg/helmdpg.hpp"

int main() {
  using namespace helmdpg;
  const auto st = extract_stencils(Method::Dpg, 1.0, std::numbers::pi / 4, 1e-2, 3);
  for (int t = 0; t < st.S; ++t) {
    std::printf("row %d: %zu offsets, %zu nonzero\n", t + 1, st.support_size(t), st.nonzero_count(t));
    for (const auto& w : st.rows[static_cast<std::size_t>(t)]) {
      std::printf("  s=%d l=(%4.1f,%4.1f)  % .6e % .6e\n", w.s + 1, 0.5 * w.two_lx, 0.5 * w.two_ly, w.value.real(),
                  w.value.imag());
    }
  }
  return 0;
}
