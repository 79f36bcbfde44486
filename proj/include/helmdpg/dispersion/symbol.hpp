#pragma once

#include <cmath>
#include <complex>

#include "helmdpg/numkit/linalg.hpp"
#include "helmdpg/stencil/stencil.hpp"

namespace helmdpg {

/// F(w) and dF/dw for the normalized wavenumber w = omega_h h:
///   F_ts(w) = sum_l D_{t,s,l} exp(i w d.l),  d = (cos theta, sin theta).
struct SymbolMatrix {
  CMatrixD F;
  CMatrixD dF;
  double scale = 0.0;  // prod_t sum_{s,l} |D_{t,s,l} exp(i w d.l)|, a bound on |det F|
};

inline SymbolMatrix symbol_normalized(const StencilSet& st, cd w, double theta) {
  const std::size_t S = static_cast<std::size_t>(st.S);
  SymbolMatrix m{CMatrixD(S, S), CMatrixD(S, S), 1.0};
  const double c = std::cos(theta), s = std::sin(theta);
  const cd iu(0.0, 1.0);
  for (std::size_t t = 0; t < S; ++t) {
    double row_abs = 0.0;
    for (const auto& wt : st.rows[t]) {
      const double proj = 0.5 * (c * wt.two_lx + s * wt.two_ly);
      const cd term = wt.value * std::exp(iu * w * proj);
      m.F(t, static_cast<std::size_t>(wt.s)) += term;
      m.dF(t, static_cast<std::size_t>(wt.s)) += iu * proj * term;
      row_abs += std::abs(term);
    }
    m.scale *= row_abs;
  }
  return m;
}

/// Symbol at the physical discrete wavenumber omega_h; dF is taken with respect to omega_h.
inline SymbolMatrix symbol(const StencilSet& st, cd omega_h, double theta, double h) {
  auto m = symbol_normalized(st, omega_h * h, theta);
  m.dF *= cd(h);
  return m;
}

struct DetValue {
  cd g;
  cd dg;
  double scale = 0.0;
};

/// det F and its derivative by Jacobi's formula d det F = tr(adj(F) dF). The
/// symbol is accumulated in long double; near-coincident conjugate roots make
/// det F sensitive to rounding in its evaluation.
inline DetValue det_symbol(const StencilSet& st, cd w, double theta) {
  using ld = long double;
  using cld = std::complex<ld>;
  const std::size_t S = static_cast<std::size_t>(st.S);
  Matrix<cld> f(S, S), df(S, S);
  const ld c = std::cos(static_cast<ld>(theta)), s = std::sin(static_cast<ld>(theta));
  const cld iw = cld(0.0L, 1.0L) * cld(w.real(), w.imag());
  ld scale = 1.0L;
  for (std::size_t t = 0; t < S; ++t) {
    ld row_abs = 0.0L;
    for (const auto& wt : st.rows[t]) {
      const ld proj = 0.5L * (c * wt.two_lx + s * wt.two_ly);
      const cld term = cld(wt.value.real(), wt.value.imag()) * std::exp(iw * proj);
      f(t, static_cast<std::size_t>(wt.s)) += term;
      df(t, static_cast<std::size_t>(wt.s)) += cld(0.0L, proj) * term;
      row_abs += std::abs(term);
    }
    scale *= row_abs;
  }
  const auto adj = small_adjugate(f);
  cld tr(0.0L);
  for (std::size_t i = 0; i < S; ++i)
    for (std::size_t k = 0; k < S; ++k) tr += adj(i, k) * df(k, i);
  const cld g = small_determinant(f);
  return {cd(static_cast<double>(g.real()), static_cast<double>(g.imag())),
          cd(static_cast<double>(tr.real()), static_cast<double>(tr.imag())), static_cast<double>(scale)};
}

}  // namespace helmdpg
