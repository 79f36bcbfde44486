#pragma once

#include <complex>
#include <span>
#include <vector>

#include "helmdpg/localforms/dpg_element.hpp"

namespace helmdpg {

/// Static condensation of an 11x11 element matrix onto its 8 trace DOFs.
/// Trace DOF order: vertices counterclockwise from the origin corner, then the
/// bottom/top horizontal-edge fluxes, then the left/right vertical-edge fluxes.
template <typename T>
struct CondensedElement {
  static constexpr std::size_t kInterior = TrialBasis11::kInterior;
  static constexpr std::size_t kTrace = TrialBasis11::kTrace;

  Matrix<T> S;                  // 8x8 Schur complement B_TT - B_TI B_II^{-1} B_IT
  Matrix<T> recovery;           // 3x8, x_I = recovery * x_T + interior_inverse * l_I
  Matrix<T> interior_inverse;   // 3x3, B_II^{-1}
  Matrix<T> trace_interior;     // 8x3, B_TI

  /// Condensed load l_T - B_TI B_II^{-1} l_I for an 11-entry load vector.
  std::vector<T> condense_load(std::span<const T> load) const {
    std::vector<T> li(kInterior), tmp(kInterior, T(0)), out(kTrace);
    for (std::size_t i = 0; i < kInterior; ++i) li[i] = load[i];
    for (std::size_t i = 0; i < kInterior; ++i)
      for (std::size_t j = 0; j < kInterior; ++j) tmp[i] += interior_inverse(i, j) * li[j];
    for (std::size_t t = 0; t < kTrace; ++t) {
      T s = load[kInterior + t];
      for (std::size_t j = 0; j < kInterior; ++j) s -= trace_interior(t, j) * tmp[j];
      out[t] = s;
    }
    return out;
  }

  /// Interior unknowns from trace unknowns and the interior part of the load.
  std::array<T, kInterior> recover(std::span<const T> trace, std::span<const T> interior_load) const {
    std::array<T, kInterior> x{};
    for (std::size_t i = 0; i < kInterior; ++i) {
      T s(0);
      for (std::size_t t = 0; t < kTrace; ++t) s += recovery(i, t) * trace[t];
      for (std::size_t j = 0; j < kInterior; ++j) s += interior_inverse(i, j) * interior_load[j];
      x[i] = s;
    }
    return x;
  }
};

template <typename T>
CondensedElement<T> condense(const Matrix<T>& b) {
  constexpr std::size_t ni = TrialBasis11::kInterior;
  constexpr std::size_t nt = TrialBasis11::kTrace;
  if (b.rows() != ni + nt || b.cols() != ni + nt) {
    throw Error(ErrorKind::DimensionMismatch, "condense expects an 11x11 matrix, got " + b.shape());
  }
  CondensedElement<T> c;
  const Matrix<T> bii = b.block(0, 0, ni, ni);
  const Matrix<T> bit = b.block(0, ni, ni, nt);
  c.trace_interior = b.block(ni, 0, nt, ni);
  c.interior_inverse = lu_inverse(bii, ErrorKind::InteriorBlockSingular);
  Matrix<T> solved = c.interior_inverse * bit;  // B_II^{-1} B_IT
  c.S = b.block(ni, ni, nt, nt) - c.trace_interior * solved;
  solved *= real_of_t<T>(-1);
  c.recovery = std::move(solved);
  return c;
}

template <typename To, typename From>
CondensedElement<To> convert_condensed(const CondensedElement<From>& c) {
  return {convert<To>(c.S), convert<To>(c.recovery), convert<To>(c.interior_inverse),
          convert<To>(c.trace_interior)};
}

/// Element matrices and their condensation, both computed in the working
/// precision and returned in double.
struct DpgLocalSystem {
  DpgElementMatrices<std::complex<double>> element;
  CondensedElement<std::complex<double>> condensed;
};

inline DpgLocalSystem dpg_local_system(const NormalizedParams& params, const ElementOptions& opts = {}) {
  params.validate();
  using CD = std::complex<double>;
  Precision prec = params.precision;
  if (!prec.is_extended() && opts.escalate && params.eps_n < opts.escalate_eps_below) {
    prec = Precision::extended(opts.extended_digits);
  }
  auto compute = [&](const Precision& p) {
    return with_precision(p, [&]<typename R>() {
      auto e = dpg_element_in<R>(params.omega_n, params.eps_n, params.r);
      auto c = condense(e.B);
      return DpgLocalSystem{convert_element<CD>(e, p), convert_condensed<CD>(c)};
    });
  };
  DpgLocalSystem sys = compute(prec);
  if (!prec.is_extended() && sys.element.gram_condition > opts.escalate_condition_above) {
    if (!opts.escalate) {
      throw Error(ErrorKind::IllConditioned, "Gram condition estimate " +
                                                 std::to_string(sys.element.gram_condition) +
                                                 " in double precision");
    }
    sys = compute(Precision::extended(opts.extended_digits));
  }
  return sys;
}

}  // namespace helmdpg
