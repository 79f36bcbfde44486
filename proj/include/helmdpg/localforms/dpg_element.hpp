#pragma once

#include <array>
#include <complex>
#include <string>

#include "helmdpg/errors.hpp"
#include "helmdpg/numkit/linalg.hpp"
#include "helmdpg/numkit/precision.hpp"
#include "helmdpg/refelem/tabulate.hpp"

namespace helmdpg {

/// Reference-element parameters: omega_n = omega*h and eps_n = eps*h.
struct NormalizedParams {
  double omega_n = 1.0;
  double eps_n = 1.0;
  int r = 3;
  Precision precision = Precision::double_precision();

  void validate() const {
    if (!(omega_n > 0.0)) throw Error(ErrorKind::InvalidParameter, "omega_n must be positive");
    if (!(eps_n >= 0.0)) throw Error(ErrorKind::InvalidParameter, "eps_n must be nonnegative");
    if (r < 2) throw Error(ErrorKind::REnrichmentTooSmall, "r must be >= 2, got " + std::to_string(r));
    if (eps_n == 0.0 && !precision.is_extended()) {
      throw Error(ErrorKind::InvalidParameter, "eps_n = 0 requires extended precision");
    }
  }
};

/// Local DPG matrices on the reference square.
///   G  : Gram matrix of V^r in the scaled graph norm, G(k,l) = <v_l, v_k>_V
///   Bb : Bb(k,i) = b(e_i, v_k)
///   X  : Riesz representers, G X = Bb (column i holds T^r e_i)
///   B  : X^H Bb = Bb^H G^{-1} Bb, the 11x11 element matrix
template <typename T>
struct DpgElementMatrices {
  Matrix<T> G;
  Matrix<T> Bb;
  Matrix<T> X;
  Matrix<T> B;
  double gram_condition = 0.0;
  Precision precision_used;
};

/// Quadrature points per direction for the enriched test space of degree r.
inline int test_space_quadrature_points(int r) { return r + 2; }

/// Assembles G and Bb in the working real type R.
template <typename R>
void assemble_gram_and_form(const TestSpaceBasis& basis, const R& omega, const R& eps, Matrix<cplx<R>>& g,
                            Matrix<cplx<R>>& bb) {
  using C = cplx<R>;
  const auto rule = tensor_gauss_rule<R>(test_space_quadrature_points(basis.r));
  const auto tab = tabulate<R>(basis, rule);
  const std::size_t m = basis.dim();
  g = Matrix<C>(m, m);
  bb = Matrix<C>(m, TrialBasis11::kSize);
  const R eps2 = eps * eps;
  std::vector<std::array<C, 3>> av(m);
  for (std::size_t q = 0; q < rule.size(); ++q) {
    const R w = rule.points[q].w;
    const auto& vals = tab.volume[q];
    // A_h v = (i omega v + grad eta, i omega eta + div v)
    for (std::size_t k = 0; k < m; ++k) {
      const auto& v = vals[k];
      av[k] = {C(v.eta_x, omega * v.vx), C(v.eta_y, omega * v.vy), C(v.div, omega * v.eta)};
    }
    for (std::size_t k = 0; k < m; ++k) {
      const std::array<C, 3> ck = {conj_of(av[k][0]), conj_of(av[k][1]), conj_of(av[k][2])};
      for (std::size_t l = 0; l < m; ++l) {
        C s = av[l][0] * ck[0] + av[l][1] * ck[1] + av[l][2] * ck[2];
        const R mass = vals[l].vx * vals[k].vx + vals[l].vy * vals[k].vy + vals[l].eta * vals[k].eta;
        s += C(eps2 * mass, R(0));
        g(k, l) += s * w;
      }
      // Field trial functions: -<e_i, A_h v_k>.
      for (std::size_t c = 0; c < 3; ++c) bb(k, c) -= ck[c] * w;
    }
  }
  for (LocalEdge e : kLocalEdges) {
    const auto& et = tab.edges[static_cast<int>(e)];
    const int sign = EdgeOrientation::sign(e);
    const std::size_t flux_index = 7 + static_cast<std::size_t>(e);
    for (std::size_t q = 0; q < et.points.size(); ++q) {
      const R w = et.weights[q];
      for (std::size_t k = 0; k < m; ++k) {
        const auto& tv = et.test[q][k];
        // <<phi_hat_a, v.n>> and <<flux * (n_g . n), eta>>; test values are real.
        for (int a = 0; a < 4; ++a) bb(k, 3 + a) += C(w * et.vertex_trace[q][a] * tv.vn, R(0));
        bb(k, flux_index) += C(w * R(sign) * tv.eta, R(0));
      }
    }
  }
}

/// Computes the element matrices entirely in the real type R.
template <typename R>
DpgElementMatrices<cplx<R>> dpg_element_in(double omega_n, double eps_n, int r) {
  const auto basis = build_test_basis(r);
  DpgElementMatrices<cplx<R>> out;
  assemble_gram_and_form<R>(basis, R(omega_n), R(eps_n), out.G, out.Bb);
  auto solved = hermitian_solve(out.G, out.Bb);
  out.X = std::move(solved.x);
  out.gram_condition = solved.condition_estimate;
  out.B = adjoint(out.X) * out.Bb;
  return out;
}

struct ElementOptions {
  bool escalate = true;          // recompute in extended precision when needed
  int extended_digits = 32;
  double escalate_eps_below = 1e-3;
  double escalate_condition_above = 1e12;
};

template <typename To, typename From>
DpgElementMatrices<To> convert_element(const DpgElementMatrices<From>& e, Precision used) {
  DpgElementMatrices<To> out;
  out.G = convert<To>(e.G);
  out.Bb = convert<To>(e.Bb);
  out.X = convert<To>(e.X);
  out.B = convert<To>(e.B);
  out.gram_condition = e.gram_condition;
  out.precision_used = used;
  return out;
}

/// Element matrices in double, computed at the requested precision. Under the
/// default options a double-precision request is escalated to extended
/// precision when eps_n < 1e-3 or the Gram condition estimate exceeds 1e12.
inline DpgElementMatrices<std::complex<double>> dpg_element(const NormalizedParams& params,
                                                            const ElementOptions& opts = {}) {
  params.validate();
  using CD = std::complex<double>;
  auto compute = [&](const Precision& prec) {
    return with_precision(prec, [&]<typename R>() {
      return convert_element<CD>(dpg_element_in<R>(params.omega_n, params.eps_n, params.r), prec);
    });
  };
  if (params.precision.is_extended()) return compute(params.precision);
  const Precision ext = Precision::extended(opts.extended_digits);
  if (opts.escalate && params.eps_n < opts.escalate_eps_below) return compute(ext);
  auto e = compute(params.precision);
  if (e.gram_condition > opts.escalate_condition_above) {
    if (opts.escalate) return compute(ext);
    throw Error(ErrorKind::IllConditioned,
                "Gram condition estimate " + std::to_string(e.gram_condition) + " in double precision");
  }
  return e;
}

/// B on a physical square of side h from the reference matrix at (omega h, eps h).
template <typename T>
Matrix<T> scale_to_physical(const Matrix<T>& b_ref, double h) {
  if (!(h > 0.0)) throw Error(ErrorKind::InvalidParameter, "h must be positive");
  Matrix<T> b = b_ref;
  b *= real_of_t<T>(h * h);
  return b;
}

}  // namespace helmdpg
