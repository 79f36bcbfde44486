#pragma once

#include <array>
#include <complex>
#include <functional>

#include "helmdpg/errors.hpp"
#include "helmdpg/numkit/matrix.hpp"
#include "helmdpg/numkit/quadrature.hpp"
#include "helmdpg/refelem/bases.hpp"

namespace helmdpg {

using cd = std::complex<double>;

/// Source term f = A(u, phi) as a function of physical coordinates.
using SourceFn = std::function<std::array<cd, 3>(double, double)>;

// ---------------------------------------------------------------------------
// Conforming RT_0 x Q_1 pair used by the L2 least-squares baseline.
// DOF order matches the condensed DPG element: 4 vertex values, then the
// normal components (along the global normal) on bottom, top, left, right.
// ---------------------------------------------------------------------------

struct ConformingValue {
  std::array<double, 2> u{};  // vector field
  double div = 0.0;
  double phi = 0.0;
  std::array<double, 2> grad_phi{};
};

/// Value of conforming basis function i at reference point (x, y).
inline ConformingValue conforming_basis(std::size_t i, double x, double y) {
  ConformingValue v;
  if (i < 4) {
    v.phi = bilinear_nodal(static_cast<int>(i), x, y);
    v.grad_phi = bilinear_nodal_gradient(static_cast<int>(i), x, y);
    return v;
  }
  switch (i) {
    case 4: v.u = {0.0, 1.0 - y}; v.div = -1.0; break;  // bottom
    case 5: v.u = {0.0, y}; v.div = 1.0; break;         // top
    case 6: v.u = {1.0 - x, 0.0}; v.div = -1.0; break;  // left
    case 7: v.u = {x, 0.0}; v.div = 1.0; break;         // right
    default: throw Error(ErrorKind::InvalidParameter, "conforming basis index out of range");
  }
  return v;
}

/// A e_i in normalized variables: (i w u + grad phi, i w phi + div u).
inline std::array<cd, 3> conforming_image(std::size_t i, double omega_n, double x, double y) {
  const auto v = conforming_basis(i, x, y);
  const cd iw(0.0, omega_n);
  return {iw * v.u[0] + v.grad_phi[0], iw * v.u[1] + v.grad_phi[1], iw * v.phi + v.div};
}

/// Normal-equation matrix M(i,j) = int A e_j . conj(A e_i) on the reference
/// square. The physical matrix on a square of side h equals M(omega h).
inline CMatrixD fosls_element(double omega_n) {
  if (!(omega_n > 0.0)) throw Error(ErrorKind::InvalidParameter, "omega_n must be positive");
  const auto rule = tensor_gauss_rule<double>(3);
  CMatrixD m(8, 8);
  for (const auto& p : rule.points) {
    std::array<std::array<cd, 3>, 8> img;
    for (std::size_t i = 0; i < 8; ++i) img[i] = conforming_image(i, omega_n, p.x, p.y);
    for (std::size_t i = 0; i < 8; ++i)
      for (std::size_t j = 0; j < 8; ++j)
        for (int c = 0; c < 3; ++c) m(i, j) += p.w * img[j][c] * std::conj(img[i][c]);
  }
  return m;
}

/// Physical load l_i = int_K f . conj(A e_i) on the square [x0, x0+h] x [y0, y0+h].
inline std::array<cd, 8> fosls_load(const SourceFn& f, double omega, double x0, double y0, double h,
                                    int points = 6) {
  const auto rule = tensor_gauss_rule<double>(points);
  std::array<cd, 8> l{};
  const double omega_n = omega * h;
  for (const auto& p : rule.points) {
    const auto fv = f(x0 + h * p.x, y0 + h * p.y);
    for (std::size_t i = 0; i < 8; ++i) {
      const auto img = conforming_image(i, omega_n, p.x, p.y);
      cd s = 0.0;
      for (int c = 0; c < 3; ++c) s += fv[c] * std::conj(img[c]);
      l[i] += p.w * s;
    }
  }
  // int_K = h^2 int_ref and A = (1/h) A_ref.
  for (auto& v : l) v *= h;
  return l;
}

// ---------------------------------------------------------------------------
// Bilinear Q_1 Galerkin element for -Laplace - omega^2, vertex DOFs only.
// ---------------------------------------------------------------------------

inline Matrix<double> q1_stiffness() {
  Matrix<double> s(4, 4);
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      const int dx = std::abs(kVertices[a][0] - kVertices[b][0]);
      const int dy = std::abs(kVertices[a][1] - kVertices[b][1]);
      if (dx + dy == 0) s(a, b) = 2.0 / 3.0;
      else if (dx + dy == 1) s(a, b) = -1.0 / 6.0;
      else s(a, b) = -1.0 / 3.0;
    }
  }
  return s;
}

inline Matrix<double> q1_mass() {
  Matrix<double> m(4, 4);
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      const int dx = std::abs(kVertices[a][0] - kVertices[b][0]);
      const int dy = std::abs(kVertices[a][1] - kVertices[b][1]);
      m(a, b) = (dx + dy == 0) ? 1.0 / 9.0 : (dx + dy == 1 ? 1.0 / 18.0 : 1.0 / 36.0);
    }
  }
  return m;
}

/// S - omega_n^2 M on the unit square; omega_n = 0 gives the pure stiffness.
inline CMatrixD fem_element(double omega_n) {
  if (!(omega_n >= 0.0)) throw Error(ErrorKind::InvalidParameter, "omega_n must be nonnegative");
  const auto s = q1_stiffness();
  const auto m = q1_mass();
  CMatrixD k(4, 4);
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = 0; b < 4; ++b) k(a, b) = s(a, b) - omega_n * omega_n * m(a, b);
  return k;
}

}  // namespace helmdpg
