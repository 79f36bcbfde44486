#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <type_traits>
#include <vector>

#include "helmdpg/errors.hpp"
#include "helmdpg/numkit/matrix.hpp"

namespace helmdpg {

/// Lower-triangular Cholesky factor L with A = L L^H.
template <typename T>
class Cholesky {
 public:
  using Real = real_of_t<T>;

  /// Pivots at or below `rel_tol * max|A_ii|` are rejected as NotPositiveDefinite.
  explicit Cholesky(const Matrix<T>& a, double rel_tol = 1e-14) : l_(a.rows(), a.cols()) {
    if (!a.is_square()) throw Error(ErrorKind::DimensionMismatch, "Cholesky needs a square matrix");
    using std::sqrt;
    const std::size_t n = a.rows();
    Real max_diag(0);
    for (std::size_t i = 0; i < n; ++i) {
      const Real d = real_part(a(i, i));
      if (d > max_diag) max_diag = d;
    }
    const Real tol = Real(rel_tol) * max_diag;
    for (std::size_t j = 0; j < n; ++j) {
      Real d = real_part(a(j, j));
      for (std::size_t k = 0; k < j; ++k) d -= abs2(l_(j, k));
      if (!(d > tol)) {
        throw Error(ErrorKind::NotPositiveDefinite,
                    "pivot " + std::to_string(static_cast<double>(d)) + " at index " + std::to_string(j));
      }
      const Real ljj = sqrt(d);
      l_(j, j) = T(ljj);
      for (std::size_t i = j + 1; i < n; ++i) {
        T s = a(i, j);
        for (std::size_t k = 0; k < j; ++k) s -= l_(i, k) * conj_of(l_(j, k));
        l_(i, j) = s / ljj;
      }
    }
  }

  std::size_t size() const { return l_.rows(); }
  const Matrix<T>& factor() const { return l_; }

  /// Solves A X = B column by column.
  Matrix<T> solve(const Matrix<T>& b) const {
    const std::size_t n = l_.rows();
    if (b.rows() != n) throw Error(ErrorKind::DimensionMismatch, "Cholesky solve rhs rows");
    Matrix<T> x = b;
    for (std::size_t c = 0; c < b.cols(); ++c) {
      for (std::size_t i = 0; i < n; ++i) {
        T s = x(i, c);
        for (std::size_t k = 0; k < i; ++k) s -= l_(i, k) * x(k, c);
        x(i, c) = s / real_part(l_(i, i));
      }
      for (std::size_t ii = n; ii-- > 0;) {
        T s = x(ii, c);
        for (std::size_t k = ii + 1; k < n; ++k) s -= conj_of(l_(k, ii)) * x(k, c);
        x(ii, c) = s / real_part(l_(ii, ii));
      }
    }
    return x;
  }

  Real min_pivot() const {
    Real m = real_part(l_(0, 0));
    for (std::size_t i = 1; i < l_.rows(); ++i) m = std::min(m, real_part(l_(i, i)));
    return m * m;
  }

 private:
  static Real real_part(const T& z) {
    if constexpr (is_complex_v<T>) {
      return z.real();
    } else {
      return z;
    }
  }

  Matrix<T> l_;
};

/// Induced 1-norm (max column sum).
template <typename T>
double one_norm(const Matrix<T>& a) {
  using std::sqrt;
  double best = 0.0;
  for (std::size_t j = 0; j < a.cols(); ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) s += static_cast<double>(sqrt(abs2(a(i, j))));
    best = std::max(best, s);
  }
  return best;
}

template <typename T>
struct HermitianSolveResult {
  Matrix<T> x;
  double condition_estimate = 0.0;  // 1-norm condition number
  bool ill_conditioned = false;     // set in double precision when condition > 1e12
};

/// Solves G X = rhs for Hermitian positive definite G by Cholesky.
/// The condition estimate is the exact 1-norm condition number for n <= 256.
template <typename T>
HermitianSolveResult<T> hermitian_solve(const Matrix<T>& g, const Matrix<T>& rhs) {
  if (!g.is_square() || rhs.rows() != g.rows()) {
    throw Error(ErrorKind::DimensionMismatch, "hermitian_solve: G " + g.shape() + ", rhs " + rhs.shape());
  }
  Cholesky<T> chol(g);
  HermitianSolveResult<T> out;
  out.x = chol.solve(rhs);
  if (g.rows() <= 256) {
    const Matrix<T> inv = chol.solve(Matrix<T>::identity(g.rows()));
    out.condition_estimate = one_norm(g) * one_norm(inv);
  } else {
    const double d = static_cast<double>(chol.min_pivot());
    out.condition_estimate = one_norm(g) / std::max(d, std::numeric_limits<double>::min());
  }
  out.ill_conditioned = std::is_same_v<real_of_t<T>, double> && out.condition_estimate > 1e12;
  return out;
}

/// LU factorization with partial pivoting; returns the determinant.
template <typename T>
T lu_determinant(Matrix<T> a) {
  if (!a.is_square()) throw Error(ErrorKind::DimensionMismatch, "determinant needs a square matrix");
  const std::size_t n = a.rows();
  T det(1);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    auto best = abs2(a(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      auto v = abs2(a(i, k));
      if (v > best) {
        best = v;
        p = i;
      }
    }
    if (best == decltype(best)(0)) return T(0);
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      det = -det;
    }
    det *= a(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const T f = a(i, k) / a(k, k);
      for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return det;
}

/// General inverse by Gauss-Jordan with partial pivoting (small matrices).
template <typename T>
Matrix<T> lu_inverse(Matrix<T> a, ErrorKind on_singular = ErrorKind::SolveFailure) {
  if (!a.is_square()) throw Error(ErrorKind::DimensionMismatch, "inverse needs a square matrix");
  const std::size_t n = a.rows();
  Matrix<T> inv = Matrix<T>::identity(n);
  double scale = max_abs(a);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    auto best = abs2(a(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      auto v = abs2(a(i, k));
      if (v > best) {
        best = v;
        p = i;
      }
    }
    using std::sqrt;
    if (!(static_cast<double>(sqrt(best)) > 1e-14 * scale)) {
      throw Error(on_singular, "singular pivot at column " + std::to_string(k));
    }
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(k, j), a(p, j));
        std::swap(inv(k, j), inv(p, j));
      }
    }
    const T piv = a(k, k);
    for (std::size_t j = 0; j < n; ++j) {
      a(k, j) /= piv;
      inv(k, j) /= piv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k) continue;
      const T f = a(i, k);
      if (f == T(0)) continue;
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) -= f * a(k, j);
        inv(i, j) -= f * inv(k, j);
      }
    }
  }
  return inv;
}

/// Cofactor-expansion determinant for 1x1, 2x2, 3x3 matrices.
template <typename T>
T small_determinant(const Matrix<T>& f) {
  if (!f.is_square() || f.rows() == 0 || f.rows() > 3) {
    throw Error(ErrorKind::DimensionMismatch, "small_determinant supports 1x1..3x3, got " + f.shape());
  }
  switch (f.rows()) {
    case 1: return f(0, 0);
    case 2: return f(0, 0) * f(1, 1) - f(0, 1) * f(1, 0);
    default:
      return f(0, 0) * (f(1, 1) * f(2, 2) - f(1, 2) * f(2, 1)) -
             f(0, 1) * (f(1, 0) * f(2, 2) - f(1, 2) * f(2, 0)) +
             f(0, 2) * (f(1, 0) * f(2, 1) - f(1, 1) * f(2, 0));
  }
}

template <typename T>
T det1(const Matrix<T>& f) {
  if (f.rows() != 1 || f.cols() != 1) throw Error(ErrorKind::DimensionMismatch, "det1 needs 1x1");
  return small_determinant(f);
}
template <typename T>
T det2(const Matrix<T>& f) {
  if (f.rows() != 2 || f.cols() != 2) throw Error(ErrorKind::DimensionMismatch, "det2 needs 2x2");
  return small_determinant(f);
}
template <typename T>
T det3(const Matrix<T>& f) {
  if (f.rows() != 3 || f.cols() != 3) throw Error(ErrorKind::DimensionMismatch, "det3 needs 3x3");
  return small_determinant(f);
}

/// Adjugate of a 1x1..3x3 matrix, so that F adj(F) = det(F) I.
template <typename T>
Matrix<T> small_adjugate(const Matrix<T>& f) {
  if (!f.is_square() || f.rows() == 0 || f.rows() > 3) {
    throw Error(ErrorKind::DimensionMismatch, "small_adjugate supports 1x1..3x3, got " + f.shape());
  }
  const std::size_t n = f.rows();
  Matrix<T> adj(n, n);
  if (n == 1) {
    adj(0, 0) = T(1);
  } else if (n == 2) {
    adj(0, 0) = f(1, 1);
    adj(0, 1) = -f(0, 1);
    adj(1, 0) = -f(1, 0);
    adj(1, 1) = f(0, 0);
  } else {
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 3; ++j) {
        // cofactor C_ji goes to adj(i, j)
        const std::size_t r0 = (j + 1) % 3, r1 = (j + 2) % 3;
        const std::size_t c0 = (i + 1) % 3, c1 = (i + 2) % 3;
        adj(i, j) = f(r0, c0) * f(r1, c1) - f(r0, c1) * f(r1, c0);
      }
    }
  }
  return adj;
}

/// Certified-in-floating-point lower bound on the smallest eigenvalue of a
/// Hermitian matrix: the largest shift sigma found by bisection for which
/// H - sigma I admits a Cholesky factorization with positive pivots.
/// `hermitian_tol` is the relative defect ||H - H^H|| / ||H|| tolerated.
template <typename T>
double min_eigenvalue_bound(const Matrix<T>& h, double hermitian_tol = 1e-10) {
  if (!h.is_square()) throw Error(ErrorKind::DimensionMismatch, "min_eigenvalue_bound needs a square matrix");
  const double defect = hermitian_defect(h);
  if (defect > hermitian_tol) {
    throw Error(ErrorKind::NotHermitian, "relative Hermitian defect " + std::to_string(defect));
  }
  const Matrix<T> hs = hermitian_part(h);
  const std::size_t n = hs.rows();
  using Real = real_of_t<T>;
  using std::sqrt;
  // Gershgorin interval.
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t i = 0; i < n; ++i) {
    double radius = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) radius += static_cast<double>(sqrt(abs2(hs(i, j))));
    double d;
    if constexpr (is_complex_v<T>) {
      d = static_cast<double>(hs(i, i).real());
    } else {
      d = static_cast<double>(hs(i, i));
    }
    lo = std::min(lo, d - radius);
    hi = std::max(hi, d + radius);
  }
  const double scale = std::max({std::abs(lo), std::abs(hi), std::numeric_limits<double>::min()});
  lo -= 1e-12 * scale;
  auto positive_definite_after_shift = [&](double sigma) {
    Matrix<T> m = hs;
    for (std::size_t i = 0; i < n; ++i) m(i, i) -= T(Real(sigma));
    // Plain LDL^H pivots with zero tolerance: strict positivity is the test.
    Matrix<T> l(n, n);
    for (std::size_t j = 0; j < n; ++j) {
      Real d;
      if constexpr (is_complex_v<T>) {
        d = m(j, j).real();
      } else {
        d = m(j, j);
      }
      for (std::size_t k = 0; k < j; ++k) d -= abs2(l(j, k));
      if (!(d > Real(0))) return false;
      const Real ljj = sqrt(d);
      l(j, j) = T(ljj);
      for (std::size_t i = j + 1; i < n; ++i) {
        T s = m(i, j);
        for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * conj_of(l(j, k));
        l(i, j) = s / ljj;
      }
    }
    return true;
  };
  if (!positive_definite_after_shift(lo)) {
    // Rounding pushed past the Gershgorin bound; widen once.
    lo -= 1e-8 * scale;
  }
  double a = lo, b = hi;
  while (b - a > 1e-14 * scale) {
    const double mid = 0.5 * (a + b);
    if (mid == a || mid == b) break;
    if (positive_definite_after_shift(mid)) {
      a = mid;
    } else {
      b = mid;
    }
  }
  return a;
}

}  // namespace helmdpg
