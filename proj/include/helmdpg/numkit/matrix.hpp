#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "helmdpg/errors.hpp"
#include "helmdpg/numkit/complex.hpp"

namespace helmdpg {

/// Dense row-major matrix over a real or complex scalar.
template <typename T>
class Matrix {
 public:
  using value_type = T;

  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<T> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_) {
      throw Error(ErrorKind::DimensionMismatch, "matrix data size does not match shape");
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  static Matrix diagonal(std::span<const T> d) {
    Matrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<T> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const T> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  const std::vector<T>& data() const { return data_; }

  Matrix& operator+=(const Matrix& o) {
    check_same_shape(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    check_same_shape(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  template <typename S>
  Matrix& operator*=(const S& s) {
    for (auto& v : data_) v *= s;
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) {
      throw Error(ErrorKind::DimensionMismatch, "matrix product " + a.shape() + " * " + b.shape());
    }
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T aik = a(i, k);
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    }
    return c;
  }

  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    Matrix m(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) m(i, j) = (*this)(r0 + i, c0 + j);
    return m;
  }

  std::string shape() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

 private:
  void check_same_shape(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) {
      throw Error(ErrorKind::DimensionMismatch, "shape " + shape() + " vs " + o.shape());
    }
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

template <typename R>
using CMatrix = Matrix<cplx<R>>;

using CMatrixD = Matrix<std::complex<double>>;

template <typename T>
Matrix<T> adjoint(const Matrix<T>& a) {
  Matrix<T> m(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(j, i) = conj_of(a(i, j));
  return m;
}

template <typename T>
Matrix<T> transpose(const Matrix<T>& a) {
  Matrix<T> m(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(j, i) = a(i, j);
  return m;
}

/// Frobenius norm, reported in double.
template <typename T>
double frobenius_norm(const Matrix<T>& a) {
  real_of_t<T> s(0);
  for (const auto& v : a.data()) s += abs2(v);
  using std::sqrt;
  return static_cast<double>(sqrt(s));
}

template <typename T>
double max_abs(const Matrix<T>& a) {
  double m = 0.0;
  using std::sqrt;
  for (const auto& v : a.data()) m = std::max(m, static_cast<double>(sqrt(abs2(v))));
  return m;
}

/// ||A - A^H||_F / ||A||_F (zero for the zero matrix).
template <typename T>
double hermitian_defect(const Matrix<T>& a) {
  if (!a.is_square()) throw Error(ErrorKind::DimensionMismatch, "hermitian_defect needs a square matrix");
  const double n = frobenius_norm(a);
  if (n == 0.0) return 0.0;
  return frobenius_norm(a - adjoint(a)) / n;
}

/// (A + A^H) / 2.
template <typename T>
Matrix<T> hermitian_part(const Matrix<T>& a) {
  Matrix<T> h = a + adjoint(a);
  h *= real_of_t<T>(0.5);
  return h;
}

/// Entrywise conversion between scalar types, e.g. extended to double.
template <typename To, typename From>
Matrix<To> convert(const Matrix<From>& a) {
  Matrix<To> m(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const auto& v = a(i, j);
      if constexpr (is_complex_v<From> && is_complex_v<To>) {
        using RT = real_of_t<To>;
        m(i, j) = To(static_cast<RT>(v.real()), static_cast<RT>(v.imag()));
      } else if constexpr (is_complex_v<To>) {
        using RT = real_of_t<To>;
        m(i, j) = To(static_cast<RT>(v), RT(0));
      } else {
        m(i, j) = static_cast<To>(v);
      }
    }
  }
  return m;
}

template <typename T>
Matrix<T> column_vector(std::span<const T> v) {
  Matrix<T> m(v.size(), 1);
  for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
  return m;
}

}  // namespace helmdpg
