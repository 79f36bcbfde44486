#pragma once

#include <complex>
#include <type_traits>

namespace helmdpg {

/// Minimal complex number over an arbitrary real type. std::complex is only
/// specified for the built-in floating types, so multiprecision reals use this.
template <typename R>
struct Complex {
  R re{};
  R im{};

  Complex() = default;
  Complex(const R& r) : re(r), im(0) {}  // NOLINT(google-explicit-constructor)
  template <typename A, typename = std::enable_if_t<std::is_arithmetic_v<A>>>
  Complex(A r) : re(r), im(0) {}  // NOLINT(google-explicit-constructor)
  Complex(const R& r, const R& i) : re(r), im(i) {}
  explicit Complex(const std::complex<double>& z) : re(z.real()), im(z.imag()) {}

  const R& real() const { return re; }
  const R& imag() const { return im; }

  Complex& operator+=(const Complex& o) { re += o.re; im += o.im; return *this; }
  Complex& operator-=(const Complex& o) { re -= o.re; im -= o.im; return *this; }
  Complex& operator*=(const Complex& o) { return *this = *this * o; }
  Complex& operator/=(const Complex& o) { return *this = *this / o; }
  Complex& operator*=(const R& s) { re *= s; im *= s; return *this; }

  friend Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
  friend Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }
  friend Complex operator-(const Complex& a) { return {-a.re, -a.im}; }
  friend Complex operator*(const Complex& a, const Complex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend Complex operator*(const Complex& a, const R& s) { return {a.re * s, a.im * s}; }
  friend Complex operator*(const R& s, const Complex& a) { return {a.re * s, a.im * s}; }
  friend Complex operator/(const Complex& a, const R& s) { return {a.re / s, a.im / s}; }
  friend Complex operator/(const Complex& a, const Complex& b) {
    const R d = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
  }
  friend bool operator==(const Complex& a, const Complex& b) { return a.re == b.re && a.im == b.im; }

  friend Complex conj(const Complex& z) { return {z.re, -z.im}; }
  friend R norm(const Complex& z) { return z.re * z.re + z.im * z.im; }
  friend R abs(const Complex& z) {
    using std::sqrt;
    return sqrt(z.re * z.re + z.im * z.im);
  }
  friend R real(const Complex& z) { return z.re; }
  friend R imag(const Complex& z) { return z.im; }
};

/// Complex scalar over R: std::complex for built-in reals, Complex<R> otherwise.
template <typename R>
using cplx = std::conditional_t<std::is_floating_point_v<R>, std::complex<R>, Complex<R>>;

template <typename R>
cplx<R> make_cplx(const R& re, const R& im) {
  return cplx<R>(re, im);
}

template <typename R>
cplx<R> from_std(const std::complex<double>& z) {
  if constexpr (std::is_floating_point_v<R>) {
    return cplx<R>(static_cast<R>(z.real()), static_cast<R>(z.imag()));
  } else {
    return cplx<R>(R(z.real()), R(z.imag()));
  }
}

template <typename Z>
std::complex<double> to_std(const Z& z) {
  return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

/// Real type underlying a scalar (real or complex).
template <typename T>
struct real_of {
  using type = T;
};
template <typename R>
struct real_of<std::complex<R>> {
  using type = R;
};
template <typename R>
struct real_of<Complex<R>> {
  using type = R;
};
template <typename T>
using real_of_t = typename real_of<T>::type;

template <typename T>
inline constexpr bool is_complex_v = !std::is_same_v<real_of_t<T>, T>;

/// |z|^2 for real or complex scalars.
template <typename T>
real_of_t<T> abs2(const T& z) {
  if constexpr (is_complex_v<T>) {
    using std::norm;
    return norm(z);
  } else {
    return z * z;
  }
}

template <typename T>
T conj_of(const T& z) {
  if constexpr (is_complex_v<T>) {
    using std::conj;
    return conj(z);
  } else {
    return z;
  }
}

}  // namespace helmdpg
