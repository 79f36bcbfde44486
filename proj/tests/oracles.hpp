#pragma once

/// Independent reference computations used by the unit and acceptance tests.
/// They share no numerical code with the library: own bases, Boost quadrature,
/// Eigen or hand-written elimination, closed forms.

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <vector>

namespace oracle {

using q128 = boost::multiprecision::cpp_bin_float_quad;
using c128 = boost::multiprecision::cpp_complex_quad;

/// Gauss-Legendre nodes and weights on [0, 1] from Boost.Math.
template <int N>
std::vector<std::pair<q128, q128>> gauss01() {
  using G = boost::math::quadrature::gauss<q128, N>;
  std::vector<std::pair<q128, q128>> out;
  const auto& x = G::abscissa();
  const auto& w = G::weights();
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) {
      out.emplace_back(q128(0.5), w[i] / 2);
    } else {
      out.emplace_back((1 - x[i]) / 2, w[i] / 2);
      out.emplace_back((1 + x[i]) / 2, w[i] / 2);
    }
  }
  return out;
}

/// Solves A X = B by Gaussian elimination with partial pivoting.
inline std::vector<std::vector<c128>> solve(std::vector<std::vector<c128>> a, std::vector<std::vector<c128>> b) {
  const std::size_t n = a.size(), m = b[0].size();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (abs(a[i][k]) > abs(a[p][k])) p = i;
    std::swap(a[k], a[p]);
    std::swap(b[k], b[p]);
    for (std::size_t i = k + 1; i < n; ++i) {
      const c128 f = a[i][k] / a[k][k];
      for (std::size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
      for (std::size_t j = 0; j < m; ++j) b[i][j] -= f * b[k][j];
    }
  }
  for (std::size_t k = n; k-- > 0;) {
    for (std::size_t j = 0; j < m; ++j) {
      c128 s = b[k][j];
      for (std::size_t i = k + 1; i < n; ++i) s -= a[k][i] * b[i][j];
      b[k][j] = s / a[k][k];
    }
  }
  return b;
}

/// The 11x11 DPG element matrix assembled directly on the physical square
/// [x0, x0+h] x [y0, y0+h] with physical omega and eps, using a monomial basis
/// of RT_r x Q_{r,r} in centered coordinates and software quad-precision arithmetic.
/// Trial order: u1, u2, phi, vertex traces (CCW from (x0, y0)), fluxes on the
/// bottom, top, left, right edges (coefficients along the global normal).
template <int N>
Eigen::MatrixXcd physical_dpg_matrix(double omega_d, double eps_d, double h_d, double x0_d, double y0_d, int r) {
  const q128 omega = omega_d, eps = eps_d, h = h_d, x0 = x0_d, y0 = y0_d;
  const q128 xc = x0 + h / 2, yc = y0 + h / 2;
  struct Fn {
    int kind, a, b;  // 0: (s^a t^b, 0), 1: (0, s^a t^b), 2: eta = s^a t^b
  };
  std::vector<Fn> fns;
  for (int b = 0; b <= r - 1; ++b)
    for (int a = 0; a <= r; ++a) fns.push_back({0, a, b});
  for (int b = 0; b <= r; ++b)
    for (int a = 0; a <= r - 1; ++a) fns.push_back({1, a, b});
  for (int b = 0; b <= r; ++b)
    for (int a = 0; a <= r; ++a) fns.push_back({2, a, b});
  const std::size_t m = fns.size();
  const c128 iw(0, omega);

  auto powi = [](const q128& v, int k) {
    q128 p = 1;
    for (int i = 0; i < k; ++i) p *= v;
    return p;
  };
  struct Eval {
    q128 val, dx, dy;
  };
  auto eval = [&](const Fn& f, const q128& x, const q128& y) {
    const q128 s = (x - xc) / h, t = (y - yc) / h;
    Eval e;
    e.val = powi(s, f.a) * powi(t, f.b);
    e.dx = f.a == 0 ? q128(0) : f.a * powi(s, f.a - 1) * powi(t, f.b) / h;
    e.dy = f.b == 0 ? q128(0) : f.b * powi(s, f.a) * powi(t, f.b - 1) / h;
    return e;
  };
  // A(v, eta) = (i omega v + grad eta, i omega eta + div v)
  auto apply_a = [&](const Fn& f, const Eval& e) -> std::array<c128, 3> {
    if (f.kind == 0) return {iw * e.val, c128(0), c128(e.dx)};
    if (f.kind == 1) return {c128(0), iw * e.val, c128(e.dy)};
    return {c128(e.dx), c128(e.dy), iw * e.val};
  };

  std::vector<std::vector<c128>> g(m, std::vector<c128>(m)), bb(m, std::vector<c128>(11));
  const auto rule = gauss01<N>();
  for (const auto& [px, wx] : rule) {
    for (const auto& [py, wy] : rule) {
      const q128 x = x0 + h * px, y = y0 + h * py, w = wx * wy * h * h;
      std::vector<Eval> ev(m);
      std::vector<std::array<c128, 3>> av(m);
      for (std::size_t k = 0; k < m; ++k) {
        ev[k] = eval(fns[k], x, y);
        av[k] = apply_a(fns[k], ev[k]);
      }
      for (std::size_t k = 0; k < m; ++k) {
        for (std::size_t l = 0; l < m; ++l) {
          c128 s = 0;
          for (int c = 0; c < 3; ++c) s += av[l][c] * conj(av[k][c]);
          if (fns[k].kind == fns[l].kind) s += eps * eps * ev[l].val * ev[k].val;
          g[k][l] += w * s;
        }
        for (int c = 0; c < 3; ++c) bb[k][c] -= w * conj(av[k][c]);
      }
    }
  }
  // edges: (fixed coordinate, outward normal, sign of outward . global normal)
  struct Edge {
    bool horizontal;
    q128 fixed;
    int nx, ny, sign;
  };
  const std::array<Edge, 4> edges = {{{true, y0, 0, -1, -1}, {true, y0 + h, 0, 1, 1},
                                      {false, x0, -1, 0, -1}, {false, x0 + h, 1, 0, 1}}};
  const std::array<std::array<int, 2>, 4> verts = {{{0, 0}, {1, 0}, {1, 1}, {0, 1}}};
  for (std::size_t e = 0; e < 4; ++e) {
    const auto& ed = edges[e];
    for (const auto& [p, wp] : rule) {
      const q128 x = ed.horizontal ? x0 + h * p : ed.fixed;
      const q128 y = ed.horizontal ? ed.fixed : y0 + h * p;
      const q128 w = wp * h;
      std::array<q128, 4> hat;
      for (int a = 0; a < 4; ++a) {
        const q128 fx = verts[a][0] == 0 ? (x0 + h - x) / h : (x - x0) / h;
        const q128 fy = verts[a][1] == 0 ? (y0 + h - y) / h : (y - y0) / h;
        hat[a] = fx * fy;
      }
      for (std::size_t k = 0; k < m; ++k) {
        const Eval ev = eval(fns[k], x, y);
        q128 vn = 0;
        if (fns[k].kind == 0) vn = ev.val * ed.nx;
        if (fns[k].kind == 1) vn = ev.val * ed.ny;
        for (int a = 0; a < 4; ++a) bb[k][3 + a] += w * hat[a] * vn;
        if (fns[k].kind == 2) bb[k][7 + e] += w * q128(ed.sign) * ev.val;
      }
    }
  }
  const auto x = solve(g, bb);
  Eigen::MatrixXcd out(11, 11);
  for (int i = 0; i < 11; ++i) {
    for (int j = 0; j < 11; ++j) {
      c128 s = 0;
      for (std::size_t k = 0; k < m; ++k) s += conj(bb[k][i]) * x[k][j];
      out(i, j) = std::complex<double>(static_cast<double>(s.real()), static_cast<double>(s.imag()));
    }
  }
  return out;
}

/// Element-mean best-approximation error by midpoint sampling with `per_dir`^2
/// samples per element.
inline double sampled_best_approx(int n, const std::function<std::array<std::complex<double>, 3>(double, double)>& f,
                                  int per_dir = 100) {
  const double h = 1.0 / n;
  double total = 0.0;
  std::vector<std::array<std::complex<double>, 3>> vals(static_cast<std::size_t>(per_dir * per_dir));
  for (int ej = 0; ej < n; ++ej) {
    for (int ei = 0; ei < n; ++ei) {
      std::array<std::complex<double>, 3> mean{};
      for (int b = 0; b < per_dir; ++b) {
        for (int a = 0; a < per_dir; ++a) {
          const double x = (ei + (a + 0.5) / per_dir) * h, y = (ej + (b + 0.5) / per_dir) * h;
          auto& v = vals[static_cast<std::size_t>(a + b * per_dir)];
          v = f(x, y);
          for (int c = 0; c < 3; ++c) mean[c] += v[c];
        }
      }
      for (auto& c : mean) c /= double(per_dir * per_dir);
      double s = 0.0;
      for (const auto& v : vals)
        for (int c = 0; c < 3; ++c) s += std::norm(v[c] - mean[c]);
      total += s / double(per_dir * per_dir) * h * h;
    }
  }
  return std::sqrt(total);
}

/// Bilinear FEM stencil S - (omega h)^2 M on a uniform mesh, by hand:
/// center, edge neighbour and diagonal neighbour weights.
struct FemStencil {
  double center, edge, diagonal;
};

inline FemStencil fem_stencil(double wn) {
  const double w2 = wn * wn;
  return {8.0 / 3.0 - 4.0 * w2 / 9.0, -1.0 / 3.0 - w2 / 9.0, -1.0 / 3.0 - w2 / 36.0};
}

/// Real root of the 1D second-difference relation cos(w) = 1 - a^2 / 2.
inline double second_difference_root(double a) { return std::acos(1.0 - a * a / 2.0); }

}  // namespace oracle
