#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "helmdpg/dispersion/symbol.hpp"

namespace helmdpg {

struct RootOptions {
  double g_tol = 1e-12;      // |det F| <= g_tol * scale
  double step_tol = 1e-12;   // |dw| <= step_tol * max(1, |w|)
  int newton_max_iter = 60;
  int muller_max_iter = 200;
  double start_spread = 0.1; // multistart offsets, as a fraction of omega h
  double same_root = 1e-9;   // candidates closer than this are one root
  double ambiguity = 1e-6;   // distinct admissible roots closer than this are flagged
};

struct DispersionPoint {
  Method method = Method::Dpg;
  int r = 0;
  double eps = 0.0;
  double omega = 0.0;
  double h = 0.0;
  double theta = 0.0;
  cd wh;                 // omega_h h
  cd omega_h;            // discrete wavenumber
  double abs_det = 0.0;  // |det F| at the root
  double scale = 0.0;
  int iterations = 0;
  bool used_muller = false;
  bool branch_ambiguous = false;
};

struct RawRoot {
  cd w;
  double abs_det = 0.0;
  double scale = 0.0;
  int iterations = 0;
  bool muller = false;
};

namespace detail {

inline bool root_converged(const DetValue& d, cd step, cd w, const RootOptions& o) {
  return std::abs(d.g) <= o.g_tol * d.scale && std::abs(step) <= o.step_tol * std::max(1.0, std::abs(w));
}

/// Newton polishing. Converged once |g| <= g_tol * scale and the step is below
/// step_tol, or, with |g| already small, once the steps stop shrinking because
/// they have reached the rounding level of det F.
inline std::optional<RawRoot> newton(const StencilSet& st, cd w, double theta, const RootOptions& o) {
  double prev_step = std::numeric_limits<double>::infinity();
  for (int it = 1; it <= o.newton_max_iter; ++it) {
    const auto d = det_symbol(st, w, theta);
    if (d.dg == cd(0.0)) return std::nullopt;
    const cd step = d.g / d.dg;
    if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) return std::nullopt;
    const bool small_g = std::abs(d.g) <= o.g_tol * d.scale;
    const bool stalled = small_g && std::abs(step) >= 0.5 * prev_step &&
                         std::abs(step) <= 1e3 * o.step_tol * std::max(1.0, std::abs(w));
    w -= step;
    if (detail::root_converged(d, step, w, o) || stalled) {
      const auto fin = det_symbol(st, w, theta);
      return RawRoot{w, std::abs(fin.g), fin.scale, it, false};
    }
    prev_step = std::abs(step);
    if (std::abs(w) > 1e3) return std::nullopt;
  }
  return std::nullopt;
}

/// Muller's method from the three points w0, w0 + delta, w0 + i delta.
inline std::optional<RawRoot> muller(const StencilSet& st, cd w0, double delta, double theta, const RootOptions& o) {
  cd x0 = w0, x1 = w0 + delta, x2 = w0 + cd(0.0, delta);
  cd f0 = det_symbol(st, x0, theta).g, f1 = det_symbol(st, x1, theta).g, f2 = det_symbol(st, x2, theta).g;
  for (int it = 1; it <= o.muller_max_iter; ++it) {
    const cd h1 = x1 - x0, h2 = x2 - x1;
    const cd d1 = (f1 - f0) / h1, d2 = (f2 - f1) / h2;
    const cd a = (d2 - d1) / (h2 + h1);
    const cd b = a * h2 + d2;
    const cd disc = std::sqrt(b * b - 4.0 * a * f2);
    const cd den = std::abs(b + disc) >= std::abs(b - disc) ? b + disc : b - disc;
    if (den == cd(0.0)) return std::nullopt;
    const cd step = -2.0 * f2 / den;
    if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) return std::nullopt;
    const cd x3 = x2 + step;
    x0 = x1; f0 = f1;
    x1 = x2; f1 = f2;
    x2 = x3;
    const auto d = det_symbol(st, x2, theta);
    f2 = d.g;
    if (root_converged(d, step, x2, o)) return RawRoot{x2, std::abs(d.g), d.scale, it, true};
    if (std::abs(x2) > 1e3) return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace detail

/// Finds a root of det F from a single normalized starting point: Newton first,
/// Muller from a complex three-point stencil if Newton stagnates.
inline std::optional<RawRoot> find_root_from(const StencilSet& st, cd w0, double theta, double delta,
                                             const RootOptions& o = {}) {
  if (auto r = detail::newton(st, w0, theta, o)) return r;
  if (auto r = detail::muller(st, w0, delta, theta, o)) {
    // a few Newton steps tighten the Muller iterate
    if (auto p = detail::newton(st, r->w, theta, o)) {
      p->iterations += r->iterations;
      p->muller = true;
      return p;
    }
    return r;
  }
  return std::nullopt;
}

inline bool admissible_root(cd w) { return w.real() > 0.0 && w.real() < 2.0 * std::numbers::pi; }

/// Root of det F near omega for direction theta. `init` is the normalized
/// starting point (defaults to omega h). Among the converged candidates of a
/// five-point multistart the admissible root nearest omega h is returned; ties
/// are broken towards Im >= 0.
inline DispersionPoint solve_root(const StencilSet& st, double theta, double omega, double h,
                                  std::optional<cd> init = std::nullopt, const RootOptions& o = {}) {
  const double wh = omega * h;
  const cd w0 = init.value_or(cd(wh));
  const double d = o.start_spread * wh;
  const std::array<cd, 5> starts = {w0, w0 + d, w0 - d, w0 + cd(0.0, d), w0 - cd(0.0, d)};
  std::vector<RawRoot> found;
  auto keep = [&](const std::optional<RawRoot>& r) {
    if (!r || !admissible_root(r->w)) return;
    for (const auto& f : found)
      if (std::abs(f.w - r->w) <= o.same_root * std::max(1.0, std::abs(r->w))) return;
    found.push_back(*r);
  };
  for (const cd s : starts) keep(find_root_from(st, s, theta, d, o));
  // A warm start that drifted away from omega h must not hide the root nearest to it.
  if (std::abs(w0 - wh) > d) keep(find_root_from(st, cd(wh), theta, d, o));
  // Roots tend to come in conjugate pairs; polish the mirror of every candidate
  // so that both members compete in the selection below.
  const std::size_t primary = found.size();
  for (std::size_t k = 0; k < primary; ++k) keep(detail::newton(st, std::conj(found[k].w), theta, o));
  if (found.empty()) {
    throw Error(ErrorKind::NoRootFound, "no admissible root of det F near omega h = " + std::to_string(wh) +
                                            " at theta = " + std::to_string(theta));
  }
  const RawRoot* best = &found.front();
  for (const auto& f : found) {
    const double df = std::abs(f.w - wh), db = std::abs(best->w - wh);
    const double tie = o.same_root * std::max(1.0, wh);
    if (df < db - tie || (std::abs(df - db) <= tie && f.w.imag() >= 0.0 && best->w.imag() < 0.0)) {
      best = &f;
    }
  }
  DispersionPoint p;
  p.method = st.method;
  p.r = st.r;
  p.eps = st.eps;
  p.omega = omega;
  p.h = h;
  p.theta = theta;
  p.wh = best->w;
  p.omega_h = best->w / h;
  p.abs_det = best->abs_det;
  p.scale = best->scale;
  p.iterations = best->iterations;
  p.used_muller = best->muller;
  for (const auto& f : found) {
    const double gap = std::abs(f.w - best->w);
    if (&f != best && gap < o.ambiguity) p.branch_ambiguous = true;
  }
  return p;
}

/// Unit null vector of F at a root: the right singular vector of the smallest singular value.
inline std::vector<cd> null_vector(const StencilSet& st, cd w, double theta) {
  const auto m = symbol_normalized(st, w, theta);
  const auto S = static_cast<Eigen::Index>(m.F.rows());
  Eigen::MatrixXcd f(S, S);
  for (Eigen::Index i = 0; i < S; ++i)
    for (Eigen::Index j = 0; j < S; ++j) f(i, j) = m.F(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(f, Eigen::ComputeFullV);
  const Eigen::VectorXcd v = svd.matrixV().col(S - 1);
  std::vector<cd> a(static_cast<std::size_t>(S));
  for (Eigen::Index i = 0; i < S; ++i) a[static_cast<std::size_t>(i)] = v(i);
  return a;
}

struct RootCertificate {
  double det_ratio = 0.0;         // |det F| / scale
  double ansatz_residual = 0.0;   // max_t |apply_stencil| / max |D|
  bool ok(double det_tol = 1e-10, double residual_tol = 1e-8) const {
    return det_ratio <= det_tol && ansatz_residual <= residual_tol;
  }
};

/// Checks a root against det F and by applying the stencils to the
/// reconstructed plane-wave ansatz at an arbitrary lattice point.
inline RootCertificate certify_root(const StencilSet& st, const DispersionPoint& p,
                                    std::array<int, 2> center = {3, -2}) {
  RootCertificate c;
  const auto d = det_symbol(st, p.wh, p.theta);
  c.det_ratio = std::abs(d.g) / d.scale;
  const auto psi = plane_wave_ansatz(null_vector(st, p.wh, p.theta), p.wh, p.theta);
  const double max_d = st.max_abs();
  // residual measured relative to the ansatz modulus at the center
  const double proj = std::cos(p.theta) * center[0] + std::sin(p.theta) * center[1];
  const double modulus = std::abs(std::exp(cd(0.0, 1.0) * p.wh * proj));
  for (int t = 0; t < st.S; ++t) {
    const double res = std::abs(apply_stencil(st, psi, center, t)) / modulus;
    c.ansatz_residual = std::max(c.ansatz_residual, res / max_d);
  }
  return c;
}

}  // namespace helmdpg
