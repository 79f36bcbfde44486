#pragma once

#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "helmdpg/dispersion/roots.hpp"
#include "helmdpg/io/parallel.hpp"

namespace helmdpg {

struct SweepSummary {
  double rho = 0.0;        // max_theta |Re omega_h - omega|
  double eta = 0.0;        // max_theta |Im omega_h|
  double theta_rho = 0.0;
  double theta_eta = 0.0;
  std::size_t points = 0;
  std::size_t failures = 0;
};

struct ThetaSweep {
  std::vector<double> thetas;
  std::vector<std::optional<DispersionPoint>> points;
  std::vector<std::string> errors;  // one entry per failed theta
  SweepSummary summary;
};

/// Uniform grid of `count` angles on [0, pi/2].
inline std::vector<double> theta_grid(std::size_t count) {
  if (count < 2) return {0.0};
  std::vector<double> g(count);
  for (std::size_t k = 0; k < count; ++k)
    g[k] = (std::numbers::pi / 2) * static_cast<double>(k) / static_cast<double>(count - 1);
  return g;
}

inline SweepSummary summarize(const std::vector<double>& thetas, const std::vector<std::optional<DispersionPoint>>& pts) {
  SweepSummary s;
  for (std::size_t k = 0; k < pts.size(); ++k) {
    if (!pts[k]) {
      ++s.failures;
      continue;
    }
    ++s.points;
    const double dr = std::abs(pts[k]->omega_h.real() - pts[k]->omega);
    const double di = std::abs(pts[k]->omega_h.imag());
    if (dr > s.rho) s.rho = dr, s.theta_rho = thetas[k];
    if (di > s.eta) s.eta = di, s.theta_eta = thetas[k];
  }
  return s;
}

/// Roots along the theta grid with warm starts from the previous angle.
inline ThetaSweep theta_sweep(const StencilSet& st, double omega, double h, std::size_t count = 181,
                              const RootOptions& o = {}) {
  ThetaSweep sw;
  sw.thetas = theta_grid(count);
  sw.points.resize(sw.thetas.size());
  std::optional<cd> warm;
  for (std::size_t k = 0; k < sw.thetas.size(); ++k) {
    try {
      sw.points[k] = solve_root(st, sw.thetas[k], omega, h, warm, o);
      warm = sw.points[k]->wh;
    } catch (const Error& e) {
      sw.errors.push_back("theta=" + std::to_string(sw.thetas[k]) + ": " + e.what());
      warm.reset();
    }
  }
  sw.summary = summarize(sw.thetas, sw.points);
  return sw;
}

struct ConvergenceRow {
  int l = 0;
  double omega_h_norm = 0.0;  // omega h
  cd wh;
  double error = 0.0;         // |omega_h h - omega h|
};

struct ConvergenceStudy {
  Method method = Method::Dpg;
  double eps = 0.0;
  int r = 0;
  std::vector<ConvergenceRow> rows;
  double slope = 0.0;
};

/// Least-squares slope of log y against log x.
inline double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  if (n < 2 || y.size() != n) throw Error(ErrorKind::InvalidParameter, "slope fit needs at least two points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

/// |omega_h h - omega h| at theta over omega h = 2 pi / 2^l, l = l_min..l_max,
/// with the slope fitted over l >= fit_from.
inline ConvergenceStudy convergence_study(Method method, double eps, int r, int l_min = 1, int l_max = 7,
                                          int fit_from = 3, double theta = 0.0, const StencilOptions& so = {},
                                          const RootOptions& o = {}) {
  ConvergenceStudy cs{method, eps, r, {}, 0.0};
  const double omega = 1.0;
  std::vector<double> xs, ys;
  for (int l = l_min; l <= l_max; ++l) {
    const double wh = 2.0 * std::numbers::pi / std::pow(2.0, l);
    const auto st = extract_stencils(method, omega, wh / omega, eps, r, so);
    const auto p = solve_root(st, theta, omega, wh / omega, std::nullopt, o);
    ConvergenceRow row{l, wh, p.wh, std::abs(p.wh - wh)};
    cs.rows.push_back(row);
    if (l >= fit_from) {
      xs.push_back(wh);
      ys.push_back(row.error);
    }
  }
  cs.slope = loglog_slope(xs, ys);
  return cs;
}

struct BandPoint {
  double omega_h_norm = 0.0;
  std::optional<cd> wh;
  std::string error;
};

struct BandOptions {
  double step = 0.05;
  double max = 6.0;
  double theta = 0.0;
  double eps = 0.0;
  int r = 3;
  StencilOptions stencil{};
  RootOptions root{};
};

/// Discrete wavenumber omega_h h against omega h with continuation from the
/// previous root. Failures leave gaps.
inline std::vector<BandPoint> band_diagram(Method method, const BandOptions& bo = {}) {
  const auto count = static_cast<std::size_t>(std::floor(bo.max / bo.step + 1e-9));
  std::vector<double> grid(count);
  for (std::size_t k = 0; k < count; ++k) grid[k] = bo.step * static_cast<double>(k + 1);
  std::vector<std::optional<StencilSet>> stencils(count);
  std::vector<std::string> errors(count);
  parallel_for(count, [&](std::size_t k) {
    try {
      stencils[k] = extract_stencils(method, 1.0, grid[k], bo.eps, bo.r, bo.stencil);
    } catch (const Error& e) {
      errors[k] = e.what();
    }
  });
  std::vector<BandPoint> out(count);
  std::optional<cd> warm;
  for (std::size_t k = 0; k < count; ++k) {
    out[k].omega_h_norm = grid[k];
    if (!stencils[k]) {
      out[k].error = errors[k];
      warm.reset();
      continue;
    }
    try {
      const auto p = solve_root(*stencils[k], bo.theta, 1.0, grid[k], warm, bo.root);
      out[k].wh = p.wh;
      warm = p.wh;
    } catch (const Error& e) {
      out[k].error = e.what();
      warm.reset();
    }
  }
  return out;
}

struct EpsRRow {
  int r = 0;
  double eps = 0.0;
  SweepSummary summary;
};

/// rho and eta over full theta sweeps of DPG for every (r, eps) pair at fixed omega h.
inline std::vector<EpsRRow> epsilon_r_sweep(const std::vector<double>& eps_grid, const std::vector<int>& rs,
                                            double omega_h_norm = 2.0 * std::numbers::pi / 8, std::size_t count = 181,
                                            const StencilOptions& so = {}, const RootOptions& o = {}) {
  std::vector<EpsRRow> rows;
  for (int r : rs)
    for (double e : eps_grid) rows.push_back({r, e, {}});
  parallel_for(rows.size(), [&](std::size_t k) {
    const auto st = extract_stencils(Method::Dpg, 1.0, omega_h_norm, rows[k].eps, rows[k].r, so);
    rows[k].summary = theta_sweep(st, 1.0, omega_h_norm, count, o).summary;
  });
  return rows;
}

}  // namespace helmdpg
