#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "helmdpg/assembly/solve.hpp"
#include "helmdpg/io/parallel.hpp"
#include "helmdpg/stencil/stencil.hpp"

namespace helmdpg {

/// omega grid on [lo, hi] with the given step, dropping points within `guard`
/// of the first Dirichlet resonance pi sqrt(2).
inline std::vector<double> resonance_omega_grid(double lo = 3.0, double hi = 6.0, double step = 0.05,
                                                double guard = 1e-3) {
  if (!(step > 0.0) || hi < lo) throw Error(ErrorKind::InvalidParameter, "omega grid needs step > 0 and hi >= lo");
  const double res = std::numbers::pi * std::numbers::sqrt2;
  std::vector<double> g;
  const auto count = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
  for (long k = 0; k <= count; ++k) {
    const double w = lo + step * static_cast<double>(k);
    if (std::abs(w - res) >= guard) g.push_back(w);
  }
  return g;
}

/// eps = 10^-k, k = 0..kmax.
inline std::vector<double> decade_eps_grid(int kmax = 4) {
  std::vector<double> g;
  for (int k = 0; k <= kmax; ++k) g.push_back(std::pow(10.0, -k));
  return g;
}

struct ResonanceRow {
  double omega = 0.0;
  double eps = 0.0;
  std::optional<SolveReport> report;
  std::string error;
};

/// One DPG solve of the manufactured bubble problem per (omega, eps) with
/// homogeneous Dirichlet data. Failures are recorded per row.
inline std::vector<ResonanceRow> resonance_sweep(const std::vector<double>& omegas, const std::vector<double>& eps_list,
                                                 int n = 16, int r = 3, const DpgSolveOptions& opts = {}) {
  const auto mesh = build_mesh(n);
  const auto bc = homogeneous_dirichlet(mesh);
  std::vector<ResonanceRow> rows;
  for (double w : omegas)
    for (double e : eps_list) rows.push_back({w, e, std::nullopt, {}});
  parallel_for(rows.size(), [&](std::size_t k) {
    try {
      rows[k].report = solve_dpg(mesh, rows[k].omega, rows[k].eps, r, manufactured_bubble(rows[k].omega), bc, opts);
    } catch (const Error& e) {
      rows[k].error = e.what();
    }
  });
  return rows;
}

struct ConvergencePoint {
  int n = 0;
  double h = 0.0;
  double e_r = 0.0;
  double a = 0.0;
};

struct HConvergence {
  std::vector<ConvergencePoint> points;
  double rate = 0.0;  // least-squares slope of log e_r against log h
};

/// e_r of the manufactured bubble problem under uniform refinement.
inline HConvergence h_convergence(Method method, double omega, double eps, int r, const std::vector<int>& ns = {8, 16, 32},
                                  const DpgSolveOptions& opts = {}) {
  if (method == Method::Fem) throw Error(ErrorKind::InvalidParameter, "h-convergence is defined for dpg and fosls");
  HConvergence out;
  std::vector<double> lx, ly;
  for (int n : ns) {
    const auto mesh = build_mesh(n);
    const auto ex = manufactured_bubble(omega);
    const auto bc = homogeneous_dirichlet(mesh);
    const auto rep = method == Method::Dpg ? solve_dpg(mesh, omega, eps, r, ex, bc, opts) : solve_fosls(mesh, omega, ex, bc);
    out.points.push_back({n, mesh.h, rep.e_r, rep.a});
    lx.push_back(std::log(mesh.h));
    ly.push_back(std::log(rep.e_r));
  }
  const std::size_t m = lx.size();
  if (m < 2) throw Error(ErrorKind::InvalidParameter, "h-convergence needs at least two meshes");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < m; ++i) {
    sx += lx[i]; sy += ly[i]; sxx += lx[i] * lx[i]; sxy += lx[i] * ly[i];
  }
  out.rate = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  return out;
}

/// Amplitude-decay metric of a vertex trace for a plane wave travelling in
/// direction theta. Interior vertices are grouped in 4x4 blocks; a block's
/// amplitude is its largest |phi|. The metric is the smallest block amplitude
/// among the blocks whose centers lie in the quarter farthest along k.
inline double decay_metric(const MeshSpec& mesh, const std::vector<cd>& trace, double theta, int block = 4) {
  if (block < 1 || mesh.n < block) throw Error(ErrorKind::InvalidParameter, "decay metric block larger than mesh");
  const int nb = mesh.n / block;
  const double c = std::cos(theta), s = std::sin(theta);
  std::vector<std::pair<double, double>> blocks;  // (projection along k, amplitude)
  for (int bj = 0; bj < nb; ++bj) {
    for (int bi = 0; bi < nb; ++bi) {
      double amp = 0.0;
      double sx = 0.0, sy = 0.0;
      int count = 0;
      for (int j = bj * block; j < (bj + 1) * block; ++j) {
        for (int i = bi * block; i < (bi + 1) * block; ++i) {
          if (mesh.is_boundary_vertex(i, j)) continue;
          amp = std::max(amp, std::abs(trace[mesh.vertex(i, j)]));
          const auto p = mesh.vertex_position(i, j);
          sx += p[0];
          sy += p[1];
          ++count;
        }
      }
      if (count == 0) continue;
      blocks.emplace_back((c * sx + s * sy) / count, amp);
    }
  }
  if (blocks.empty()) throw Error(ErrorKind::MeshTooSmall, "no interior vertex blocks for the decay metric");
  std::vector<double> proj;
  for (const auto& b : blocks) proj.push_back(b.first);
  std::sort(proj.begin(), proj.end());
  const double cut = proj[static_cast<std::size_t>(0.75 * static_cast<double>(proj.size() - 1))];
  double metric = INFINITY;
  for (const auto& b : blocks)
    if (b.first >= cut) metric = std::min(metric, b.second);
  return metric;
}

struct PlaneWaveDemo {
  MeshSpec mesh;
  double theta = 0.0;
  SolveReport report;
  double decay = 0.0;
};

/// Plane wave exp(i k.x) imposed through its boundary vertex traces.
inline PlaneWaveDemo plane_wave_demo(Method method, double theta, int n, double omega, double eps, int r,
                                     const DpgSolveOptions& opts = {}) {
  if (method == Method::Fem) throw Error(ErrorKind::InvalidParameter, "plane-wave demo supports dpg and fosls");
  PlaneWaveDemo d;
  d.mesh = build_mesh(n);
  d.theta = theta;
  const auto ex = plane_wave(omega, theta);
  const auto bc = exact_trace_dirichlet(d.mesh, ex);
  d.report = method == Method::Dpg ? solve_dpg(d.mesh, omega, eps, r, ex, bc, opts) : solve_fosls(d.mesh, omega, ex, bc);
  d.decay = decay_metric(d.mesh, d.report.trace, theta);
  return d;
}

}  // namespace helmdpg
