#pragma once

#include <cmath>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "helmdpg/assembly/drivers.hpp"
#include "helmdpg/dispersion/sweeps.hpp"
#include "helmdpg/io/csv.hpp"

namespace helmdpg {

struct SelftestResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

namespace detail {

inline CsvTable stencil_table(const StencilSet& st) {
  CsvTable t({"t", "s", "two_lx", "two_ly", "re_D", "im_D"});
  for (int r = 0; r < st.S; ++r)
    for (const auto& w : st.rows[static_cast<std::size_t>(r)])
      t.row({r + 1, w.s + 1, w.two_lx, w.two_ly, w.value.real(), w.value.imag()});
  return t;
}

}  // namespace detail

/// Fast invariant checks covering every module; each entry reports the measured quantity.
inline std::vector<SelftestResult> run_selftest() {
  std::vector<SelftestResult> out;
  auto check = [&out](const std::string& name, const std::function<SelftestResult()>& body) {
    try {
      auto r = body();
      r.name = name;
      out.push_back(r);
    } catch (const std::exception& e) {
      out.push_back({name, false, e.what()});
    }
  };
  auto fmt = [](double v) { return format_double(v); };

  check("quadrature_exactness", [&] {
    const auto rule = tensor_gauss_rule<double>(4);
    double q = 0.0;
    for (const auto& p : rule.points) q += p.w * std::pow(p.x, 7) * std::pow(p.y, 5);
    const double err = std::abs(q - 1.0 / 48.0) * 48.0;
    return SelftestResult{"", err <= 1e-13, "relative error " + fmt(err)};
  });

  check("riesz_residual_and_psd", [&] {
    const auto e = dpg_element(NormalizedParams{0.5, 0.5, 2});
    const double res = frobenius_norm(e.G * e.X - e.Bb) / frobenius_norm(e.Bb);
    const double herm = hermitian_defect(e.B);
    const double lam = min_eigenvalue_bound(e.B) / frobenius_norm(e.B);
    return SelftestResult{"", res <= 1e-10 && herm <= 1e-10 && lam >= -1e-10,
                          "residual " + fmt(res) + ", hermitian defect " + fmt(herm) + ", min eig / norm " + fmt(lam)};
  });

  check("stencil_support", [&] {
    const auto dpg = extract_stencils(Method::Dpg, 1.0, std::numbers::pi / 2, 1e-2, 3);
    const auto fem = extract_stencils(Method::Fem, 1.0, 0.5, 0.0, 0);
    const bool ok = dpg.support_size(0) == 21 && dpg.support_size(1) == 13 && dpg.support_size(2) == 13 &&
                    fem.support_size(0) == 9;
    return SelftestResult{"", ok,
                          "dpg " + std::to_string(dpg.support_size(0)) + "/" + std::to_string(dpg.support_size(1)) +
                              "/" + std::to_string(dpg.support_size(2)) + ", fem " +
                              std::to_string(fem.support_size(0))};
  });

  check("fem_real_below_cutoff", [&] {
    const auto st = extract_stencils(Method::Fem, 1.0, 1.0, 0.0, 0);
    const auto p = solve_root(st, 0.0, 1.0, 1.0);
    return SelftestResult{"", std::abs(p.wh.imag()) <= 1e-10, "Im w = " + fmt(p.wh.imag())};
  });

  check("root_certificate", [&] {
    const double wh = 2.0 * std::numbers::pi / 16;
    const auto st = extract_stencils(Method::Dpg, 1.0, wh, 1e-6, 3);
    const auto p = solve_root(st, 0.0, 1.0, wh);
    const auto c = certify_root(st, p);
    return SelftestResult{"", c.ok(), "det ratio " + fmt(c.det_ratio) + ", ansatz residual " + fmt(c.ansatz_residual)};
  });

  check("theta_reflection", [&] {
    const double wh = std::numbers::pi / 2;
    const auto st = extract_stencils(Method::Dpg, 1.0, wh, 1e-2, 3);
    const auto a = solve_root(st, std::numbers::pi / 12, 1.0, wh);
    const auto b = solve_root(st, 5 * std::numbers::pi / 12, 1.0, wh);
    const double d = std::abs(a.omega_h - b.omega_h);
    return SelftestResult{"", d <= 1e-10, "|w(theta) - w(pi/2 - theta)| = " + fmt(d)};
  });

  check("best_approximation_bound", [&] {
    const auto mesh = build_mesh(8);
    const auto rep = solve_dpg(mesh, 2.0, 1e-2, 3, manufactured_bubble(2.0), homogeneous_dirichlet(mesh));
    return SelftestResult{"", rep.ratio >= 1.0 - 1e-9 && rep.residual <= 1e-10,
                          "ratio " + fmt(rep.ratio) + ", residual " + fmt(rep.residual)};
  });

  check("csv_determinism", [&] {
    const auto a = detail::stencil_table(extract_stencils(Method::Dpg, 1.0, 0.7, 0.3, 2)).str();
    const auto b = detail::stencil_table(extract_stencils(Method::Dpg, 1.0, 0.7, 0.3, 2)).str();
    return SelftestResult{"", a == b, std::to_string(a.size()) + " bytes"};
  });
  return out;
}

}  // namespace helmdpg
