#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "helmdpg/dispersion/sweeps.hpp"
#include "oracles.hpp"

using namespace helmdpg;

namespace {

StencilSet scalar_stencil(std::vector<StencilWeight> row) {
  StencilSet st;
  st.method = Method::Fem;
  st.S = 1;
  st.rows = {std::move(row)};
  return st;
}

/// -psi_{j-1} + (2 - a^2) psi_j - psi_{j+1}
StencilSet second_difference(double a) {
  return scalar_stencil({{0, -2, 0, cd(-1.0)}, {0, 0, 0, cd(2.0 - a * a)}, {0, 2, 0, cd(-1.0)}});
}

/// Root of the bilinear FEM symbol along theta = 0: cos w = -(c + 2e) / (2e + 4d).
cd fem_axis_root(double wn) {
  const auto s = oracle::fem_stencil(wn);
  const double c = -(s.center + 2 * s.edge) / (2 * s.edge + 4 * s.diagonal);
  if (std::abs(c) <= 1.0) return cd(std::acos(c));
  return c < 0 ? cd(std::numbers::pi, std::acosh(-c)) : cd(0.0, std::acosh(c));
}

}  // namespace

TEST(Roots, SecondDifferenceClosedForm) {
  for (double a : {0.2, 0.5, 1.1}) {
    const auto st = second_difference(a);
    const auto p = solve_root(st, 0.0, a, 1.0);
    EXPECT_NEAR(std::abs(p.wh - oracle::second_difference_root(a)), 0.0, 1e-12) << "a=" << a;
  }
}

TEST(Roots, ConstantSymbolHasNoRoot) {
  const auto st = scalar_stencil({{0, 0, 0, cd(1.0)}});
  try {
    solve_root(st, 0.0, 1.0, 1.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NoRootFound);
  }
}

TEST(Symbol, DerivativeMatchesFiniteDifference) {
  const auto st = extract_stencils(Method::Dpg, 1.0, 0.8, 1e-2, 3);
  const cd w(0.75, 0.05);
  const double theta = 0.4, d = 1e-6;
  const auto v = det_symbol(st, w, theta);
  const cd fd = (det_symbol(st, w + d, theta).g - det_symbol(st, w - d, theta).g) / (2 * d);
  EXPECT_LE(std::abs(v.dg - fd), 1e-6 * std::abs(v.dg));
  const auto m = symbol_normalized(st, w, theta);
  const auto mp = symbol_normalized(st, w + d, theta), mm = symbol_normalized(st, w - d, theta);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      const cd fdij = (mp.F(i, j) - mm.F(i, j)) / (2 * d);
      EXPECT_LE(std::abs(m.dF(i, j) - fdij), 1e-6 * std::max(1.0, std::abs(m.dF(i, j))));
    }
}

TEST(Symbol, DeterminantInLongDoubleMatchesDouble) {
  const auto st = extract_stencils(Method::Dpg, 1.0, 0.8, 1e-2, 3);
  const cd w(0.7, 0.01);
  const auto m = symbol_normalized(st, w, 0.2);
  EXPECT_LE(std::abs(det_symbol(st, w, 0.2).g - det3(m.F)), 1e-12 * m.scale);
}

TEST(Roots, FemPropagatingBelowCutoff) {
  const auto st = extract_stencils(Method::Fem, 1.0, 1.0, 0.0, 0);
  const auto p = solve_root(st, 0.0, 1.0, 1.0);
  EXPECT_LE(std::abs(p.wh.imag()), 1e-10);
  EXPECT_NEAR(std::abs(p.wh - fem_axis_root(1.0)), 0.0, 1e-10);
}

TEST(Roots, FemStopBand) {
  const auto st = extract_stencils(Method::Fem, 1.0, 4.0, 0.0, 0);
  const auto p = solve_root(st, 0.0, 1.0, 4.0);
  const cd ref = fem_axis_root(4.0);
  EXPECT_NEAR(p.wh.real(), std::numbers::pi, 1e-10);
  EXPECT_NEAR(std::abs(p.wh.imag()), ref.imag(), 1e-10);
  EXPECT_GE(p.wh.imag(), 0.0);
}

TEST(Roots, DpgCertificate) {
  const double wh = 2.0 * std::numbers::pi / 16;
  const auto st = extract_stencils(Method::Dpg, 1.0, wh, 1e-6, 3);
  for (double theta : {0.0, 0.3, std::numbers::pi / 4}) {
    const auto p = solve_root(st, theta, 1.0, wh);
    const auto c = certify_root(st, p);
    EXPECT_TRUE(c.ok()) << "det ratio " << c.det_ratio << " residual " << c.ansatz_residual;
  }
}

TEST(Roots, ReflectionSymmetry) {
  const double wh = std::numbers::pi / 3;
  const auto st = extract_stencils(Method::Dpg, 1.0, wh, 1e-2, 2);
  for (double theta : {0.1, 0.5, 0.7}) {
    const auto a = solve_root(st, theta, 1.0, wh);
    const auto b = solve_root(st, std::numbers::pi / 2 - theta, 1.0, wh);
    EXPECT_LE(std::abs(a.wh - b.wh), 1e-10);
  }
}

TEST(Sweeps, ThetaGrid) {
  const auto g = theta_grid(181);
  ASSERT_EQ(g.size(), 181u);
  EXPECT_EQ(g.front(), 0.0);
  EXPECT_DOUBLE_EQ(g.back(), std::numbers::pi / 2);
  EXPECT_DOUBLE_EQ(g[90], std::numbers::pi / 4);
}

TEST(Sweeps, FemPhaseErrorExceedsDpg) {
  const double wh = 2.0 * std::numbers::pi / 8;
  const auto fem = theta_sweep(extract_stencils(Method::Fem, 1.0, wh, 0.0, 0), 1.0, wh, 19).summary;
  const auto dpg = theta_sweep(extract_stencils(Method::Dpg, 1.0, wh, 1e-2, 3), 1.0, wh, 19).summary;
  EXPECT_EQ(fem.failures, 0u);
  EXPECT_EQ(dpg.failures, 0u);
  EXPECT_LE(fem.eta, 1e-10);
  EXPECT_GT(dpg.eta, 0.0);
  EXPECT_GT(fem.rho, dpg.rho);
}

TEST(Sweeps, DpgErrorDecreasesUnderRefinement) {
  const auto cs = convergence_study(Method::Dpg, 1e-6, 3, 3, 7);
  for (std::size_t k = 1; k < cs.rows.size(); ++k) EXPECT_LT(cs.rows[k].error, cs.rows[k - 1].error);
}

TEST(Sweeps, LogLogSlope) {
  EXPECT_NEAR(loglog_slope({1.0, 2.0, 4.0}, {3.0, 24.0, 192.0}), 3.0, 1e-12);
}
