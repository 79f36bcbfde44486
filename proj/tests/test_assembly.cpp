#include <gtest/gtest.h>

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <random>

#include "helmdpg/assembly/drivers.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace helmdpg;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::InvalidParameter;
}

ExactSolution linear_phi() {
  ExactSolution s = zero_solution(1.0);
  s.name = "linear";
  s.phi = [](double x, double) { return cd(x); };
  s.grad_phi = [](double, double) { return std::array<cd, 2>{cd(1.0), cd(0.0)}; };
  return s;
}

}  // namespace

TEST(Mesh, Counts) {
  const auto m2 = build_mesh(2);
  EXPECT_EQ(m2.vertex_count(), 9u);
  EXPECT_EQ(m2.hedge_count(), 6u);
  EXPECT_EQ(m2.vedge_count(), 6u);
  EXPECT_EQ(m2.dof_count(), 21u);
  const auto m16 = build_mesh(16);
  EXPECT_EQ(m16.vertex_count(), 289u);
  EXPECT_EQ(m16.dof_count(), 289u + 2u * 272u);
  EXPECT_EQ(m16.element_count(), 256u);
  EXPECT_DOUBLE_EQ(m16.h, 1.0 / 16);
}

TEST(Mesh, ElementDofsAreShared) {
  const auto m = build_mesh(4);
  const auto a = m.element_dofs(1, 1), b = m.element_dofs(2, 1), c = m.element_dofs(1, 2);
  EXPECT_EQ(a[1], b[0]);
  EXPECT_EQ(a[2], b[3]);
  EXPECT_EQ(a[7], b[6]);
  EXPECT_EQ(a[5], c[4]);
}

TEST(Mesh, TooSmall) {
  EXPECT_EQ(kind_of([] { build_mesh(1); }), ErrorKind::MeshTooSmall);
}

TEST(ExactSolutions, PlaneWaveIsHomogeneous) {
  std::mt19937 gen(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const auto pw = plane_wave(7.0, 0.4);
  for (int k = 0; k < 20; ++k) {
    const auto f = pw.f(u(gen), u(gen));
    for (const auto& c : f) EXPECT_LE(std::abs(c), 1e-12);
  }
}

TEST(ExactSolutions, BubbleVanishesOnBoundary) {
  const auto b = manufactured_bubble(3.0);
  for (double t : {0.0, 0.3, 1.0}) {
    EXPECT_EQ(b.phi(t, 0.0), cd(0.0));
    EXPECT_EQ(b.phi(1.0, t), cd(0.0));
  }
}

TEST(Solve, ZeroSolutionGivesZeroTrace) {
  const auto mesh = build_mesh(4);
  const auto rep = solve_dpg(mesh, 2.0, 1e-2, 2, zero_solution(2.0), homogeneous_dirichlet(mesh));
  for (const auto& v : rep.trace) EXPECT_EQ(v, cd(0.0));
  EXPECT_EQ(rep.e_r, 0.0);
}

TEST(Solve, BubbleRatioNearOne) {
  const auto mesh = build_mesh(16);
  const auto rep = solve_dpg(mesh, 2.0, 1e-2, 3, manufactured_bubble(2.0), homogeneous_dirichlet(mesh));
  EXPECT_GE(rep.ratio, 1.0 - 1e-9);
  EXPECT_LE(rep.ratio, 1.5);
  EXPECT_LE(rep.residual, 1e-10);
}

TEST(Solve, BestApproximationMatchesSampledOracle) {
  const auto mesh = build_mesh(8);
  const auto ex = manufactured_bubble(2.5);
  const double lib = best_approx_error(mesh, ex);
  const double ref = oracle::sampled_best_approx(8, [&](double x, double y) { return ex.fields(x, y); });
  EXPECT_LE(std::abs(lib - ref), 1e-3 * ref);
}

TEST(Solve, BestApproximationOfLinear) {
  const auto mesh = build_mesh(2);
  const double h = mesh.h;
  // sum over n^2 elements of h^4 / 12
  EXPECT_NEAR(best_approx_error(mesh, linear_phi()), std::sqrt(h * h / 12.0), 1e-14);
}

TEST(Solve, FoslsResidual) {
  const auto mesh = build_mesh(8);
  const auto rep = solve_fosls(mesh, 2.0, manufactured_bubble(2.0), homogeneous_dirichlet(mesh));
  EXPECT_LE(rep.residual, 1e-10);
  EXPECT_GT(rep.e_r, 0.0);
}

TEST(Solve, InconsistentBoundaryData) {
  const auto mesh = build_mesh(4);
  EXPECT_EQ(kind_of([&] { solve_dpg(mesh, 2.0, 1e-2, 2, plane_wave(2.0, 0.3), homogeneous_dirichlet(mesh)); }),
            ErrorKind::BCInconsistent);
}

TEST(Solve, ExactTraceReproducesPlaneWaveBoundary) {
  const auto mesh = build_mesh(8);
  const auto ex = plane_wave(3.0, 0.2);
  const auto rep = solve_dpg(mesh, 3.0, 1e-2, 3, ex, exact_trace_dirichlet(mesh, ex));
  for (int i = 0; i <= mesh.n; ++i) {
    const auto p = mesh.vertex_position(i, 0);
    EXPECT_LE(std::abs(rep.trace[mesh.vertex(i, 0)] - ex.phi(p[0], p[1])), 1e-14);
  }
}

TEST(Assembly, GlobalMatrixHermitianPositiveDefinite) {
  const auto mesh = build_mesh(4);
  const auto sys = dpg_local_system(NormalizedParams{2.0 * mesh.h, 0.1 * mesh.h, 3});
  const auto k = scale_to_physical(sys.condensed.S, mesh.h);
  const auto g = assemble_trace_system(mesh, k, std::vector<std::array<cd, 8>>(mesh.element_count()));
  const Eigen::MatrixXcd dense(g.K);
  EXPECT_LE((dense - dense.adjoint()).norm(), 1e-12 * dense.norm());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(dense);
  EXPECT_GT(es.eigenvalues()(0), 0.0);
}

TEST(Convergence, DpgRateOne) {
  const auto c = h_convergence(Method::Dpg, 2.0, 1e-2, 3);
  EXPECT_NEAR(c.rate, 1.0, 0.2);
}

TEST(Convergence, FoslsRateOne) {
  const auto c = h_convergence(Method::Fosls, 2.0, 0.0, 0);
  EXPECT_NEAR(c.rate, 1.0, 0.3);
}

TEST(Drivers, DecayMetricOfExponentialProfile) {
  const auto mesh = build_mesh(16);
  std::vector<cd> trace(mesh.dof_count());
  for (int j = 0; j <= mesh.n; ++j)
    for (int i = 0; i <= mesh.n; ++i) trace[mesh.vertex(i, j)] = std::exp(-10.0 * mesh.vertex_position(i, j)[0]);
  // farthest quarter along x: block columns 2 and 3; the weaker one peaks at x = 12 h
  EXPECT_NEAR(decay_metric(mesh, trace, 0.0), std::exp(-10.0 * 12.0 / 16.0), 1e-14);
}

TEST(Drivers, DecayMetricOfUnitAmplitude) {
  const auto mesh = build_mesh(16);
  std::vector<cd> trace(mesh.dof_count(), cd(0.0, 1.0));
  EXPECT_DOUBLE_EQ(decay_metric(mesh, trace, 0.7), 1.0);
}

TEST(Drivers, ResonanceGridSkipsResonance) {
  EXPECT_EQ(resonance_omega_grid().size(), 61u);
  const auto g = resonance_omega_grid(3.0, 6.0, 0.05, 0.01);
  EXPECT_EQ(g.size(), 60u);
  for (double w : g) EXPECT_GE(std::abs(w - std::numbers::pi * std::numbers::sqrt2), 0.01);
}

TEST(Drivers, ResonanceSweepRecordsRows) {
  const auto rows = resonance_sweep({2.0, 3.0}, {1.0, 1e-2}, 8, 2);
  ASSERT_EQ(rows.size(), 4u);
  for (const auto& r : rows) {
    ASSERT_TRUE(r.report.has_value()) << r.error;
    EXPECT_GE(r.report->ratio, 1.0 - 1e-9);
  }
}
