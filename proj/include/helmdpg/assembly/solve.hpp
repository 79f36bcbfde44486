#pragma once

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include <array>
#include <chrono>
#include <cmath>
#include <complex>
#include <optional>
#include <vector>

#include "helmdpg/assembly/exact_solution.hpp"
#include "helmdpg/assembly/mesh.hpp"
#include "helmdpg/localforms/condense.hpp"
#include "helmdpg/localforms/lowest_order_elements.hpp"

namespace helmdpg {

enum class DirichletMode { Homogeneous, ExactTrace };

/// Prescribed vertex traces on the boundary. Edge fluxes are never constrained.
struct DirichletData {
  DirichletMode mode = DirichletMode::Homogeneous;
  std::vector<std::pair<std::size_t, cd>> values;  // (global vertex DOF, value)
};

inline DirichletData homogeneous_dirichlet(const MeshSpec& mesh) {
  DirichletData bc;
  for (int j = 0; j <= mesh.n; ++j)
    for (int i = 0; i <= mesh.n; ++i)
      if (mesh.is_boundary_vertex(i, j)) bc.values.emplace_back(mesh.vertex(i, j), cd(0.0));
  return bc;
}

inline DirichletData exact_trace_dirichlet(const MeshSpec& mesh, const ExactSolution& exact) {
  DirichletData bc;
  bc.mode = DirichletMode::ExactTrace;
  for (int j = 0; j <= mesh.n; ++j) {
    for (int i = 0; i <= mesh.n; ++i) {
      if (!mesh.is_boundary_vertex(i, j)) continue;
      const auto p = mesh.vertex_position(i, j);
      bc.values.emplace_back(mesh.vertex(i, j), exact.phi(p[0], p[1]));
    }
  }
  return bc;
}

struct SolveReport {
  std::vector<cd> trace;                      // all global trace DOFs
  std::vector<std::array<cd, 3>> fields;      // per element (u1, u2, phi) constants or means
  double e_r = 0.0;
  double a = 0.0;
  double ratio = 0.0;
  double residual = 0.0;                      // relative residual of the reduced system
  double wall_time = 0.0;                     // seconds
  Precision precision_used;
};

using SparseC = Eigen::SparseMatrix<cd>;

struct GlobalSystem {
  SparseC K;
  Eigen::VectorXcd rhs;
};

/// Adds the same 8x8 element matrix (already in physical scaling) on every
/// element together with per-element loads.
inline GlobalSystem assemble_trace_system(const MeshSpec& mesh, const CMatrixD& element,
                                          const std::vector<std::array<cd, 8>>& loads) {
  GlobalSystem sys;
  const auto ndof = static_cast<Eigen::Index>(mesh.dof_count());
  sys.K.resize(ndof, ndof);
  sys.rhs = Eigen::VectorXcd::Zero(ndof);
  std::vector<Eigen::Triplet<cd>> trip;
  trip.reserve(mesh.element_count() * 64);
  for (int ej = 0; ej < mesh.n; ++ej) {
    for (int ei = 0; ei < mesh.n; ++ei) {
      const auto dofs = mesh.element_dofs(ei, ej);
      const std::size_t e = static_cast<std::size_t>(ei + ej * mesh.n);
      for (std::size_t a = 0; a < 8; ++a) {
        sys.rhs(static_cast<Eigen::Index>(dofs[a])) += loads[e][a];
        for (std::size_t b = 0; b < 8; ++b)
          trip.emplace_back(static_cast<Eigen::Index>(dofs[a]), static_cast<Eigen::Index>(dofs[b]), element(a, b));
      }
    }
  }
  sys.K.setFromTriplets(trip.begin(), trip.end());
  return sys;
}

/// Eliminates the Dirichlet vertex DOFs symmetrically and solves the reduced
/// Hermitian positive definite system by sparse LDL^H.
inline std::vector<cd> solve_with_dirichlet(const MeshSpec& mesh, const GlobalSystem& sys, const DirichletData& bc,
                                            double* relative_residual = nullptr) {
  const std::size_t ndof = mesh.dof_count();
  std::vector<int> fixed(ndof, 0);
  Eigen::VectorXcd x = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(ndof));
  for (const auto& [dof, value] : bc.values) {
    if (dof >= ndof || !mesh.is_vertex_dof(dof)) {
      throw Error(ErrorKind::BCInconsistent, "Dirichlet value on a non-vertex DOF " + std::to_string(dof));
    }
    fixed[dof] = 1;
    x(static_cast<Eigen::Index>(dof)) = value;
  }
  std::vector<Eigen::Index> free_index(ndof, -1);
  Eigen::Index nfree = 0;
  for (std::size_t d = 0; d < ndof; ++d)
    if (!fixed[d]) free_index[d] = nfree++;

  std::vector<Eigen::Triplet<cd>> trip;
  Eigen::VectorXcd b(nfree);
  for (std::size_t d = 0; d < ndof; ++d)
    if (!fixed[d]) b(free_index[d]) = sys.rhs(static_cast<Eigen::Index>(d));
  for (Eigen::Index col = 0; col < sys.K.outerSize(); ++col) {
    for (SparseC::InnerIterator it(sys.K, col); it; ++it) {
      const auto r = static_cast<std::size_t>(it.row());
      const auto c = static_cast<std::size_t>(it.col());
      if (fixed[r]) continue;
      if (fixed[c]) {
        b(free_index[r]) -= it.value() * x(it.col());
      } else {
        trip.emplace_back(free_index[r], free_index[c], it.value());
      }
    }
  }
  SparseC kff(nfree, nfree);
  kff.setFromTriplets(trip.begin(), trip.end());
  Eigen::SimplicialLDLT<SparseC> ldlt;
  ldlt.compute(kff);
  if (ldlt.info() != Eigen::Success) {
    throw Error(ErrorKind::SolveFailure, "sparse LDL^H factorization failed");
  }
  const auto& d = ldlt.vectorD();
  for (Eigen::Index i = 0; i < d.size(); ++i) {
    if (!(d(i).real() > 0.0)) {
      throw Error(ErrorKind::SolveFailure,
                  "nonpositive pivot " + std::to_string(d(i).real()) + " at reduced index " + std::to_string(i));
    }
  }
  const Eigen::VectorXcd xf = ldlt.solve(b);
  if (relative_residual) {
    const double bn = b.norm();
    *relative_residual = bn > 0.0 ? (kff * xf - b).norm() / bn : (kff * xf).norm();
  }
  std::vector<cd> out(ndof);
  for (std::size_t dd = 0; dd < ndof; ++dd)
    out[dd] = fixed[dd] ? x(static_cast<Eigen::Index>(dd)) : xf(free_index[dd]);
  return out;
}

/// Element-mean best approximation and the error of a discrete field, both by
/// tensor Gauss quadrature with `points` per direction on each element.
struct FieldErrors {
  double error = 0.0;
  double best = 0.0;
};

template <typename DiscreteField>
FieldErrors field_errors(const MeshSpec& mesh, const ExactSolution& exact, DiscreteField&& discrete,
                         int points = 6) {
  const auto rule = tensor_gauss_rule<double>(points);
  const double area = mesh.h * mesh.h;
  double err2 = 0.0, best2 = 0.0;
  std::vector<std::array<cd, 3>> vals(rule.size());
  for (int ej = 0; ej < mesh.n; ++ej) {
    for (int ei = 0; ei < mesh.n; ++ei) {
      const auto o = mesh.element_origin(ei, ej);
      std::array<cd, 3> mean{};
      for (std::size_t q = 0; q < rule.size(); ++q) {
        const auto& p = rule.points[q];
        vals[q] = exact.fields(o[0] + mesh.h * p.x, o[1] + mesh.h * p.y);
        for (int c = 0; c < 3; ++c) mean[c] += p.w * vals[q][c];
      }
      for (std::size_t q = 0; q < rule.size(); ++q) {
        const auto& p = rule.points[q];
        const auto dh = discrete(ei, ej, p.x, p.y);
        for (int c = 0; c < 3; ++c) {
          err2 += area * p.w * std::norm(vals[q][c] - dh[c]);
          best2 += area * p.w * std::norm(vals[q][c] - mean[c]);
        }
      }
    }
  }
  return {std::sqrt(err2), std::sqrt(best2)};
}

/// L2 distance of the exact fields to piecewise constants on the mesh.
inline double best_approx_error(const MeshSpec& mesh, const ExactSolution& exact, int points = 6) {
  return field_errors(mesh, exact, [](int, int, double, double) { return std::array<cd, 3>{}; }, points).best;
}

inline double safe_ratio(double e, double a) { return a > 0.0 ? e / a : (e == 0.0 ? 1.0 : INFINITY); }

struct DpgSolveOptions {
  Precision precision = Precision::double_precision();
  ElementOptions element{};
  int load_points = 0;   // 0: r + 6
  int error_points = 6;
};

/// Precomputed test-basis values at a quadrature rule, in double.
struct TestBasisTable {
  QuadratureRule<double> rule;
  std::vector<std::vector<TestValue<double>>> values;
};

inline TestBasisTable tabulate_for_load(int r, int points) {
  const auto basis = build_test_basis(r);
  TestBasisTable t{tensor_gauss_rule<double>(points), {}};
  for (const auto& p : t.rule.points) t.values.push_back(evaluate_test_basis<double>(basis, p.x, p.y));
  return t;
}

/// DPG load on the square [x0,x0+h]^2: l_i = <f, T^r e_i> = h^3 (X^H F)_i with
/// F_k = int_ref f(x0 + h x) conj(v_k).
inline std::array<cd, 11> dpg_load(const SourceFn& f, double x0, double y0, double h, const CMatrixD& x_ref,
                                   const TestBasisTable& table) {
  const std::size_t m = x_ref.rows();
  std::vector<cd> fk(m, cd(0.0));
  for (std::size_t q = 0; q < table.rule.size(); ++q) {
    const auto& p = table.rule.points[q];
    const auto fv = f(x0 + h * p.x, y0 + h * p.y);
    const auto& vals = table.values[q];
    for (std::size_t k = 0; k < m; ++k) {
      fk[k] += p.w * (fv[0] * vals[k].vx + fv[1] * vals[k].vy + fv[2] * vals[k].eta);
    }
  }
  std::array<cd, 11> l{};
  const double h3 = h * h * h;
  for (std::size_t i = 0; i < 11; ++i) {
    cd s = 0.0;
    for (std::size_t k = 0; k < m; ++k) s += std::conj(x_ref(k, i)) * fk[k];
    l[i] = h3 * s;
  }
  return l;
}

inline void check_bc_consistency(const MeshSpec& mesh, const ExactSolution& exact, const DirichletData& bc) {
  if (bc.mode != DirichletMode::Homogeneous) return;
  for (int j = 0; j <= mesh.n; ++j) {
    for (int i = 0; i <= mesh.n; ++i) {
      if (!mesh.is_boundary_vertex(i, j)) continue;
      const auto p = mesh.vertex_position(i, j);
      if (std::abs(exact.phi(p[0], p[1])) > 1e-12) {
        throw Error(ErrorKind::BCInconsistent, "homogeneous Dirichlet data but exact phi is nonzero at boundary vertex (" +
                                                   std::to_string(p[0]) + ", " + std::to_string(p[1]) + ")");
      }
    }
  }
}

/// Practical DPG method for the first-order Helmholtz system on the uniform
/// mesh. The single reference element is condensed once and shared.
inline SolveReport solve_dpg(const MeshSpec& mesh, double omega, double eps, int r, const ExactSolution& exact,
                             const DirichletData& bc, const DpgSolveOptions& opts = {}) {
  const auto t0 = std::chrono::steady_clock::now();
  check_bc_consistency(mesh, exact, bc);
  const double h = mesh.h;
  NormalizedParams params{omega * h, eps * h, r, opts.precision};
  if (eps == 0.0 && !params.precision.is_extended()) params.precision = Precision::extended(opts.element.extended_digits);
  const DpgLocalSystem local = dpg_local_system(params, opts.element);
  const auto& cond = local.condensed;
  const CMatrixD k_phys = scale_to_physical(cond.S, h);

  const auto table = tabulate_for_load(r, opts.load_points > 0 ? opts.load_points : r + 6);
  const SourceFn f = exact.source();
  std::vector<std::array<cd, 11>> full_loads(mesh.element_count());
  std::vector<std::array<cd, 8>> loads(mesh.element_count());
  for (int ej = 0; ej < mesh.n; ++ej) {
    for (int ei = 0; ei < mesh.n; ++ei) {
      const std::size_t e = static_cast<std::size_t>(ei + ej * mesh.n);
      const auto o = mesh.element_origin(ei, ej);
      full_loads[e] = dpg_load(f, o[0], o[1], h, local.element.X, table);
      const auto ct = cond.condense_load(full_loads[e]);
      std::copy(ct.begin(), ct.end(), loads[e].begin());
    }
  }
  const GlobalSystem sys = assemble_trace_system(mesh, k_phys, loads);

  SolveReport rep;
  rep.precision_used = local.element.precision_used;
  rep.trace = solve_with_dirichlet(mesh, sys, bc, &rep.residual);
  rep.fields.resize(mesh.element_count());
  const double inv_h2 = 1.0 / (h * h);
  for (int ej = 0; ej < mesh.n; ++ej) {
    for (int ei = 0; ei < mesh.n; ++ei) {
      const std::size_t e = static_cast<std::size_t>(ei + ej * mesh.n);
      const auto dofs = mesh.element_dofs(ei, ej);
      std::array<cd, 8> xt;
      for (std::size_t a = 0; a < 8; ++a) xt[a] = rep.trace[dofs[a]];
      const std::array<cd, 3> li = {full_loads[e][0] * inv_h2, full_loads[e][1] * inv_h2, full_loads[e][2] * inv_h2};
      rep.fields[e] = cond.recover(xt, li);
    }
  }
  const auto fe = field_errors(
      mesh, exact, [&](int ei, int ej, double, double) { return rep.fields[static_cast<std::size_t>(ei + ej * mesh.n)]; },
      opts.error_points);
  rep.e_r = fe.error;
  rep.a = fe.best;
  rep.ratio = safe_ratio(rep.e_r, rep.a);
  rep.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

/// Discrete FOSLS fields (u_h, phi_h) on element (ei, ej) at reference point.
inline std::array<cd, 3> fosls_fields_at(const MeshSpec& mesh, const std::vector<cd>& trace, int ei, int ej, double x,
                                         double y) {
  const auto dofs = mesh.element_dofs(ei, ej);
  std::array<cd, 3> v{};
  for (std::size_t i = 0; i < 8; ++i) {
    const auto b = conforming_basis(i, x, y);
    const cd c = trace[dofs[i]];
    v[0] += c * b.u[0];
    v[1] += c * b.u[1];
    v[2] += c * b.phi;
  }
  return v;
}

struct FoslsSolveOptions {
  int load_points = 6;
  int error_points = 6;
};

/// Conforming L2 least-squares method on RT_0 x Q_1 with Dirichlet vertex data.
inline SolveReport solve_fosls(const MeshSpec& mesh, double omega, const ExactSolution& exact, const DirichletData& bc,
                               const FoslsSolveOptions& opts = {}) {
  const auto t0 = std::chrono::steady_clock::now();
  check_bc_consistency(mesh, exact, bc);
  const double h = mesh.h;
  const CMatrixD m = fosls_element(omega * h);
  const SourceFn f = exact.source();
  std::vector<std::array<cd, 8>> loads(mesh.element_count());
  for (int ej = 0; ej < mesh.n; ++ej) {
    for (int ei = 0; ei < mesh.n; ++ei) {
      const auto o = mesh.element_origin(ei, ej);
      loads[static_cast<std::size_t>(ei + ej * mesh.n)] = fosls_load(f, omega, o[0], o[1], h, opts.load_points);
    }
  }
  const GlobalSystem sys = assemble_trace_system(mesh, m, loads);
  SolveReport rep;
  rep.precision_used = Precision::double_precision();
  rep.trace = solve_with_dirichlet(mesh, sys, bc, &rep.residual);
  rep.fields.resize(mesh.element_count());
  const auto mean_rule = tensor_gauss_rule<double>(2);
  for (int ej = 0; ej < mesh.n; ++ej) {
    for (int ei = 0; ei < mesh.n; ++ei) {
      std::array<cd, 3> mean{};
      for (const auto& p : mean_rule.points) {
        const auto v = fosls_fields_at(mesh, rep.trace, ei, ej, p.x, p.y);
        for (int c = 0; c < 3; ++c) mean[c] += p.w * v[c];
      }
      rep.fields[static_cast<std::size_t>(ei + ej * mesh.n)] = mean;
    }
  }
  const auto fe = field_errors(
      mesh, exact, [&](int ei, int ej, double x, double y) { return fosls_fields_at(mesh, rep.trace, ei, ej, x, y); },
      opts.error_points);
  rep.e_r = fe.error;
  rep.a = fe.best;
  rep.ratio = safe_ratio(rep.e_r, rep.a);
  rep.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

}  // namespace helmdpg
