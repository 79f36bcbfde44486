#pragma once

#include <CLI11.hpp>

#include <cmath>
#include <iostream>
#include <numbers>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "helmdpg/assembly/drivers.hpp"
#include "helmdpg/cli/selftest.hpp"
#include "helmdpg/dispersion/sweeps.hpp"
#include "helmdpg/io/csv.hpp"

namespace helmdpg {

/// Parameters shared by the subcommands; each subcommand registers the subset it reads.
struct RunConfig {
  std::string method = "dpg";
  double omega = 1.0;
  std::optional<double> h;
  std::optional<int> n;
  double eps = 1e-2;
  int r = 3;
  double theta = 0.0;
  std::optional<int> theta_grid;
  std::string precision = "double";
  int digits = 32;
  std::string output = "-";
  std::string points_output;
  std::string problem = "bubble";
  std::string bc = "auto";
  bool raw = false;

  double omega_min = 3.0, omega_max = 6.0, omega_step = 0.05;
  std::vector<double> eps_list;
  std::vector<int> r_list = {2, 3, 4};
  double omega_h = 2.0 * std::numbers::pi / 8;
  double band_step = 0.05, band_max = 6.0;

  Precision working_precision() const {
    return precision == "extended" ? Precision::extended(digits) : Precision::double_precision();
  }
};

/// Raised for inconsistent parameters; reported with exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

/// key=value configuration whose unsectioned keys belong to the active subcommand.
class ScopedConfig : public CLI::ConfigINI {
 public:
  std::string subcommand;

  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    auto items = CLI::ConfigINI::from_config(input);
    if (!subcommand.empty())
      for (auto& it : items)
        if (it.parents.empty()) it.parents = {subcommand};
    return items;
  }
};

inline void emit(const CsvTable& t, const std::string& path, std::ostream& out) {
  if (path.empty()) return;
  if (path == "-") {
    t.write(out);
  } else {
    t.save(path);
  }
}

inline void require(bool ok, const std::string& msg) {
  if (!ok) throw UsageError(msg);
}

inline void validate_common(const RunConfig& c) {
  require(c.eps >= 0.0, "--eps must be nonnegative");
  require(c.omega > 0.0, "--omega must be positive");
  if (c.method == "dpg") require(c.r >= 2, "--r must be >= 2 for dpg");
}

/// Mesh size from --n and/or --h; both given must satisfy h = 1/n.
inline int resolve_n(const RunConfig& c, int fallback) {
  if (c.n && c.h) {
    require(std::abs(*c.h * *c.n - 1.0) <= 1e-9, "--h and --n are inconsistent (need h = 1/n)");
  }
  if (c.n) return *c.n;
  if (c.h) {
    const double n = 1.0 / *c.h;
    require(std::abs(n - std::round(n)) <= 1e-9, "--h must be 1/n for an integer n");
    return static_cast<int>(std::round(n));
  }
  return fallback;
}

inline double resolve_h(const RunConfig& c) {
  if (c.h) return *c.h;
  if (c.n) return 1.0 / *c.n;
  throw UsageError("--h or --n is required");
}

inline DpgSolveOptions dpg_options(const RunConfig& c) {
  DpgSolveOptions o;
  o.precision = c.working_precision();
  return o;
}

inline StencilOptions stencil_options(const RunConfig& c) {
  StencilOptions o;
  o.normalize = !c.raw;
  o.precision = c.working_precision();
  return o;
}

inline void describe(CsvTable& t, const std::string& command, const RunConfig& c) {
  t.meta("command", command);
  t.meta("method", c.method);
  t.meta("precision", c.precision);
}

inline CsvTable dispersion_table() {
  return CsvTable({"method", "r", "eps", "omega", "h", "theta", "re_wh", "im_wh", "abs_detF", "iters"});
}

inline void dispersion_row(CsvTable& t, const DispersionPoint& p) {
  t.row({to_string(p.method), p.r, p.eps, p.omega, p.h, p.theta, p.wh.real(), p.wh.imag(), p.abs_det, p.iterations});
}

inline CsvTable summary_table() { return CsvTable({"method", "r", "eps", "omega_h_norm", "rho", "eta"}); }

inline int cmd_solve(const RunConfig& c, std::ostream& out, std::ostream& log) {
  validate_common(c);
  const Method m = parse_method(c.method);
  require(m != Method::Fem, "solve supports --method dpg or fosls");
  const auto mesh = build_mesh(resolve_n(c, 16));
  ExactSolution ex;
  if (c.problem == "bubble") {
    ex = manufactured_bubble(c.omega);
  } else if (c.problem == "plane-wave") {
    ex = plane_wave(c.omega, c.theta);
  } else if (c.problem == "zero") {
    ex = zero_solution(c.omega);
  } else {
    throw UsageError("--problem must be bubble, plane-wave or zero");
  }
  std::string bc_mode = c.bc;
  if (bc_mode == "auto") bc_mode = c.problem == "plane-wave" ? "exact" : "homogeneous";
  require(bc_mode == "exact" || bc_mode == "homogeneous", "--bc must be auto, exact or homogeneous");
  const auto bc = bc_mode == "exact" ? exact_trace_dirichlet(mesh, ex) : homogeneous_dirichlet(mesh);
  const auto rep = m == Method::Dpg ? solve_dpg(mesh, c.omega, c.eps, c.r, ex, bc, dpg_options(c))
                                    : solve_fosls(mesh, c.omega, ex, bc);
  CsvTable t({"method", "n", "omega", "eps", "r", "e_r", "a", "ratio", "residual"});
  describe(t, "solve", c);
  t.meta("problem", c.problem);
  t.meta("precision_used", rep.precision_used.name());
  t.row({c.method, mesh.n, c.omega, c.eps, c.r, rep.e_r, rep.a, rep.ratio, rep.residual});
  emit(t, c.output, out);
  log << "solve: " << c.method << " n=" << mesh.n << " e_r=" << format_double(rep.e_r)
            << " a=" << format_double(rep.a) << " ratio=" << format_double(rep.ratio) << "\n";
  return 0;
}

inline int cmd_resonance(const RunConfig& c, std::ostream& out, std::ostream& log) {
  require(c.r >= 2, "--r must be >= 2");
  require(c.omega_step > 0.0 && c.omega_max >= c.omega_min, "invalid omega range");
  const auto eps = c.eps_list.empty() ? decade_eps_grid(4) : c.eps_list;
  for (double e : eps) require(e >= 0.0, "--eps-list entries must be nonnegative");
  const int n = resolve_n(c, 16);
  const auto rows = resonance_sweep(resonance_omega_grid(c.omega_min, c.omega_max, c.omega_step), eps, n, c.r,
                                    dpg_options(c));
  CsvTable t({"omega", "eps", "e_r", "a", "ratio"});
  describe(t, "resonance-sweep", c);
  t.meta("n", std::to_string(n));
  t.meta("r", std::to_string(c.r));
  std::size_t failures = 0;
  for (const auto& row : rows) {
    if (row.report) {
      t.row({row.omega, row.eps, row.report->e_r, row.report->a, row.report->ratio});
    } else {
      ++failures;
      t.meta("failure", "omega=" + format_double(row.omega) + " eps=" + format_double(row.eps) + " " + row.error);
    }
  }
  emit(t, c.output, out);
  log << "resonance-sweep: " << t.size() << " rows, " << failures << " failures\n";
  return 0;
}

inline int cmd_plane_wave(const RunConfig& c, std::ostream& out, std::ostream& log) {
  validate_common(c);
  const Method m = parse_method(c.method);
  require(m != Method::Fem, "plane-wave supports --method dpg or fosls");
  const int n = resolve_n(c, 48);
  const auto d = plane_wave_demo(m, c.theta, n, c.omega, c.eps, c.r, dpg_options(c));
  CsvTable t({"i", "j", "x", "y", "re_phi", "im_phi", "abs_phi"});
  describe(t, "plane-wave", c);
  t.meta("decay_metric", format_double(d.decay));
  for (int j = 0; j <= d.mesh.n; ++j) {
    for (int i = 0; i <= d.mesh.n; ++i) {
      const cd v = d.report.trace[d.mesh.vertex(i, j)];
      const auto p = d.mesh.vertex_position(i, j);
      t.row({i, j, p[0], p[1], v.real(), v.imag(), std::abs(v)});
    }
  }
  emit(t, c.output, out);
  log << "plane-wave: " << c.method << " decay_metric=" << format_double(d.decay)
            << " e_r=" << format_double(d.report.e_r) << "\n";
  return 0;
}

inline int cmd_dispersion(const RunConfig& c, std::ostream& out, std::ostream& log) {
  validate_common(c);
  const Method m = parse_method(c.method);
  const double h = resolve_h(c);
  require(h > 0.0, "--h must be positive");
  const auto st = extract_stencils(m, c.omega, h, c.eps, c.r, stencil_options(c));
  CsvTable t = dispersion_table();
  describe(t, "dispersion", c);
  if (c.theta_grid) {
    require(*c.theta_grid >= 2, "--theta-grid needs at least 2 points");
    const auto sw = theta_sweep(st, c.omega, h, static_cast<std::size_t>(*c.theta_grid));
    for (const auto& e : sw.errors) t.meta("failure", e);
    for (const auto& p : sw.points)
      if (p) dispersion_row(t, *p);
    CsvTable s = summary_table();
    describe(s, "dispersion", c);
    s.meta("failures", std::to_string(sw.summary.failures));
    s.row({c.method, st.r, c.eps, c.omega * h, sw.summary.rho, sw.summary.eta});
    emit(t, c.points_output, out);
    emit(s, c.output, out);
    log << "dispersion: rho=" << format_double(sw.summary.rho) << " eta=" << format_double(sw.summary.eta)
              << " failures=" << sw.summary.failures << "\n";
    return sw.summary.points == 0 ? 1 : 0;
  }
  const auto p = solve_root(st, c.theta, c.omega, h);
  if (p.branch_ambiguous) t.meta("warning", "BranchAmbiguity");
  dispersion_row(t, p);
  emit(t, c.output, out);
  log << "dispersion: omega_h h = " << format_double(p.wh.real()) << (p.wh.imag() < 0 ? "" : "+")
            << format_double(p.wh.imag()) << "i\n";
  return 0;
}

inline int cmd_band(const RunConfig& c, std::ostream& out, std::ostream& log) {
  const Method m = parse_method(c.method);
  require(c.eps >= 0.0, "--eps must be nonnegative");
  if (m == Method::Dpg) require(c.r >= 2, "--r must be >= 2 for dpg");
  require(c.band_step > 0.0 && c.band_max > 0.0, "--step and --max must be positive");
  BandOptions bo;
  bo.step = c.band_step;
  bo.max = c.band_max;
  bo.theta = c.theta;
  bo.eps = c.eps;
  bo.r = c.r;
  bo.stencil = stencil_options(c);
  const auto pts = band_diagram(m, bo);
  CsvTable t({"method", "omega_h_norm", "re", "im"});
  describe(t, "band", c);
  std::size_t gaps = 0;
  for (const auto& p : pts) {
    if (p.wh) {
      t.row({c.method, p.omega_h_norm, p.wh->real(), p.wh->imag()});
    } else {
      ++gaps;
      t.meta("gap", "omega_h_norm=" + format_double(p.omega_h_norm) + " " + p.error);
    }
  }
  emit(t, c.output, out);
  log << "band: " << t.size() << " points, " << gaps << " gaps\n";
  return t.size() == 0 ? 1 : 0;
}

inline int cmd_eps_r(const RunConfig& c, std::ostream& out, std::ostream& log) {
  const auto eps = c.eps_list.empty() ? std::vector<double>{1, 1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6} : c.eps_list;
  for (double e : eps) require(e >= 0.0, "--eps-list entries must be nonnegative");
  for (int r : c.r_list) require(r >= 2, "--r-list entries must be >= 2");
  require(c.omega_h > 0.0, "--omega-h must be positive");
  const auto rows = epsilon_r_sweep(eps, c.r_list, c.omega_h, static_cast<std::size_t>(c.theta_grid.value_or(181)),
                                    stencil_options(c));
  CsvTable t = summary_table();
  t.meta("command", "eps-r-sweep");
  t.meta("precision", c.precision);
  for (const auto& row : rows) {
    if (row.summary.failures) {
      t.meta("failures", "r=" + std::to_string(row.r) + " eps=" + format_double(row.eps) + " count=" +
                             std::to_string(row.summary.failures));
    }
    t.row({"dpg", row.r, row.eps, c.omega_h, row.summary.rho, row.summary.eta});
  }
  emit(t, c.output, out);
  log << "eps-r-sweep: " << t.size() << " rows\n";
  return 0;
}

inline int cmd_stencil(const RunConfig& c, std::ostream& out, std::ostream& log) {
  validate_common(c);
  const Method m = parse_method(c.method);
  const double h = resolve_h(c);
  const auto st = extract_stencils(m, c.omega, h, c.eps, c.r, stencil_options(c));
  CsvTable t = stencil_table(st);
  describe(t, "stencil-dump", c);
  t.meta("normalized", st.normalized ? "true" : "false");
  emit(t, c.output, out);
  log << "stencil-dump: " << t.size() << " weights\n";
  return 0;
}

inline int cmd_selftest(std::ostream& out) {
  const auto results = run_selftest();
  bool ok = true;
  for (const auto& r : results) {
    out << (r.pass ? "PASS " : "FAIL ") << r.name << ": " << r.detail << "\n";
    ok = ok && r.pass;
  }
  return ok ? 0 : 1;
}

}  // namespace detail

/// Command-line entry point. Exit codes: 0 success, 1 numerical failure, 2 usage error.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"DPG, FOSLS and FEM solvers and dispersion analysis for the Helmholtz equation", "helm_dpg"};
  app.set_help_flag("--help", "print help and exit");
  app.require_subcommand(1);
  app.fallthrough();
  auto config = std::make_shared<detail::ScopedConfig>();
  app.config_formatter(config);
  app.set_config("--config", "", "key=value configuration file; flags override its values");
  RunConfig c;

  auto method = [&](CLI::App* s) {
    s->add_option("--method", c.method, "dpg, fosls or fem")->check(CLI::IsMember({"dpg", "fosls", "fem"}));
  };
  auto physics = [&](CLI::App* s) {
    s->add_option("--omega", c.omega, "wavenumber");
    s->add_option("--eps", c.eps, "test-norm scaling epsilon");
    s->add_option("--r", c.r, "test-space enrichment degree");
  };
  auto mesh = [&](CLI::App* s) {
    s->add_option("--n", c.n, "elements per side");
    s->add_option("--h", c.h, "mesh size");
  };
  auto precision = [&](CLI::App* s) {
    s->add_option("--precision", c.precision, "double or extended")->check(CLI::IsMember({"double", "extended"}));
    s->add_option("--digits", c.digits, "digits of extended precision")->check(CLI::Range(30, 1000));
  };
  auto output = [&](CLI::App* s) {
    s->add_option("-o,--output", c.output, "output CSV path, '-' for stdout");
  };

  auto* solve = app.add_subcommand("solve", "solve the boundary value problem on the unit square");
  method(solve), physics(solve), mesh(solve), precision(solve), output(solve);
  solve->add_option("--problem", c.problem, "bubble, plane-wave or zero");
  solve->add_option("--theta", c.theta, "plane-wave direction");
  solve->add_option("--bc", c.bc, "auto, exact or homogeneous");

  auto* res = app.add_subcommand("resonance-sweep", "error ratio e_r/a over omega and eps");
  res->add_option("--r", c.r, "test-space enrichment degree");
  mesh(res), precision(res), output(res);
  res->add_option("--omega-min", c.omega_min);
  res->add_option("--omega-max", c.omega_max);
  res->add_option("--omega-step", c.omega_step);
  res->add_option("--eps-list", c.eps_list, "epsilon values")->delimiter(',');

  auto* pw = app.add_subcommand("plane-wave", "plane-wave dissipation demo");
  method(pw), physics(pw), mesh(pw), precision(pw), output(pw);
  pw->add_option("--theta", c.theta, "propagation angle");

  auto* disp = app.add_subcommand("dispersion", "discrete wavenumbers from the stencil symbol");
  method(disp), physics(disp), mesh(disp), precision(disp), output(disp);
  disp->add_option("--theta", c.theta, "direction of the single root");
  disp->add_option("--theta-grid", c.theta_grid, "number of angles on [0, pi/2]");
  disp->add_option("--points-output", c.points_output, "per-angle root CSV path for --theta-grid");
  disp->add_flag("--raw", c.raw, "do not normalize stencil rows");

  auto* band = app.add_subcommand("band", "discrete wavenumber against omega h with continuation");
  method(band), physics(band), precision(band), output(band);
  band->add_option("--theta", c.theta);
  band->add_option("--step", c.band_step);
  band->add_option("--max", c.band_max);

  auto* epsr = app.add_subcommand("eps-r-sweep", "rho and eta of DPG over eps and r");
  precision(epsr), output(epsr);
  epsr->add_option("--eps-list", c.eps_list, "epsilon values")->delimiter(',');
  epsr->add_option("--r-list", c.r_list, "enrichment degrees")->delimiter(',');
  epsr->add_option("--omega-h", c.omega_h, "normalized wavenumber omega h");
  epsr->add_option("--theta-grid", c.theta_grid, "number of angles on [0, pi/2]");

  auto* sten = app.add_subcommand("stencil-dump", "stencil weights of the central rows");
  method(sten), physics(sten), mesh(sten), precision(sten), output(sten);
  sten->add_flag("--raw", c.raw, "do not normalize stencil rows");

  auto* self = app.add_subcommand("selftest", "run the invariant checks");

  for (int i = 1; i < argc; ++i) {
    const std::string tok = argv[i];
    if (!tok.empty() && tok[0] != '-' && app.get_subcommand_no_throw(tok) != nullptr) {
      config->subcommand = tok;
      break;
    }
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return 0;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }
  if (band->parsed() && !band->count("--eps")) c.eps = 0.0;
  if (pw->parsed()) {
    if (!pw->count("--theta")) c.theta = std::numbers::pi / 8;
    if (!pw->count("--omega")) c.omega = 6 * std::numbers::pi;
    if (!pw->count("--eps")) c.eps = 1e-6;
  }

  try {
    if (solve->parsed()) return detail::cmd_solve(c, out, err);
    if (res->parsed()) return detail::cmd_resonance(c, out, err);
    if (pw->parsed()) return detail::cmd_plane_wave(c, out, err);
    if (disp->parsed()) return detail::cmd_dispersion(c, out, err);
    if (band->parsed()) return detail::cmd_band(c, out, err);
    if (epsr->parsed()) return detail::cmd_eps_r(c, out, err);
    if (sten->parsed()) return detail::cmd_stencil(c, out, err);
    if (self->parsed()) return detail::cmd_selftest(out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    const auto k = e.kind();
    const bool usage = k == ErrorKind::InvalidParameter || k == ErrorKind::REnrichmentTooSmall ||
                       k == ErrorKind::MeshTooSmall || k == ErrorKind::UnsupportedPrecision;
    err << (usage ? "usage error: " : "numerical failure: ") << e.what() << "\n";
    return usage ? 2 : 1;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace helmdpg
