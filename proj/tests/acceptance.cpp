/// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "helmdpg/cli/run.hpp"
#include "helmdpg/helmdpg.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace helmdpg;

namespace {

constexpr double kPi = std::numbers::pi;

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

/// Every root computed by the dispersion criteria is certified here.
struct CertificateLog {
  std::size_t roots = 0;
  std::size_t failed = 0;
  double worst_det = 0.0;
  double worst_residual = 0.0;

  void add(const StencilSet& st, const DispersionPoint& p) {
    const auto c = certify_root(st, p);
    ++roots;
    if (!c.ok()) ++failed;
    worst_det = std::max(worst_det, c.det_ratio);
    worst_residual = std::max(worst_residual, c.ansatz_residual);
  }
};

CertificateLog g_certs;

DispersionPoint certified_root(const StencilSet& st, double theta, double omega_h_norm) {
  const auto p = solve_root(st, theta, 1.0, omega_h_norm);
  g_certs.add(st, p);
  return p;
}

/// rho and eta over 181 angles on [0, pi/2], certifying every root.
SweepSummary certified_sweep(Method m, double omega_h_norm, double eps, int r) {
  const auto st = extract_stencils(m, 1.0, omega_h_norm, eps, r);
  const auto sw = theta_sweep(st, 1.0, omega_h_norm, 181);
  for (const auto& p : sw.points)
    if (p) g_certs.add(st, *p);
  if (sw.summary.failures) {
    throw std::runtime_error(std::to_string(sw.summary.failures) + " angles without a root for " + to_string(m) +
                             " eps=" + fmt(eps) + " r=" + std::to_string(r));
  }
  return sw.summary;
}

double slope_of(Method m, double eps, int r) {
  std::vector<double> xs, ys;
  for (int l = 3; l <= 7; ++l) {
    const double wh = 2.0 * kPi / std::pow(2.0, l);
    const auto st = extract_stencils(m, 1.0, wh, eps, r);
    const auto p = certified_root(st, 0.0, wh);
    xs.push_back(wh);
    ys.push_back(std::abs(p.wh - wh));
  }
  return loglog_slope(xs, ys);
}

Verdict scaling_law() {
  std::mt19937 gen(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  for (int k = 0; k < 20; ++k) {
    const int r = 2 + k % 2;
    const double wn = 0.1 + 2.9 * u(gen), en = std::pow(10.0, -6 * u(gen)), h = std::pow(10.0, -2 * u(gen));
    const double omega = wn / h, eps = en / h;
    const auto ref = testutil::to_eigen(scale_to_physical(dpg_element(NormalizedParams{wn, en, r}).B, h));
    const auto phys = r == 2 ? oracle::physical_dpg_matrix<5>(omega, eps, h, 0.3, -0.7, r)
                             : oracle::physical_dpg_matrix<6>(omega, eps, h, 0.3, -0.7, r);
    worst = std::max(worst, (ref - phys).norm() / phys.norm());
  }
  return {worst <= 1e-10, "max ||B - h^2 B_ref|| / ||B|| = " + fmt(worst) + " over 20 cases"};
}

Verdict riesz_definition() {
  double res = 0.0, herm = 0.0, lam = INFINITY;
  for (double wn : {0.3, kPi / 4, 2.0}) {
    for (double en : {1.0, 1e-3, 1e-6}) {
      const auto e = dpg_element(NormalizedParams{wn, en, 2});
      // residual of the Riesz system measured in the working precision
      const double r = with_precision(e.precision_used, [&]<typename R>() {
        const auto w = dpg_element_in<R>(wn, en, 2);
        return static_cast<double>(frobenius_norm(w.G * w.X - w.Bb) / frobenius_norm(w.Bb));
      });
      res = std::max(res, r);
      herm = std::max(herm, hermitian_defect(e.B) / frobenius_norm(e.B));
      lam = std::min(lam, min_eigenvalue_bound(e.B) / frobenius_norm(e.B));
    }
  }
  return {res <= 1e-10 && herm <= 1e-10 && lam >= -1e-10,
          "max residual " + fmt(res) + ", max hermitian defect " + fmt(herm) + ", min eig / ||B|| " + fmt(lam)};
}

Verdict stencil_structure() {
  std::string detail;
  bool ok = true;
  for (Method m : {Method::Dpg, Method::Fosls}) {
    const auto st = extract_stencils(m, 1.0, kPi / 4, 1e-2, 3);
    ok = ok && st.support_size(0) == 21 && st.support_size(1) == 13 && st.support_size(2) == 13;
    detail += to_string(m) + " " + std::to_string(st.support_size(0)) + "/" + std::to_string(st.support_size(1)) + "/" +
              std::to_string(st.support_size(2)) + " (nonzero " + std::to_string(st.nonzero_count(0)) + "/" +
              std::to_string(st.nonzero_count(1)) + "/" + std::to_string(st.nonzero_count(2)) + "), ";
  }
  const auto fem = extract_stencils(Method::Fem, 1.0, kPi / 4, 0.0, 0);
  ok = ok && fem.support_size(0) == 9;
  detail += "fem " + std::to_string(fem.support_size(0));
  // rows read from a larger patch contain no weight outside the support
  StencilOptions big;
  big.patch = 5;
  big.center_i = big.center_j = 2;
  const auto base = extract_stencils(Method::Dpg, 1.0, kPi / 4, 1e-2, 3);
  const auto wide = extract_stencils(Method::Dpg, 1.0, kPi / 4, 1e-2, 3, big);
  double outside = 0.0;
  for (int t = 0; t < 3; ++t) {
    for (const auto& w : wide.rows[static_cast<std::size_t>(t)]) {
      bool inside = false;
      for (const auto& b : base.rows[static_cast<std::size_t>(t)])
        inside = inside || (b.s == w.s && b.two_lx == w.two_lx && b.two_ly == w.two_ly);
      if (!inside) outside = std::max(outside, std::abs(w.value));
    }
  }
  ok = ok && outside < 1e-12 * wide.max_abs();
  return {ok, detail + ", max weight outside support " + fmt(outside)};
}

Verdict fem_cutoff() {
  double below = 0.0;
  for (double wh : {0.5, 1.0, 2.0, 3.0, 3.4}) {
    const auto st = extract_stencils(Method::Fem, 1.0, wh, 0.0, 0);
    below = std::max(below, std::abs(certified_root(st, 0.0, wh).wh.imag()));
  }
  double re_dev = 0.0;
  bool increasing = true;
  double prev = -1.0;
  std::string ims;
  for (double wh : {3.6, 4.0, 5.0, 6.0}) {
    const auto st = extract_stencils(Method::Fem, 1.0, wh, 0.0, 0);
    const auto p = certified_root(st, 0.0, wh);
    re_dev = std::max(re_dev, std::abs(p.wh.real() - kPi));
    const double im = std::abs(p.wh.imag());
    increasing = increasing && im > prev;
    prev = im;
    ims += (ims.empty() ? "" : ", ") + fmt(im);
  }
  return {below <= 1e-10 && re_dev <= 1e-8 && increasing,
          "max |Im| below cutoff " + fmt(below) + ", max |Re - pi| above " + fmt(re_dev) + ", |Im| above: " + ims};
}

Verdict convergence_rates() {
  const double fem = slope_of(Method::Fem, 0.0, 0);
  const double fosls = slope_of(Method::Fosls, 0.0, 0);
  const double dpg1 = slope_of(Method::Dpg, 1.0, 3);
  const double dpg6 = slope_of(Method::Dpg, 1e-6, 3);
  const bool ok = std::abs(fem - 3.0) <= 0.3 && std::abs(fosls - 2.0) <= 0.3 && std::abs(dpg1 - 2.0) <= 0.4 && dpg6 >= 2.7;
  return {ok, "fem " + fmt(fem) + ", fosls " + fmt(fosls) + ", dpg(eps=1) " + fmt(dpg1) + ", dpg(eps=1e-6) " + fmt(dpg6)};
}

Verdict eps_ordering() {
  std::string detail;
  const double w4 = 2.0 * kPi / 4, w8 = 2.0 * kPi / 8;
  const double a = certified_sweep(Method::Dpg, w4, 1e-4, 3).rho;
  const double b = certified_sweep(Method::Dpg, w4, 1e-2, 3).rho;
  const double c = certified_sweep(Method::Dpg, w4, 1.0, 3).rho;
  const bool coarse = a < b && b < c;
  detail += "2pi/4 r=3 rho(1e-4, 1e-2, 1) = " + fmt(a) + ", " + fmt(b) + ", " + fmt(c) + "; ";

  bool monotone = true;
  double prev_rho = INFINITY, prev_eta = INFINITY;
  std::string r3;
  for (double e : {1.0, 1e-1, 1e-2, 1e-4, 1e-6}) {
    const auto s = certified_sweep(Method::Dpg, w8, e, 3);
    monotone = monotone && s.rho <= prev_rho && s.eta <= prev_eta;
    prev_rho = s.rho;
    prev_eta = s.eta;
    r3 += (r3.empty() ? "" : ", ") + fmt(s.rho) + "/" + fmt(s.eta);
  }
  detail += "2pi/8 r=3 rho/eta over eps 1..1e-6: " + r3 + "; ";

  bool turnaround = false;
  double prev = INFINITY;
  std::string r2;
  for (double e : {1e-2, 1e-3, 1e-4, 1e-5, 1e-6}) {
    const double rho = certified_sweep(Method::Dpg, w8, e, 2).rho;
    turnaround = turnaround || rho > prev;
    prev = rho;
    r2 += (r2.empty() ? "" : ", ") + fmt(rho);
  }
  detail += "2pi/8 r=2 rho over eps 1e-2..1e-6: " + r2;
  return {coarse && monotone && turnaround, detail};
}

Verdict method_ordering() {
  const double wh = 2.0 * kPi / 4;
  const double dpg = certified_sweep(Method::Dpg, wh, 1e-6, 3).rho;
  const double fem = certified_sweep(Method::Fem, wh, 0.0, 0).rho;
  const double fosls = certified_sweep(Method::Fosls, wh, 0.0, 0).rho;
  return {dpg < std::min(fem, fosls), "rho dpg " + fmt(dpg) + ", fem " + fmt(fem) + ", fosls " + fmt(fosls)};
}

double g_min_ratio = INFINITY;

double ratio_at(const std::vector<ResonanceRow>& rows, double omega, double eps) {
  for (const auto& r : rows) {
    if (r.omega == omega && r.eps == eps) {
      if (!r.report) throw std::runtime_error("solve failed at omega=" + fmt(omega) + ": " + r.error);
      return r.report->ratio;
    }
  }
  throw std::runtime_error("missing resonance row");
}

Verdict resonance_ratio() {
  const auto eps = decade_eps_grid(4);
  const auto rows = resonance_sweep({2.0, 3.5, 4.4, 5.0}, eps, 16, 3);
  for (const auto& r : rows)
    if (r.report) g_min_ratio = std::min(g_min_ratio, r.report->ratio);
  double at2 = 0.0;
  for (double e : eps) at2 = std::max(at2, ratio_at(rows, 2.0, e));
  const double r35 = ratio_at(rows, 3.5, 1.0), r44 = ratio_at(rows, 4.4, 1.0);
  const double r5a = ratio_at(rows, 5.0, 1e-4), r5b = ratio_at(rows, 5.0, 1.0);
  return {at2 <= 1.5 && r44 > 3.0 * r35 && r5a < r5b,
          "max ratio at omega=2 " + fmt(at2) + "; eps=1: ratio(4.4) " + fmt(r44) + " vs ratio(3.5) " + fmt(r35) +
              "; omega=5: ratio(1e-4) " + fmt(r5a) + " vs ratio(1) " + fmt(r5b)};
}

Verdict dissipation_demo() {
  const double omega = 6 * kPi, theta = kPi / 8;
  const double sharp = plane_wave_demo(Method::Dpg, theta, 48, omega, 1e-6, 3).decay;
  const double graph = plane_wave_demo(Method::Dpg, theta, 48, omega, 1.0, 3).decay;
  const double fosls = plane_wave_demo(Method::Fosls, theta, 48, omega, 0.0, 0).decay;
  return {sharp >= 0.9 && graph < sharp && fosls < sharp,
          "decay dpg(eps=1e-6) " + fmt(sharp) + ", dpg(eps=1) " + fmt(graph) + ", fosls " + fmt(fosls)};
}

std::string cli_output(const std::vector<std::string>& args) {
  std::vector<const char*> argv{"helm_dpg"};
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  if (run(static_cast<int>(argv.size()), argv.data(), out, err) != 0) throw std::runtime_error("cli failed: " + err.str());
  return out.str();
}

Verdict property_suite() {
  std::string detail;
  // quadrature: n-point tensor rule integrates x^a y^b exactly for a, b <= 2n - 1
  double quad = 0.0;
  for (int n = 1; n <= 8; ++n) {
    const auto rule = tensor_gauss_rule<double>(n);
    for (int a = 0; a <= 2 * n - 1; ++a) {
      for (int b = 0; b <= 2 * n - 1; ++b) {
        double q = 0.0;
        for (const auto& p : rule.points) q += p.w * std::pow(p.x, a) * std::pow(p.y, b);
        quad = std::max(quad, std::abs(q * (a + 1) * (b + 1) - 1.0));
      }
    }
  }
  detail += "quadrature " + fmt(quad);

  double sym = 0.0;
  for (double wh : {kPi / 4, kPi / 2}) {
    const auto st = extract_stencils(Method::Dpg, 1.0, wh, 1e-2, 3);
    for (double theta : {0.1, 0.3, 0.6}) {
      const auto a = certified_root(st, theta, wh);
      const auto b = certified_root(st, kPi / 2 - theta, wh);
      sym = std::max(sym, std::abs(a.wh - b.wh));
    }
  }
  detail += ", theta reflection " + fmt(sym);

  const auto conv = h_convergence(Method::Dpg, 2.0, 1e-2, 3);
  for (const auto& p : conv.points) g_min_ratio = std::min(g_min_ratio, p.e_r / p.a);
  detail += ", min ratio " + fmt(g_min_ratio) + ", e_r rate " + fmt(conv.rate);

  const std::vector<std::string> a = {"stencil-dump", "--method", "dpg", "--omega", "1", "--h", "0.7", "--eps", "0.3"};
  const std::vector<std::string> b = {"dispersion", "--method", "dpg", "--omega", "1", "--h", "0.785", "--eps", "0.01",
                                      "--theta-grid", "9", "--points-output", "-"};
  const bool det = cli_output(a) == cli_output(a) && cli_output(b) == cli_output(b);
  detail += det ? ", csv deterministic" : ", csv differs between runs";
  return {quad <= 1e-13 && sym <= 1e-10 && g_min_ratio >= 1.0 - 1e-9 && std::abs(conv.rate - 1.0) <= 0.2 && det, detail};
}

Verdict root_certificates() {
  return {g_certs.failed == 0 && g_certs.roots > 0,
          std::to_string(g_certs.roots) + " roots, " + std::to_string(g_certs.failed) + " failed, worst det ratio " +
              fmt(g_certs.worst_det) + ", worst ansatz residual " + fmt(g_certs.worst_residual)};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    std::function<Verdict()> check;
  };
  // root certificates are reported after every criterion that solves for roots
  const std::vector<Criterion> order = {{1, scaling_law},      {2, riesz_definition},  {3, stencil_structure},
                                        {5, fem_cutoff},       {6, convergence_rates}, {7, eps_ordering},
                                        {8, method_ordering},  {9, resonance_ratio},   {10, dissipation_demo},
                                        {11, property_suite},  {4, root_certificates}};
  std::vector<std::pair<int, Verdict>> results;
  for (const auto& c : order) {
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.check();
    } catch (const std::exception& e) {
      v = {false, std::string("error: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    v.detail += " [" + fmt(secs) + " s]";
    results.emplace_back(c.id, v);
  }
  std::sort(results.begin(), results.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  int failures = 0;
  for (const auto& [id, v] : results) {
    std::printf("%s criterion %d: %s\n", v.pass ? "PASS" : "FAIL", id, v.detail.c_str());
    failures += v.pass ? 0 : 1;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(results.size()) - failures, results.size());
  return failures == 0 ? 0 : 1;
}
