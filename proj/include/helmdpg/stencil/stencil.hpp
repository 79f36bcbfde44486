#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "helmdpg/errors.hpp"
#include "helmdpg/localforms/condense.hpp"
#include "helmdpg/localforms/lowest_order_elements.hpp"

namespace helmdpg {

enum class Method { Dpg, Fosls, Fem };

inline std::string to_string(Method m) {
  switch (m) {
    case Method::Dpg: return "dpg";
    case Method::Fosls: return "fosls";
    case Method::Fem: return "fem";
  }
  return "?";
}

inline Method parse_method(const std::string& s) {
  if (s == "dpg") return Method::Dpg;
  if (s == "fosls") return Method::Fosls;
  if (s == "fem") return Method::Fem;
  throw Error(ErrorKind::InvalidParameter, "unknown method '" + s + "' (expected dpg, fosls or fem)");
}

/// Node types: 0 vertex, 1 horizontal-edge midpoint, 2 vertical-edge midpoint.
/// Positions are stored doubled, in units of h/2, so every offset is integral.
inline constexpr std::array<std::array<int, 2>, 3> kTypeCenter = {{{0, 0}, {1, 0}, {0, 1}}};

struct StencilWeight {
  int s = 0;
  int two_lx = 0;
  int two_ly = 0;
  cd value;
};

/// Translation-invariant stencil rows D_{t,s,l}, one row per node type t.
struct StencilSet {
  Method method = Method::Dpg;
  int S = 3;
  bool normalized = true;
  double omega = 1.0;
  double h = 1.0;
  double eps = 1.0;
  int r = 0;
  Precision precision_used;
  std::vector<std::vector<StencilWeight>> rows;  // rows[t], sorted by (s, two_ly, two_lx)

  cd weight(int t, int s, int two_lx, int two_ly) const {
    for (const auto& w : rows.at(static_cast<std::size_t>(t)))
      if (w.s == s && w.two_lx == two_lx && w.two_ly == two_ly) return w.value;
    return cd(0.0);
  }

  double max_abs() const {
    double m = 0.0;
    for (const auto& row : rows)
      for (const auto& w : row) m = std::max(m, std::abs(w.value));
    return m;
  }

  /// Number of offsets in the structural support of row t: every (s, l) reached
  /// by an element containing the row center, whatever the value of the weight.
  std::size_t support_size(int t) const { return rows.at(static_cast<std::size_t>(t)).size(); }

  /// Number of weights in row t above rel_tol times the largest weight of the set.
  std::size_t nonzero_count(int t, double rel_tol = 1e-12) const {
    const double cut = rel_tol * max_abs();
    const auto& row = rows.at(static_cast<std::size_t>(t));
    return static_cast<std::size_t>(
        std::count_if(row.begin(), row.end(), [cut](const StencilWeight& w) { return std::abs(w.value) > cut; }));
  }
};

struct StencilOptions {
  int patch = 3;        // elements per side of the assembled patch
  int center_i = 1;     // lattice point of the central rows
  int center_j = 1;
  bool normalize = true;
  Precision precision = Precision::double_precision();
  ElementOptions element{};
};

namespace detail {

struct PatchElement {
  CMatrixD k;                                  // physical element matrix
  std::vector<std::array<int, 3>> local_nodes; // (type, 2x, 2y) relative to the element origin
};

inline PatchElement patch_element(Method method, double omega, double h, double eps, int r,
                                  const StencilOptions& opts, Precision& used) {
  PatchElement pe;
  const double wn = omega * h;
  if (method == Method::Fem) {
    pe.k = fem_element(wn);
    pe.local_nodes = {{0, 0, 0}, {0, 2, 0}, {0, 2, 2}, {0, 0, 2}};
    used = Precision::double_precision();
    return pe;
  }
  pe.local_nodes = {{0, 0, 0}, {0, 2, 0}, {0, 2, 2}, {0, 0, 2}, {1, 1, 0}, {1, 1, 2}, {2, 0, 1}, {2, 2, 1}};
  if (method == Method::Fosls) {
    pe.k = fosls_element(wn);
    used = Precision::double_precision();
    return pe;
  }
  NormalizedParams p{wn, eps * h, r, opts.precision};
  if (eps == 0.0 && !p.precision.is_extended()) p.precision = Precision::extended(opts.element.extended_digits);
  const auto local = dpg_local_system(p, opts.element);
  pe.k = scale_to_physical(local.condensed.S, h);
  used = local.element.precision_used;
  return pe;
}

}  // namespace detail

/// Assembles a patch of elements without boundary conditions and reads the rows
/// of the central vertex, horizontal edge and vertical edge.
inline StencilSet extract_stencils(Method method, double omega, double h, double eps, int r,
                                   const StencilOptions& opts = {}) {
  if (!(h > 0.0)) throw Error(ErrorKind::InvalidParameter, "h must be positive");
  if (opts.patch < 2) throw Error(ErrorKind::MeshTooSmall, "stencil patch needs at least 2x2 elements");
  const int p = opts.patch;
  const int ci = opts.center_i, cj = opts.center_j;
  if (ci < 1 || cj < 1 || ci > p - 1 || cj > p - 1) {
    throw Error(ErrorKind::InvalidParameter, "stencil center must be an interior lattice point of the patch");
  }
  StencilSet st;
  st.method = method;
  st.S = method == Method::Fem ? 1 : 3;
  st.normalized = opts.normalize;
  st.omega = omega;
  st.h = h;
  st.eps = eps;
  st.r = method == Method::Dpg ? r : 0;
  const auto pe = detail::patch_element(method, omega, h, eps, r, opts, st.precision_used);
  const std::size_t nloc = pe.local_nodes.size();

  st.rows.resize(static_cast<std::size_t>(st.S));
  for (int t = 0; t < st.S; ++t) {
    const int cx = 2 * ci + kTypeCenter[t][0];
    const int cy = 2 * cj + kTypeCenter[t][1];
    std::vector<StencilWeight> row;
    auto add = [&row](int s, int lx, int ly, cd v) {
      for (auto& w : row) {
        if (w.s == s && w.two_lx == lx && w.two_ly == ly) {
          w.value += v;
          return;
        }
      }
      row.push_back({s, lx, ly, v});
    };
    for (int ej = 0; ej < p; ++ej) {
      for (int ei = 0; ei < p; ++ei) {
        for (std::size_t a = 0; a < nloc; ++a) {
          const auto& na = pe.local_nodes[a];
          if (na[0] != t || 2 * ei + na[1] != cx || 2 * ej + na[2] != cy) continue;
          for (std::size_t b = 0; b < nloc; ++b) {
            const auto& nb = pe.local_nodes[b];
            add(nb[0], 2 * ei + nb[1] - cx, 2 * ej + nb[2] - cy, pe.k(a, b));
          }
        }
      }
    }
    std::sort(row.begin(), row.end(), [](const StencilWeight& x, const StencilWeight& y) {
      if (x.s != y.s) return x.s < y.s;
      if (x.two_ly != y.two_ly) return x.two_ly < y.two_ly;
      return x.two_lx < y.two_lx;
    });
    if (opts.normalize) {
      cd self(0.0);
      double norm = 0.0;
      for (const auto& w : row) {
        norm = std::max(norm, std::abs(w.value));
        if (w.s == t && w.two_lx == 0 && w.two_ly == 0) self = w.value;
      }
      if (!(std::abs(self) >= 1e-12 * norm) || norm == 0.0) {
        throw Error(ErrorKind::CenterRowDegenerate,
                    "self-weight of stencil row " + std::to_string(t + 1) + " is negligible; cannot normalize");
      }
      for (auto& w : row) w.value /= self;
    }
    st.rows[static_cast<std::size_t>(t)] = std::move(row);
  }
  return st;
}

/// Grid function indexed by node type and doubled absolute position; returns
/// nullopt where undefined.
using GridFunction = std::function<std::optional<cd>(int s, int two_x, int two_y)>;

/// sum_s sum_l D_{t,s,l} psi_{s, j+l} for the row of type t centered at lattice point (i, j).
inline cd apply_stencil(const StencilSet& st, const GridFunction& psi, std::array<int, 2> center, int t) {
  if (t < 0 || t >= st.S) throw Error(ErrorKind::InvalidParameter, "stencil type out of range");
  const int cx = 2 * center[0] + kTypeCenter[t][0];
  const int cy = 2 * center[1] + kTypeCenter[t][1];
  cd sum(0.0);
  for (const auto& w : st.rows[static_cast<std::size_t>(t)]) {
    const auto v = psi(w.s, cx + w.two_lx, cy + w.two_ly);
    if (!v) {
      throw Error(ErrorKind::MissingValue, "grid function undefined for type " + std::to_string(w.s + 1) +
                                               " at doubled position (" + std::to_string(cx + w.two_lx) + ", " +
                                               std::to_string(cy + w.two_ly) + ")");
    }
    sum += w.value * *v;
  }
  return sum;
}

/// psi_{s}(x) = a_s exp(i w (cos theta, sin theta) . x / h) with x in lattice units,
/// w the normalized discrete wavenumber omega_h h.
inline GridFunction plane_wave_ansatz(std::vector<cd> amplitudes, cd w, double theta) {
  return [a = std::move(amplitudes), w, c = std::cos(theta), s = std::sin(theta)](int type, int two_x,
                                                                                 int two_y) -> std::optional<cd> {
    if (type < 0 || static_cast<std::size_t>(type) >= a.size()) return std::nullopt;
    const double proj = 0.5 * (c * two_x + s * two_y);
    return a[static_cast<std::size_t>(type)] * std::exp(cd(0.0, 1.0) * w * proj);
  };
}

}  // namespace helmdpg
