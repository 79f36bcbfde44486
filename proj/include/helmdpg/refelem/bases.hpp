#pragma once

#include <array>
#include <string>
#include <vector>

#include "helmdpg/errors.hpp"
#include "helmdpg/refelem/legendre.hpp"

namespace helmdpg {

// ---------------------------------------------------------------------------
// Enriched test space V^r = RT_r x Q_{r,r} on the unit square.
// RT_r = Q_{r,r-1} x Q_{r-1,r}. All spans use tensor shifted Legendre polynomials.
// ---------------------------------------------------------------------------

enum class TestComponent { VectorX, VectorY, Scalar };

struct TestFunctionSpec {
  TestComponent component;
  int ix;  // Legendre degree in x
  int iy;  // Legendre degree in y
};

struct TestSpaceBasis {
  int r = 0;
  std::vector<TestFunctionSpec> functions;

  std::size_t vector_dim() const { return static_cast<std::size_t>(2 * r * (r + 1)); }
  std::size_t scalar_dim() const { return static_cast<std::size_t>((r + 1) * (r + 1)); }
  std::size_t dim() const { return functions.size(); }
};

inline TestSpaceBasis build_test_basis(int r) {
  if (r < 2) {
    throw Error(ErrorKind::REnrichmentTooSmall, "enrichment degree r must be >= 2, got " + std::to_string(r));
  }
  TestSpaceBasis b;
  b.r = r;
  for (int iy = 0; iy <= r - 1; ++iy)
    for (int ix = 0; ix <= r; ++ix) b.functions.push_back({TestComponent::VectorX, ix, iy});
  for (int iy = 0; iy <= r; ++iy)
    for (int ix = 0; ix <= r - 1; ++ix) b.functions.push_back({TestComponent::VectorY, ix, iy});
  for (int iy = 0; iy <= r; ++iy)
    for (int ix = 0; ix <= r; ++ix) b.functions.push_back({TestComponent::Scalar, ix, iy});
  return b;
}

/// Point values of one test function (v, eta): the vector part, the scalar part,
/// div v and grad eta. Derivatives are with respect to reference coordinates.
template <typename R>
struct TestValue {
  R vx{}, vy{}, eta{};
  R div{}, eta_x{}, eta_y{};
};

template <typename R>
std::vector<TestValue<R>> evaluate_test_basis(const TestSpaceBasis& basis, const R& x, const R& y) {
  const auto lx = shifted_legendre<R>(basis.r, x);
  const auto ly = shifted_legendre<R>(basis.r, y);
  std::vector<TestValue<R>> out(basis.dim());
  for (std::size_t k = 0; k < basis.dim(); ++k) {
    const auto& f = basis.functions[k];
    TestValue<R>& v = out[k];
    const R val = lx.value[f.ix] * ly.value[f.iy];
    switch (f.component) {
      case TestComponent::VectorX:
        v.vx = val;
        v.div = lx.deriv[f.ix] * ly.value[f.iy];
        break;
      case TestComponent::VectorY:
        v.vy = val;
        v.div = lx.value[f.ix] * ly.deriv[f.iy];
        break;
      case TestComponent::Scalar:
        v.eta = val;
        v.eta_x = lx.deriv[f.ix] * ly.value[f.iy];
        v.eta_y = lx.value[f.ix] * ly.deriv[f.iy];
        break;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Lowest-order trial space: 3 field constants + 4 vertex traces + 4 edge fluxes.
// ---------------------------------------------------------------------------

enum class DofKind { FieldU1, FieldU2, FieldPhi, VertexPhiHat, HEdgeFlux, VEdgeFlux };

/// Local edges, in the trace DOF order used throughout: bottom, top, left, right.
enum class LocalEdge { Bottom = 0, Top = 1, Left = 2, Right = 3 };

inline constexpr std::array<LocalEdge, 4> kLocalEdges = {LocalEdge::Bottom, LocalEdge::Top, LocalEdge::Left,
                                                         LocalEdge::Right};

/// Interface unknowns are coefficients along a fixed global normal: (0,1) on
/// horizontal edges and (1,0) on vertical edges. `sign` is outward . global.
struct EdgeOrientation {
  static constexpr bool is_horizontal(LocalEdge e) { return e == LocalEdge::Bottom || e == LocalEdge::Top; }
  static constexpr int sign(LocalEdge e) { return (e == LocalEdge::Top || e == LocalEdge::Right) ? 1 : -1; }
  static constexpr std::array<int, 2> global_normal(LocalEdge e) {
    return is_horizontal(e) ? std::array<int, 2>{0, 1} : std::array<int, 2>{1, 0};
  }
  static constexpr std::array<int, 2> outward_normal(LocalEdge e) {
    const int s = sign(e);
    const auto g = global_normal(e);
    return {s * g[0], s * g[1]};
  }
  /// Point on the edge at parameter t in [0,1] (reference square).
  template <typename R>
  static std::array<R, 2> point(LocalEdge e, const R& t) {
    switch (e) {
      case LocalEdge::Bottom: return {t, R(0)};
      case LocalEdge::Top: return {t, R(1)};
      case LocalEdge::Left: return {R(0), t};
      case LocalEdge::Right: return {R(1), t};
    }
    return {R(0), R(0)};
  }
};

/// Vertices counterclockwise from the origin corner.
inline constexpr std::array<std::array<int, 2>, 4> kVertices = {{{0, 0}, {1, 0}, {1, 1}, {0, 1}}};

struct TrialFunction {
  DofKind kind;
  int index;                     // vertex index (0..3) or LocalEdge index; component for fields
  std::array<double, 2> location;  // reference-square location of the DOF
};

/// Trial basis in local order: u1, u2, phi, 4 vertex traces, bottom/top fluxes,
/// left/right fluxes.
struct TrialBasis11 {
  static constexpr std::size_t kSize = 11;
  static constexpr std::size_t kInterior = 3;
  static constexpr std::size_t kTrace = 8;

  std::array<TrialFunction, kSize> functions{{
      {DofKind::FieldU1, 0, {0.5, 0.5}},
      {DofKind::FieldU2, 1, {0.5, 0.5}},
      {DofKind::FieldPhi, 2, {0.5, 0.5}},
      {DofKind::VertexPhiHat, 0, {0.0, 0.0}},
      {DofKind::VertexPhiHat, 1, {1.0, 0.0}},
      {DofKind::VertexPhiHat, 2, {1.0, 1.0}},
      {DofKind::VertexPhiHat, 3, {0.0, 1.0}},
      {DofKind::HEdgeFlux, static_cast<int>(LocalEdge::Bottom), {0.5, 0.0}},
      {DofKind::HEdgeFlux, static_cast<int>(LocalEdge::Top), {0.5, 1.0}},
      {DofKind::VEdgeFlux, static_cast<int>(LocalEdge::Left), {0.0, 0.5}},
      {DofKind::VEdgeFlux, static_cast<int>(LocalEdge::Right), {1.0, 0.5}},
  }};

  /// Field value (w1, w2, psi) of field function i (zero for trace functions).
  static std::array<double, 3> field_value(std::size_t i) {
    std::array<double, 3> v{0.0, 0.0, 0.0};
    if (i < 3) v[i] = 1.0;
    return v;
  }
};

/// Bilinear nodal function of vertex a at (x, y); restricted to the boundary
/// this is the vertex trace function.
template <typename R>
R bilinear_nodal(int a, const R& x, const R& y) {
  const R fx = kVertices[a][0] == 0 ? R(1) - x : x;
  const R fy = kVertices[a][1] == 0 ? R(1) - y : y;
  return fx * fy;
}

template <typename R>
std::array<R, 2> bilinear_nodal_gradient(int a, const R& x, const R& y) {
  const R fx = kVertices[a][0] == 0 ? R(1) - x : x;
  const R fy = kVertices[a][1] == 0 ? R(1) - y : y;
  const R dfx = kVertices[a][0] == 0 ? R(-1) : R(1);
  const R dfy = kVertices[a][1] == 0 ? R(-1) : R(1);
  return {dfx * fy, fx * dfy};
}

}  // namespace helmdpg
