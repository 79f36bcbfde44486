#pragma once

#include <array>
#include <vector>

#include "helmdpg/numkit/quadrature.hpp"
#include "helmdpg/refelem/bases.hpp"

namespace helmdpg {

/// Test-basis values at one edge quadrature point. `vn` uses the outward normal.
template <typename R>
struct EdgeTestValue {
  R vn{};
  R eta{};
};

template <typename R>
struct EdgeTabulation {
  LocalEdge edge;
  std::vector<std::array<R, 2>> points;       // reference coordinates
  std::vector<R> weights;                     // 1D weights, edge length 1
  std::vector<std::vector<EdgeTestValue<R>>> test;  // [q][k]
  std::vector<std::array<R, 4>> vertex_trace;       // [q][a] values of the 4 vertex traces
};

template <typename R>
struct Tabulation {
  QuadratureRule<R> rule;
  std::vector<std::vector<TestValue<R>>> volume;  // [q][k]
  std::array<EdgeTabulation<R>, 4> edges;         // indexed by LocalEdge
};

/// Tabulates the test basis on `rule` (volume) and on the 1D line rule of
/// `rule` along each edge, together with the vertex trace functions.
template <typename R>
Tabulation<R> tabulate(const TestSpaceBasis& basis, const QuadratureRule<R>& rule) {
  Tabulation<R> t;
  t.rule = rule;
  t.volume.reserve(rule.size());
  for (const auto& p : rule.points) t.volume.push_back(evaluate_test_basis<R>(basis, p.x, p.y));
  for (LocalEdge e : kLocalEdges) {
    auto& et = t.edges[static_cast<int>(e)];
    et.edge = e;
    const auto n = EdgeOrientation::outward_normal(e);
    for (std::size_t q = 0; q < rule.line.nodes.size(); ++q) {
      const auto pt = EdgeOrientation::point<R>(e, rule.line.nodes[q]);
      et.points.push_back(pt);
      et.weights.push_back(rule.line.weights[q]);
      const auto vals = evaluate_test_basis<R>(basis, pt[0], pt[1]);
      std::vector<EdgeTestValue<R>> row(vals.size());
      for (std::size_t k = 0; k < vals.size(); ++k) {
        row[k].vn = R(n[0]) * vals[k].vx + R(n[1]) * vals[k].vy;
        row[k].eta = vals[k].eta;
      }
      et.test.push_back(std::move(row));
      std::array<R, 4> vt;
      for (int a = 0; a < 4; ++a) vt[a] = bilinear_nodal<R>(a, pt[0], pt[1]);
      et.vertex_trace.push_back(vt);
    }
  }
  return t;
}

}  // namespace helmdpg
