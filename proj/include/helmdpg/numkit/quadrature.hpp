#pragma once

#include <cmath>
#include <numbers>
#include <utility>
#include <vector>

#include "helmdpg/errors.hpp"

namespace helmdpg {

template <typename R>
struct GaussRule1D {
  std::vector<R> nodes;    // in [0, 1], ascending
  std::vector<R> weights;  // positive, sum to 1
};

/// n-point Gauss-Legendre rule mapped to [0, 1]; exact for degree <= 2n - 1.
/// Nodes are polished by Newton iteration in R, so the rule is accurate to the
/// working precision of R.
template <typename R = double>
GaussRule1D<R> gauss_legendre_1d(int n) {
  if (n < 1) throw Error(ErrorKind::InvalidParameter, "gauss_legendre_1d needs n >= 1");
  using std::abs;
  GaussRule1D<R> rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const R eps = std::numeric_limits<R>::epsilon();
  for (int i = 0; i < (n + 1) / 2; ++i) {
    R x = R(std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5)));
    R dp(0);
    for (int it = 0; it < 100; ++it) {
      // Three-term recurrence for P_n and P_n'.
      R p0(1), p1 = x;
      for (int k = 2; k <= n; ++k) {
        R p2 = (R(2 * k - 1) * x * p1 - R(k - 1) * p0) / R(k);
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = R(1);
      dp = R(n) * (x * p1 - p0) / (x * x - R(1));
      const R dx = p1 / dp;
      x -= dx;
      if (abs(dx) <= R(4) * eps * abs(x)) break;
    }
    {
      // Recompute derivative at the converged node.
      R p0(1), p1 = x;
      for (int k = 2; k <= n; ++k) {
        R p2 = (R(2 * k - 1) * x * p1 - R(k - 1) * p0) / R(k);
        p0 = p1;
        p1 = p2;
      }
      dp = R(n) * (x * p1 - p0) / (x * x - R(1));
    }
    const R w = R(2) / ((R(1) - x * x) * dp * dp);
    // x is the i-th largest root on [-1, 1]; map to [0, 1].
    rule.nodes[n - 1 - i] = (R(1) + x) / R(2);
    rule.nodes[i] = (R(1) - x) / R(2);
    rule.weights[n - 1 - i] = w / R(2);
    rule.weights[i] = w / R(2);
  }
  if (n % 2 == 1) rule.nodes[n / 2] = R(1) / R(2);
  return rule;
}

template <typename R>
struct QuadPoint2D {
  R x;
  R y;
  R w;
};

/// Tensor-product rule on [0, 1]^2.
template <typename R = double>
struct QuadratureRule {
  int points_per_direction = 0;
  GaussRule1D<R> line;
  std::vector<QuadPoint2D<R>> points;

  std::size_t size() const { return points.size(); }
};

template <typename R = double>
QuadratureRule<R> tensor_gauss_rule(int n) {
  QuadratureRule<R> q;
  q.points_per_direction = n;
  q.line = gauss_legendre_1d<R>(n);
  q.points.reserve(static_cast<std::size_t>(n) * n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      q.points.push_back({q.line.nodes[i], q.line.nodes[j], q.line.weights[i] * q.line.weights[j]});
  return q;
}

}  // namespace helmdpg
