#pragma once

#include <cmath>
#include <vector>

namespace helmdpg {

/// Values and derivatives of the L2(0,1)-orthonormal shifted Legendre
/// polynomials p_0..p_deg at x: p_n(x) = sqrt(2n+1) P_n(2x - 1).
template <typename R>
struct LegendreTable {
  std::vector<R> value;
  std::vector<R> deriv;
};

template <typename R>
LegendreTable<R> shifted_legendre(int deg, const R& x) {
  using std::sqrt;
  LegendreTable<R> t;
  t.value.resize(deg + 1);
  t.deriv.resize(deg + 1);
  const R s = R(2) * x - R(1);
  // P_n and dP_n/ds by recurrence, then scale.
  std::vector<R> p(deg + 1), dp(deg + 1);
  p[0] = R(1);
  dp[0] = R(0);
  if (deg >= 1) {
    p[1] = s;
    dp[1] = R(1);
  }
  for (int n = 2; n <= deg; ++n) {
    p[n] = (R(2 * n - 1) * s * p[n - 1] - R(n - 1) * p[n - 2]) / R(n);
    dp[n] = dp[n - 2] + R(2 * n - 1) * p[n - 1];
  }
  for (int n = 0; n <= deg; ++n) {
    const R c = sqrt(R(2 * n + 1));
    t.value[n] = c * p[n];
    t.deriv[n] = R(2) * c * dp[n];
  }
  return t;
}

}  // namespace helmdpg
