#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <string>

#include "helmdpg/localforms/lowest_order_elements.hpp"

namespace helmdpg {

/// An exact field pair (u, phi) with analytic derivatives. The source is always
/// obtained by applying A to the pair: f = (i w u + grad phi, i w phi + div u).
struct ExactSolution {
  std::string name;
  double omega = 1.0;
  std::function<cd(double, double)> phi;
  std::function<std::array<cd, 2>(double, double)> grad_phi;
  std::function<std::array<cd, 2>(double, double)> u;
  std::function<cd(double, double)> div_u;

  std::array<cd, 3> f(double x, double y) const {
    const cd iw(0.0, omega);
    const auto uu = u(x, y);
    const auto g = grad_phi(x, y);
    return {iw * uu[0] + g[0], iw * uu[1] + g[1], iw * phi(x, y) + div_u(x, y)};
  }

  SourceFn source() const {
    return [self = *this](double x, double y) { return self.f(x, y); };
  }

  /// (u1, u2, phi) at a point.
  std::array<cd, 3> fields(double x, double y) const {
    const auto uu = u(x, y);
    return {uu[0], uu[1], phi(x, y)};
  }
};

inline ExactSolution zero_solution(double omega) {
  ExactSolution s;
  s.name = "zero";
  s.omega = omega;
  s.phi = [](double, double) { return cd(0.0); };
  s.grad_phi = [](double, double) { return std::array<cd, 2>{}; };
  s.u = [](double, double) { return std::array<cd, 2>{}; };
  s.div_u = [](double, double) { return cd(0.0); };
  return s;
}

/// phi = x(1-x)y(1-y), u = sign * (i/omega) grad phi. With sign = +1 the first
/// component of f vanishes; sign = -1 reproduces the other sign convention.
inline ExactSolution manufactured_bubble(double omega, double sign = 1.0) {
  ExactSolution s;
  s.name = "bubble";
  s.omega = omega;
  const cd c = sign * cd(0.0, 1.0 / omega);
  s.phi = [](double x, double y) { return cd(x * (1 - x) * y * (1 - y)); };
  s.grad_phi = [](double x, double y) {
    return std::array<cd, 2>{cd((1 - 2 * x) * y * (1 - y)), cd(x * (1 - x) * (1 - 2 * y))};
  };
  s.u = [c](double x, double y) {
    return std::array<cd, 2>{c * ((1 - 2 * x) * y * (1 - y)), c * (x * (1 - x) * (1 - 2 * y))};
  };
  s.div_u = [c](double x, double y) { return c * (-2.0 * y * (1 - y) - 2.0 * x * (1 - x)); };
  return s;
}

/// phi = exp(i k.x), u = -(k/omega) phi with k = omega (cos theta, sin theta).
inline ExactSolution plane_wave(double omega, double theta) {
  ExactSolution s;
  s.name = "plane_wave";
  s.omega = omega;
  const double kx = omega * std::cos(theta), ky = omega * std::sin(theta);
  auto phase = [kx, ky](double x, double y) { return std::exp(cd(0.0, kx * x + ky * y)); };
  s.phi = phase;
  s.grad_phi = [=](double x, double y) {
    const cd p = phase(x, y);
    return std::array<cd, 2>{cd(0.0, kx) * p, cd(0.0, ky) * p};
  };
  s.u = [=](double x, double y) {
    const cd p = phase(x, y);
    return std::array<cd, 2>{-(kx / omega) * p, -(ky / omega) * p};
  };
  s.div_u = [=](double x, double y) {
    const cd p = phase(x, y);
    return -(kx / omega) * cd(0.0, kx) * p - (ky / omega) * cd(0.0, ky) * p;
  };
  return s;
}

}  // namespace helmdpg
