#pragma once

// Fourth-order central finite differences of Cartesian vector fields, used as independent
// checks of the analytic eigen-relations.

#include <array>
#include <cmath>

#include "ballspec/geometry.hpp"

namespace ballspec_test {

using ballspec::Vec3;

inline Vec3 axis(int j) { return j == 0 ? Vec3{1, 0, 0} : j == 1 ? Vec3{0, 1, 0} : Vec3{0, 0, 1}; }

inline double component(const Vec3& v, int i) { return i == 0 ? v.x : i == 1 ? v.y : v.z; }

/// d f / d x_j at x for a scalar or vector callable.
template <class F>
auto partial(F&& f, const Vec3& x, int j, double h) {
  const Vec3 e = h * axis(j);
  return (f(x - 2.0 * e) - 8.0 * f(x - e) + 8.0 * f(x + e) - f(x + 2.0 * e)) * (1.0 / (12.0 * h));
}

/// J[i][j] = d u_i / d x_j.
template <class F>
std::array<std::array<double, 3>, 3> jacobian(F&& u, const Vec3& x, double h) {
  std::array<std::array<double, 3>, 3> J{};
  for (int j = 0; j < 3; ++j) {
    const Vec3 d = partial(u, x, j, h);
    J[0][static_cast<std::size_t>(j)] = d.x;
    J[1][static_cast<std::size_t>(j)] = d.y;
    J[2][static_cast<std::size_t>(j)] = d.z;
  }
  return J;
}

template <class F>
Vec3 fd_curl(F&& u, const Vec3& x, double h = 1e-3) {
  const auto J = jacobian(u, x, h);
  return {J[2][1] - J[1][2], J[0][2] - J[2][0], J[1][0] - J[0][1]};
}

template <class F>
double fd_div(F&& u, const Vec3& x, double h = 1e-3) {
  const auto J = jacobian(u, x, h);
  return J[0][0] + J[1][1] + J[2][2];
}

/// grad div u by nesting the divergence stencil inside a gradient stencil.
template <class F>
Vec3 fd_grad_div(F&& u, const Vec3& x, double h = 1e-3) {
  const auto div = [&](const Vec3& y) { return fd_div(u, y, h); };
  return {partial(div, x, 0, h), partial(div, x, 1, h), partial(div, x, 2, h)};
}

}  // namespace ballspec_test
