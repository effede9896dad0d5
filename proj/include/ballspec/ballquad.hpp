#pragma once

// Tensor-product quadrature on the ball B_R and its boundary sphere S_R: Gauss-Legendre in r
// (weight r^2 folded in) x Gauss-Legendre in cos(theta) x trapezoid in phi.

#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ballspec/geometry.hpp"

namespace ballspec {

struct GaussRule {
  std::vector<double> nodes;    // ascending in (-1, 1)
  std::vector<double> weights;  // positive, sum to 2
};

inline GaussRule gauss_legendre(int order) {
  if (order < 1) throw std::invalid_argument("gauss_legendre: order must be >= 1");
  const auto n = static_cast<std::size_t>(order);
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  // P_order(x) and its derivative.
  const auto legendre = [order](double x) {
    double p0 = 1.0, p1 = x;
    for (int l = 2; l <= order; ++l) {
      const double p2 = ((2.0 * l - 1.0) * x * p1 - (l - 1.0) * p0) / l;
      p0 = p1;
      p1 = p2;
    }
    return std::pair{p1, order * (x * p1 - p0) / (x * x - 1.0)};
  };
  for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (order + 0.5));
    for (int it = 0; it < 100; ++it) {
      const auto [p, dp] = legendre(x);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double dp = legendre(x).second;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

struct QuadratureOrders {
  int n_r = 64;
  int n_theta = 64;
  int n_phi = 128;

  friend constexpr bool operator==(const QuadratureOrders&, const QuadratureOrders&) = default;
};

/// Product rule on the unit sphere. Node (j, l) has flat index j * n_phi + l.
class SphereGrid {
 public:
  SphereGrid(int n_theta, int n_phi) : n_theta_(n_theta), n_phi_(n_phi) {
    if (n_theta < 1 || n_phi < 1) throw std::invalid_argument("SphereGrid: orders must be >= 1");
    const GaussRule g = gauss_legendre(n_theta);
    // Descending cos(theta) so that theta increases with j.
    for (int j = n_theta - 1; j >= 0; --j) {
      const auto ju = static_cast<std::size_t>(j);
      theta_.push_back(std::acos(g.nodes[ju]));
      theta_weight_.push_back(g.weights[ju]);
    }
    for (int l = 0; l < n_phi; ++l) phi_.push_back(2.0 * std::numbers::pi * l / n_phi);
    phi_weight_ = 2.0 * std::numbers::pi / n_phi;
  }

  int n_theta() const noexcept { return n_theta_; }
  int n_phi() const noexcept { return n_phi_; }
  std::size_t size() const noexcept { return theta_.size() * phi_.size(); }

  std::span<const double> thetas() const noexcept { return theta_; }
  std::span<const double> phis() const noexcept { return phi_; }

  double theta(std::size_t idx) const { return theta_[idx / phi_.size()]; }
  double phi(std::size_t idx) const { return phi_[idx % phi_.size()]; }
  /// Solid-angle weight of flat node idx; the weights sum to 4 pi.
  double weight(std::size_t idx) const { return theta_weight_[idx / phi_.size()] * phi_weight_; }

 private:
  int n_theta_;
  int n_phi_;
  std::vector<double> theta_;
  std::vector<double> theta_weight_;
  std::vector<double> phi_;
  double phi_weight_ = 0.0;
};

struct BallNode {
  SphericalPoint point;
  Vec3 x;
  double weight = 0.0;
};

/// Quadrature on B_R. Ball node (i, a) has flat index i * sphere().size() + a, radial index
/// outermost.
class BallQuadrature {
 public:
  BallQuadrature(double radius, QuadratureOrders orders)
      : radius_(radius), orders_(orders), sphere_(orders.n_theta, orders.n_phi) {
    if (!(radius > 0.0)) throw std::invalid_argument("BallQuadrature: radius must be positive");
    if (orders.n_r < 1) throw std::invalid_argument("BallQuadrature: orders must be >= 1");
    const GaussRule g = gauss_legendre(orders.n_r);
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
      const double r = 0.5 * radius * (g.nodes[i] + 1.0);
      radii_.push_back(r);
      radial_weights_.push_back(0.5 * radius * g.weights[i] * r * r);
    }
  }

  explicit BallQuadrature(double radius) : BallQuadrature(radius, QuadratureOrders{}) {}

  double radius() const noexcept { return radius_; }
  const QuadratureOrders& orders() const noexcept { return orders_; }
  const SphereGrid& sphere() const noexcept { return sphere_; }

  /// Radial nodes in (0, R), ascending.
  std::span<const double> radii() const noexcept { return radii_; }
  /// Radial weights including the r^2 Jacobian.
  std::span<const double> radial_weights() const noexcept { return radial_weights_; }

  std::size_t size() const noexcept { return radii_.size() * sphere_.size(); }

  BallNode node(std::size_t idx) const {
    const std::size_t na = sphere_.size();
    const std::size_t i = idx / na, a = idx % na;
    BallNode out;
    out.point = {radii_[i], sphere_.theta(a), sphere_.phi(a)};
    out.x = to_cartesian(out.point);
    out.weight = radial_weights_[i] * sphere_.weight(a);
    return out;
  }

  /// Integral of a scalar callable f(const SphericalPoint&) over the ball.
  template <class F>
  double integrate(F&& f) const {
    const std::size_t na = sphere_.size();
    double total = 0.0;
    for (std::size_t i = 0; i < radii_.size(); ++i) {
      double shell = 0.0;
      for (std::size_t a = 0; a < na; ++a)
        shell += sphere_.weight(a) * f(SphericalPoint{radii_[i], sphere_.theta(a), sphere_.phi(a)});
      total += radial_weights_[i] * shell;
    }
    return total;
  }

 private:
  double radius_;
  QuadratureOrders orders_;
  SphereGrid sphere_;
  std::vector<double> radii_;
  std::vector<double> radial_weights_;
};

/// Quadrature on the boundary sphere S_R; weights sum to 4 pi R^2.
class SphereQuadrature {
 public:
  SphereQuadrature(double radius, int n_theta, int n_phi)
      : radius_(radius), grid_(n_theta, n_phi) {
    if (!(radius > 0.0)) throw std::invalid_argument("SphereQuadrature: radius must be positive");
  }

  double radius() const noexcept { return radius_; }
  const SphereGrid& grid() const noexcept { return grid_; }
  std::size_t size() const noexcept { return grid_.size(); }

  BallNode node(std::size_t idx) const {
    BallNode out;
    out.point = {radius_, grid_.theta(idx), grid_.phi(idx)};
    out.x = to_cartesian(out.point);
    out.weight = grid_.weight(idx) * radius_ * radius_;
    return out;
  }

  template <class F>
  double integrate(F&& f) const {
    double total = 0.0;
    for (std::size_t a = 0; a < grid_.size(); ++a) {
      const BallNode nd = node(a);
      total += nd.weight * f(nd.point);
    }
    return total;
  }

 private:
  double radius_;
  SphereGrid grid_;
};

/// L2(B) inner product of two Cartesian vector fields f(x), g(x) -> Vec3.
template <class F, class G>
double inner_product(F&& f, G&& g, const BallQuadrature& q) {
  const std::size_t na = q.sphere().size();
  double total = 0.0;
  for (std::size_t i = 0; i < q.radii().size(); ++i) {
    double shell = 0.0;
    for (std::size_t a = 0; a < na; ++a) {
      const BallNode nd = q.node(i * na + a);
      shell += q.sphere().weight(a) * dot(f(nd.x), g(nd.x));
    }
    total += q.radial_weights()[i] * shell;
  }
  return total;
}

}  // namespace ballspec
