#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "ballspec/ballquad.hpp"

using namespace ballspec;
constexpr double kPi = std::numbers::pi;

TEST(GaussLegendre, LowOrderNodes) {
  const GaussRule g2 = gauss_legendre(2);
  EXPECT_NEAR(g2.nodes[0], -1.0 / std::sqrt(3.0), 4e-16);
  EXPECT_NEAR(g2.nodes[1], 1.0 / std::sqrt(3.0), 4e-16);
  const GaussRule g3 = gauss_legendre(3);
  EXPECT_EQ(g3.nodes[1], 0.0);
  EXPECT_NEAR(g3.weights[1], 8.0 / 9.0, 1e-15);
  EXPECT_NEAR(g3.nodes[2], std::sqrt(0.6), 1e-15);
  EXPECT_THROW(gauss_legendre(0), std::invalid_argument);
}

TEST(GaussLegendre, ExactForPolynomialsUpToDegree2nMinus1) {
  for (int order : {1, 4, 9, 32, 64}) {
    const GaussRule g = gauss_legendre(order);
    double wsum = 0.0;
    for (double w : g.weights) {
      EXPECT_GT(w, 0.0);
      wsum += w;
    }
    EXPECT_NEAR(wsum, 2.0, 1e-14);
    for (int p = 0; p <= 2 * order - 1; p += 1) {
      double s = 0.0;
      for (std::size_t i = 0; i < g.nodes.size(); ++i) s += g.weights[i] * std::pow(g.nodes[i], p);
      const double exact = p % 2 == 1 ? 0.0 : 2.0 / (p + 1.0);
      EXPECT_NEAR(s, exact, 1e-14) << order << " " << p;
    }
    for (std::size_t i = 1; i < g.nodes.size(); ++i) EXPECT_LT(g.nodes[i - 1], g.nodes[i]);
  }
}

TEST(SphereGrid, WeightsAndLayout) {
  const SphereGrid g(8, 16);
  double total = 0.0;
  for (std::size_t a = 0; a < g.size(); ++a) total += g.weight(a);
  EXPECT_NEAR(total, 4.0 * kPi, 1e-13);
  for (std::size_t j = 1; j < g.thetas().size(); ++j) EXPECT_LT(g.thetas()[j - 1], g.thetas()[j]);
  EXPECT_EQ(g.theta(3 * 16 + 5), g.thetas()[3]);
  EXPECT_EQ(g.phi(3 * 16 + 5), g.phis()[5]);
  EXPECT_EQ(g.phis()[0], 0.0);
  EXPECT_THROW(SphereGrid(0, 4), std::invalid_argument);
}

TEST(SphereGrid, IntegratesMonomials) {
  const SphereGrid g(10, 20);
  double z2 = 0.0, x2y2 = 0.0, xz = 0.0;
  for (std::size_t a = 0; a < g.size(); ++a) {
    const Vec3 u = to_cartesian(SphericalPoint{1.0, g.theta(a), g.phi(a)});
    z2 += g.weight(a) * u.z * u.z;
    x2y2 += g.weight(a) * u.x * u.x * u.y * u.y;
    xz += g.weight(a) * u.x * u.z;
  }
  EXPECT_NEAR(z2, 4.0 * kPi / 3.0, 1e-13);
  EXPECT_NEAR(x2y2, 4.0 * kPi / 15.0, 1e-13);
  EXPECT_NEAR(xz, 0.0, 1e-14);
}

TEST(BallQuadrature, VolumeAndMoments) {
  for (double R : {1.0, 2.5}) {
    const BallQuadrature q(R, {12, 10, 20});
    EXPECT_NEAR(q.integrate([](const SphericalPoint&) { return 1.0; }), 4.0 * kPi * R * R * R / 3.0, 1e-12 * R * R * R);
    EXPECT_NEAR(q.integrate([](const SphericalPoint& p) { return p.r * p.r; }), 4.0 * kPi * std::pow(R, 5) / 5.0,
                1e-12 * std::pow(R, 5));
    const double z4 = q.integrate([](const SphericalPoint& p) { return std::pow(to_cartesian(p).z, 4); });
    EXPECT_NEAR(z4, 4.0 * kPi * std::pow(R, 7) / 35.0, 1e-12 * std::pow(R, 7));
    for (double r : q.radii()) {
      EXPECT_GT(r, 0.0);
      EXPECT_LT(r, R);
    }
  }
  EXPECT_THROW(BallQuadrature(0.0, {4, 4, 4}), std::invalid_argument);
  EXPECT_THROW(BallQuadrature(1.0, {0, 4, 4}), std::invalid_argument);
}

TEST(BallQuadrature, NodeIndexing) {
  const BallQuadrature q(2.0, {3, 4, 5});
  EXPECT_EQ(q.size(), 60u);
  double w = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) w += q.node(i).weight;
  EXPECT_NEAR(w, 4.0 * kPi * 8.0 / 3.0, 1e-12);
  const BallNode nd = q.node(2 * 20 + 7);
  EXPECT_EQ(nd.point.r, q.radii()[2]);
  EXPECT_EQ(nd.point.theta, q.sphere().theta(7));
  EXPECT_EQ(nd.point.phi, q.sphere().phi(7));
  EXPECT_NEAR(norm(nd.x - to_cartesian(nd.point)), 0.0, 0.0);
  EXPECT_EQ(q.orders(), (QuadratureOrders{3, 4, 5}));
}

TEST(SphereQuadrature, AreaAndFlux) {
  const SphereQuadrature s(1.5, 8, 16);
  EXPECT_NEAR(s.integrate([](const SphericalPoint&) { return 1.0; }), 4.0 * kPi * 2.25, 1e-12);
  // Flux of x through the sphere equals 3 * volume.
  double flux = 0.0;
  for (std::size_t a = 0; a < s.size(); ++a) {
    const BallNode nd = s.node(a);
    EXPECT_NEAR(norm(nd.x), 1.5, 1e-15);
    flux += nd.weight * dot(nd.x, nd.x / 1.5);
  }
  EXPECT_NEAR(flux, 3.0 * 4.0 * kPi * std::pow(1.5, 3) / 3.0, 1e-11);
}

TEST(InnerProduct, ConstantAndLinearFields) {
  const BallQuadrature q(1.0, {8, 8, 16});
  const auto ez = [](const Vec3&) { return Vec3{0, 0, 1}; };
  const auto x = [](const Vec3& p) { return p; };
  EXPECT_NEAR(inner_product(ez, ez, q), 4.0 * kPi / 3.0, 1e-13);
  EXPECT_NEAR(inner_product(x, x, q), 4.0 * kPi / 5.0, 1e-13);
  EXPECT_NEAR(inner_product(ez, x, q), 0.0, 1e-14);
}
