#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "ballspec/eigenbasis.hpp"
#include "support/ck_oracle.hpp"
#include "support/fd.hpp"
#include "support/reference_tables.hpp"

using namespace ballspec;
using ballspec_test::fd_curl;
using ballspec_test::fd_div;
using ballspec_test::fd_grad_div;

namespace {

const BallQuadrature& small_quad(double R = 1.0) {
  static const BallQuadrature q1(1.0, {32, 16, 32});
  static const BallQuadrature q2(2.0, {32, 16, 32});
  return R == 1.0 ? q1 : q2;
}

std::vector<Vec3> interior_points(double R, int count) {
  std::vector<Vec3> pts;
  for (int i = 0; i < count; ++i) {
    // Deterministic low-discrepancy points in the ball, away from the centre and the surface.
    const double u = std::fmod(0.5 + i * 0.6180339887498949, 1.0);
    const double v = std::fmod(0.5 + i * 0.7548776662466927, 1.0);
    const double w = std::fmod(0.5 + i * 0.5698402909980532, 1.0);
    const double r = R * (0.15 + 0.75 * std::cbrt(u));
    const double th = std::acos(1.0 - 2.0 * v);
    pts.push_back(to_cartesian(SphericalPoint{r, th, 2.0 * std::numbers::pi * w}));
  }
  return pts;
}

double l2(const Vec3& v) { return norm(v); }

}  // namespace

TEST(ModeIndex, NamesAndValidation) {
  EXPECT_EQ(to_string(ModeIndex{Family::CurlPlus, 1, 2, 0}), "curl_plus(1,2,0)");
  EXPECT_EQ(to_string(ModeIndex{Family::GradDiv, 3, 1, -2}), "graddiv(3,1,-2)");
  EXPECT_EQ(family_from_string("curl_minus"), Family::CurlMinus);
  EXPECT_EQ(family_from_string("graddiv"), Family::GradDiv);
  EXPECT_THROW(family_from_string("curly"), std::invalid_argument);
  EXPECT_THROW(validate(ModeIndex{Family::CurlPlus, 0, 1, 0}), std::invalid_argument);
  EXPECT_THROW(validate(ModeIndex{Family::GradDiv, 2, 1, 3}), std::invalid_argument);
  EXPECT_THROW(validate(ModeIndex{Family::GradDiv, 2, 0, 0}), std::invalid_argument);
  EXPECT_NO_THROW(validate(ModeIndex{Family::GradDiv, 0, 1, 0}));
  EXPECT_LT((ModeIndex{Family::GradDiv, 4, 4, 4}), (ModeIndex{Family::CurlPlus, 1, 1, -1}));
}

TEST(PhiN, MatchesHighPrecisionQuadrature) {
  for (const auto& s : ballspec_test::kPhiSamples) {
    const std::complex<double> v = phi_n(s.n, s.lambda, s.r);
    const double scale = std::max(std::abs(std::complex<double>(s.re, s.im)), 1e-3);
    EXPECT_NEAR(v.real(), s.re, 1e-12 * scale) << s.n << " " << s.lambda << " " << s.r;
    EXPECT_NEAR(v.imag(), s.im, 1e-12 * scale) << s.n << " " << s.lambda << " " << s.r;
  }
}

TEST(PhiN, ClosedFormIdentity) {
  // Phi_n = [d/dr (r psi_n(l r)) + i l r psi_n(l r)] / (n (n + 1)).
  for (int n : {1, 2, 4, 7})
    for (double lam : {3.0, -6.5, 20.0})
      for (double r : {0.2, 0.9, 1.7}) {
        const double z = lam * r;
        const std::complex<double> closed(psi(n, z) + z * psi_prime(n, z), z * psi(n, z));
        const std::complex<double> want = closed / (n * (n + 1.0));
        EXPECT_LE(std::abs(phi_n(n, lam, r) - want), 1e-12 * (1.0 + std::abs(want))) << n << " " << lam << " " << r;
      }
}

TEST(PhiN, RealAtTheZerosOfPsi) {
  for (int n = 1; n <= 4; ++n)
    for (double rho : zeros_psi(n, 3)) EXPECT_LE(std::abs(phi_n(n, rho, 1.0).imag()), 1e-14);
}

TEST(PhiN, RejectsBadArguments) {
  EXPECT_THROW(phi_n(0, 1.0, 0.5), std::invalid_argument);
  EXPECT_THROW(phi_n(1, 0.0, 0.5), std::invalid_argument);
  EXPECT_THROW(phi_n(1, 1.0, 0.5, 0), std::invalid_argument);
  EXPECT_EQ(phi_n(2, 1.0, 0.0), std::complex<double>(0.0, 0.0));
  // Refinement does not move the converged value.
  EXPECT_LE(std::abs(phi_n(3, 9.0, 0.8) - phi_n(3, 9.0, 0.8, 4)), 1e-14);
}

TEST(VectorMode, EigenvaluesAndFrequencies) {
  const BallQuadrature& q = small_quad(2.0);
  const VectorMode up = curl_mode({Family::CurlPlus, 1, 1, 0}, q);
  const VectorMode um = curl_mode({Family::CurlMinus, 1, 1, 0}, q);
  const VectorMode g = graddiv_mode({Family::GradDiv, 1, 1, 1}, q);
  const double rho = 4.493409457909064, alpha = 2.0815759778181006;
  EXPECT_NEAR(up.eigenvalue(), rho / 2.0, 1e-14);
  EXPECT_NEAR(um.eigenvalue(), -rho / 2.0, 1e-14);
  EXPECT_NEAR(um.frequency(), rho / 2.0, 1e-14);
  EXPECT_NEAR(g.eigenvalue(), (alpha / 2.0) * (alpha / 2.0), 1e-14);
  EXPECT_GT(up.normalization(), 0.0);
  EXPECT_THROW(graddiv_mode({Family::CurlPlus, 1, 1, 0}, q), std::invalid_argument);
  EXPECT_THROW(curl_mode({Family::GradDiv, 1, 1, 0}, q), std::invalid_argument);
  EXPECT_THROW(VectorMode({Family::GradDiv, 1, 1, 0}, -1.0, q), std::invalid_argument);
}

TEST(VectorMode, UnitNormUnderIndependentQuadrature) {
  const BallQuadrature fine(1.0, {40, 24, 48});
  for (Family f : {Family::GradDiv, Family::CurlPlus, Family::CurlMinus})
    for (int n = f == Family::GradDiv ? 0 : 1; n <= 3; ++n)
      for (int k : {-n, 0, n}) {
        const VectorMode mode({f, n, 2, k}, mode_zero({f, n, 2, k}), small_quad());
        EXPECT_NEAR(inner_product(mode, mode, fine), 1.0, 1e-10) << to_string(mode.index());
      }
}

TEST(VectorMode, FiniteDifferenceEigenRelations) {
  for (double R : {1.0, 2.0}) {
    const BallQuadrature& q = small_quad(R);
    const auto pts = interior_points(R, 12);
    for (int n = 1; n <= 3; ++n)
      for (int k : {-n, 0, 1}) {
        for (Family f : {Family::CurlPlus, Family::CurlMinus}) {
          const VectorMode u = curl_mode({f, n, 1, k}, q);
          for (const Vec3& x : pts) {
            const Vec3 c = fd_curl(u, x, 1e-3 * R);
            EXPECT_LE(l2(c - u.eigenvalue() * u(x)), 1e-6) << to_string(u.index());
            EXPECT_LE(std::abs(fd_div(u, x, 1e-3 * R)), 1e-6) << to_string(u.index());
          }
        }
        const VectorMode g = graddiv_mode({Family::GradDiv, n, 1, k}, q);
        for (const Vec3& x : pts) {
          EXPECT_LE(l2(fd_curl(g, x, 1e-3 * R)), 1e-6) << to_string(g.index());
          EXPECT_LE(l2(fd_grad_div(g, x, 1e-3 * R) + g.eigenvalue() * g(x)), 1e-5) << to_string(g.index());
        }
      }
  }
}

TEST(VectorMode, BoundaryTraceVanishes) {
  const SphereQuadrature s(1.0, 16, 32);
  for (Family f : {Family::GradDiv, Family::CurlPlus, Family::CurlMinus})
    for (int n = f == Family::GradDiv ? 0 : 1; n <= 4; ++n)
      for (int m = 1; m <= 3; ++m) {
        const VectorMode mode({f, n, m, n / 2}, mode_zero({f, n, m, n / 2}), small_quad());
        for (std::size_t a = 0; a < s.size(); ++a) {
          const BallNode nd = s.node(a);
          EXPECT_LE(std::abs(mode.eval(nd.point).v_r), 1e-10);
        }
      }
}

TEST(VectorMode, RegularAtOriginAndPoles) {
  const BallQuadrature& q = small_quad();
  for (Family f : {Family::GradDiv, Family::CurlPlus, Family::CurlMinus})
    for (int n = f == Family::GradDiv ? 0 : 1; n <= 3; ++n)
      for (int k = -n; k <= n; ++k) {
        const VectorMode mode({f, n, 1, k}, mode_zero({f, n, 1, k}), q);
        const Vec3 at0 = mode(Vec3{0, 0, 0});
        const Vec3 near0 = mode(Vec3{1e-7, 2e-7, -1e-7});
        EXPECT_LE(norm(at0 - near0), 1e-5) << to_string(mode.index());
        for (double z : {0.5, -0.5}) {
          const Vec3 pole = mode(Vec3{0, 0, z});
          const Vec3 off = mode(Vec3{1e-8, -1e-8, z});
          EXPECT_TRUE(std::isfinite(pole.x) && std::isfinite(pole.y) && std::isfinite(pole.z));
          EXPECT_LE(norm(pole - off), 1e-6) << to_string(mode.index());
        }
      }
}

TEST(VectorMode, CachedProfilesMatchDirectEvaluation) {
  const BallQuadrature& q = small_quad();
  const VectorMode u = curl_mode({Family::CurlMinus, 2, 2, 1}, q);
  for (std::size_t i = 0; i < q.radii().size(); ++i) {
    const double r = q.radii()[i];
    const RadialFactors cached = u.node_factors()[i];
    const RadialFactors nearby = u.radial_factors(std::nextafter(r, 2.0));
    EXPECT_NEAR(cached.radial, nearby.radial, 1e-13);
    EXPECT_LE(std::abs(cached.tangential - nearby.tangential), 1e-13);
  }
}

TEST(VectorMode, AgreesWithChandrasekharKendallConstruction) {
  const BallQuadrature& q = small_quad();
  const auto pts = interior_points(1.0, 40);
  for (Family f : {Family::CurlPlus, Family::CurlMinus})
    for (int n = 1; n <= 2; ++n)
      for (int m = 1; m <= 2; ++m)
        for (int k = -n; k <= n; ++k) {
          const VectorMode u = curl_mode({f, n, m, k}, q);
          const ballspec_test::ChandrasekharKendallField w{n, k, u.eigenvalue()};
          // Least-squares scalar fit, then a uniform comparison.
          double uw = 0.0, ww = 0.0, umax = 0.0;
          std::vector<Vec3> us, ws;
          for (const Vec3& x : pts) {
            us.push_back(u(x));
            ws.push_back(w(x));
            uw += dot(us.back(), ws.back());
            ww += dot(ws.back(), ws.back());
            umax = std::max(umax, norm(us.back()));
          }
          const double scale = uw / ww;
          for (std::size_t i = 0; i < pts.size(); ++i)
            EXPECT_LE(norm(us[i] - scale * ws[i]), 1e-6 * umax) << to_string(u.index());
        }
}

TEST(ScalarMode, EigenfunctionsOfTheLaplacian) {
  const BallQuadrature& q = small_quad();
  const BallQuadrature fine(1.0, {40, 24, 48});
  const auto pts = interior_points(1.0, 8);
  for (ScalarProblem pb : {ScalarProblem::Dirichlet, ScalarProblem::Neumann})
    for (int n = 0; n <= 3; ++n) {
      const ScalarMode s(pb, {n, 2, n > 0 ? -1 : 0}, q);
      const double norm2 = fine.integrate([&](const SphericalPoint& p) { return s.eval(p) * s.eval(p); });
      EXPECT_NEAR(norm2, 1.0, 1e-10);
      const double h = 1e-3;
      for (const Vec3& x : pts) {
        double lap = 0.0;
        for (int j = 0; j < 3; ++j) {
          const Vec3 e = h * ballspec_test::axis(j);
          lap += (-s(x + 2.0 * e) + 16.0 * s(x + e) - 30.0 * s(x) + 16.0 * s(x - e) - s(x - 2.0 * e)) / (12.0 * h * h);
        }
        EXPECT_NEAR(-lap, s.eigenvalue() * s(x), 1e-5);
      }
      // Boundary condition.
      for (double th : {0.3, 1.2, 2.9}) {
        const SphericalPoint b{1.0, th, 0.7};
        if (pb == ScalarProblem::Dirichlet) {
          EXPECT_NEAR(s.eval(b), 0.0, 1e-13);
        } else {
          const double dr = (s.eval({1.0 + 1e-5, th, 0.7}) - s.eval({1.0 - 1e-5, th, 0.7})) / 2e-5;
          EXPECT_NEAR(dr, 0.0, 1e-7);
        }
      }
    }
  EXPECT_THROW(scalar_dirichlet_mode({2, 0, 0}, q), std::invalid_argument);
}

TEST(EigenBasis, RectangleAndLattice) {
  EXPECT_EQ(EigenBasis::rectangle(4, 3).size(), 219u);
  EXPECT_EQ(EigenBasis::rectangle(0, 2).size(), 2u);
  EigenBasis basis(1.0, {16, 8, 16});
  const auto lat = basis.lattice(5.0);
  // alpha < 5: (0,1)=4.49, (1,1)=2.08, (2,1)=3.34, (3,1)=4.51; rho < 5: (1,1)=4.49.
  std::size_t graddiv = 0, plus = 0, minus = 0;
  for (const ModeIndex& idx : lat) {
    EXPECT_LT(basis.zero(idx), 5.0);
    (idx.family == Family::GradDiv ? graddiv : idx.family == Family::CurlPlus ? plus : minus)++;
  }
  EXPECT_EQ(graddiv, 1u + 3u + 5u + 7u);
  EXPECT_EQ(plus, 3u);
  EXPECT_EQ(minus, 3u);
  EXPECT_TRUE(basis.lattice(2.0).empty());
  EXPECT_EQ(&basis.mode(lat.front()), &basis.mode(lat.front()));
  EXPECT_NEAR(basis.frequency({Family::CurlPlus, 1, 1, 0}), 4.493409457909064, 1e-14);
}
