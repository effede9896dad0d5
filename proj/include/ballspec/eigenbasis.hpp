#pragma once

// Eigenfields on the ball B_R:
//   grad-div modes q_k,    -grad div q = nu^2 q,      nu  = alpha_{n,m} / R, n >= 0
//   curl modes u+_k, u-_k,  curl u = +-lambda u,       lam = rho_{n,m} / R,   n >= 1
// all with n . u = 0 on the sphere, plus the scalar Dirichlet and Neumann eigenfunctions.
//
// Every vector mode is stored as two radial profiles against the angular pair (Y, HY):
//   u_r             = c * radial(r)     * Y_n^k(th, ph)
//   u_phi + i u_th  = c * tangential(r) * H Y_n^k(th, ph)
// For q: radial = nu psi_n'(nu r), tangential = psi_n(nu r) / r.
// For u+-: with s = +-lam, radial = psi_n(s r) / (s r), tangential = Phi_n(s, r) / (s r).

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <memory>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ballspec/ballquad.hpp"
#include "ballspec/geometry.hpp"
#include "ballspec/specfun.hpp"

namespace ballspec {

enum class Family { GradDiv, CurlPlus, CurlMinus };

inline std::string_view to_string(Family f) {
  switch (f) {
    case Family::GradDiv:
      return "graddiv";
    case Family::CurlPlus:
      return "curl_plus";
    case Family::CurlMinus:
      return "curl_minus";
  }
  return "?";
}

inline Family family_from_string(std::string_view s) {
  if (s == "graddiv" || s == "grad-div" || s == "q") return Family::GradDiv;
  if (s == "curl_plus" || s == "plus" || s == "curl-plus") return Family::CurlPlus;
  if (s == "curl_minus" || s == "minus" || s == "curl-minus") return Family::CurlMinus;
  throw std::invalid_argument("unknown mode family '" + std::string(s) + "'");
}

inline bool is_curl(Family f) { return f != Family::GradDiv; }

struct ModeIndex {
  Family family = Family::GradDiv;
  int n = 0;
  int m = 1;
  int k = 0;

  friend constexpr auto operator<=>(const ModeIndex&, const ModeIndex&) = default;
};

inline std::string to_string(const ModeIndex& idx) {
  return std::string(to_string(idx.family)) + "(" + std::to_string(idx.n) + "," +
         std::to_string(idx.m) + "," + std::to_string(idx.k) + ")";
}

inline void validate(const ModeIndex& idx) {
  if (idx.m < 1) throw std::invalid_argument("ModeIndex: m must be >= 1");
  if (idx.n < 0 || std::abs(idx.k) > idx.n)
    throw std::invalid_argument("ModeIndex: require n >= 0 and |k| <= n");
  if (is_curl(idx.family) && idx.n < 1)
    throw std::invalid_argument("ModeIndex: curl modes require n >= 1 (the n = 0 series is empty)");
}

inline AngularIndex angular(const ModeIndex& idx) { return {idx.n, idx.k}; }

namespace detail {

inline const GaussRule& panel_rule() {
  static const GaussRule rule = gauss_legendre(16);
  return rule;
}

}  // namespace detail

/// Phi_n(lambda r) = int_0^r exp(i lambda (r - t)) psi_n(lambda t) / t dt for n >= 1.
/// `refine` multiplies the number of quadrature panels.
inline std::complex<double> phi_n(int n, double lambda, double r, int refine = 1) {
  if (n < 1) throw std::invalid_argument("phi_n: requires n >= 1 (integrand diverges for n = 0)");
  if (lambda == 0.0) throw std::invalid_argument("phi_n: lambda must be nonzero");
  if (refine < 1) throw std::invalid_argument("phi_n: refine must be >= 1");
  if (r <= 0.0) return {0.0, 0.0};
  const GaussRule& g = detail::panel_rule();
  const auto integrand = [&](double t) {
    // psi_n(lambda t) / t = lambda * psi_n(z) / z with z = lambda t; series form near t = 0.
    const double phase = lambda * (r - t);
    return std::complex<double>(std::cos(phase), std::sin(phase)) *
           (lambda * psi_over_z(n, lambda * t));
  };
  const auto integrate = [&](double a, double b, int panels) {
    std::complex<double> sum{0.0, 0.0};
    const double h = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
      const double lo = a + p * h;
      std::complex<double> panel{0.0, 0.0};
      for (std::size_t j = 0; j < g.nodes.size(); ++j)
        panel += g.weights[j] * integrand(lo + 0.5 * h * (g.nodes[j] + 1.0));
      sum += 0.5 * h * panel;
    }
    return sum;
  };
  const double delta = std::min(0.1 / std::abs(lambda), r / 8.0);
  const double span = r - delta;
  const int panels =
      std::max(1, static_cast<int>(std::ceil(4.0 * std::abs(lambda) * span / (2.0 * std::numbers::pi))));
  return integrate(0.0, delta, refine) + integrate(delta, r, panels * refine);
}

/// Unnormalized radial profiles of a mode at one radius (see file comment).
struct RadialFactors {
  double radial = 0.0;
  std::complex<double> tangential;
};

/// A unit-norm eigenfield. Immutable after construction; evaluation is pure.
class VectorMode {
 public:
  /// `zero` is rho_{n,m} for curl modes and alpha_{n,m} for grad-div modes. The radial nodes
  /// and angular grid of `q` are used to normalize and to cache profiles.
  VectorMode(const ModeIndex& index, double zero, const BallQuadrature& q)
      : index_(index), radius_(q.radius()), zero_(zero) {
    validate(index);
    if (!(zero > 0.0)) throw std::invalid_argument("VectorMode: zero must be positive");
    const double freq = zero / radius_;
    scale_ = index.family == Family::CurlMinus ? -freq : freq;

    const auto radii = q.radii();
    cache_r_.assign(radii.begin(), radii.end());
    cache_.reserve(cache_r_.size());
    for (double r : cache_r_) cache_.push_back(compute_factors(r));

    const SphereGrid& sg = q.sphere();
    double y2 = 0.0, hy2 = 0.0;
    for (std::size_t a = 0; a < sg.size(); ++a) {
      const AngularValues av = angular_values(angular(index), sg.theta(a), sg.phi(a));
      y2 += sg.weight(a) * av.y * av.y;
      hy2 += sg.weight(a) * std::norm(av.hy);
    }
    double norm2 = 0.0;
    const auto w = q.radial_weights();
    for (std::size_t i = 0; i < cache_.size(); ++i)
      norm2 += w[i] * (cache_[i].radial * cache_[i].radial * y2 + std::norm(cache_[i].tangential) * hy2);
    c_ = 1.0 / std::sqrt(norm2);
  }

  const ModeIndex& index() const noexcept { return index_; }
  double radius() const noexcept { return radius_; }
  /// rho_{n,m} or alpha_{n,m}.
  double zero() const noexcept { return zero_; }
  /// lambda_k = rho / R (curl) or nu_k = alpha / R (grad-div); always positive.
  double frequency() const noexcept { return zero_ / radius_; }
  /// +-lambda_k for curl modes (curl u = eigenvalue * u); nu_k^2 for grad-div modes
  /// (-grad div q = eigenvalue * q).
  double eigenvalue() const noexcept {
    return is_curl(index_.family) ? scale_ : scale_ * scale_;
  }
  /// c_k: the constant making the L2(B) norm one under the construction quadrature.
  double normalization() const noexcept { return c_; }

  /// Unnormalized profiles; served from the node cache when r is a construction radius.
  RadialFactors radial_factors(double r) const {
    const auto it = std::lower_bound(cache_r_.begin(), cache_r_.end(), r);
    if (it != cache_r_.end() && *it == r) return cache_[static_cast<std::size_t>(it - cache_r_.begin())];
    return compute_factors(r);
  }

  /// Profiles at the construction radii, in quadrature order.
  const std::vector<RadialFactors>& node_factors() const noexcept { return cache_; }

  SphericalVec eval(const SphericalPoint& p) const {
    return combine(radial_factors(p.r), angular_values(angular(index_), p.theta, p.phi));
  }

  SphericalVec combine(const RadialFactors& f, const AngularValues& av) const {
    const std::complex<double> t = c_ * f.tangential * av.hy;
    return {c_ * f.radial * av.y, t.imag(), t.real()};
  }

  Vec3 eval_cartesian(const Vec3& x) const {
    const SphericalPoint p = to_spherical(x);
    return to_cartesian(eval(p), p.theta, p.phi);
  }

  Vec3 operator()(const Vec3& x) const { return eval_cartesian(x); }

 private:
  RadialFactors compute_factors(double r) const {
    const int n = index_.n;
    RadialFactors f;
    if (index_.family == Family::GradDiv) {
      const double nu = scale_;
      f.radial = nu * psi_prime(n, nu * r);
      f.tangential = n == 0 ? 0.0 : nu * psi_over_z(n, nu * r);
      return f;
    }
    const double s = scale_;
    f.radial = psi_over_z(n, s * r);
    if (r == 0.0) {
      f.tangential = n == 1 ? 1.0 / 3.0 : 0.0;
    } else {
      f.tangential = phi_n(n, s, r) / (s * r);
    }
    return f;
  }

  ModeIndex index_;
  double radius_;
  double zero_;
  double scale_ = 0.0;  // signed lambda (curl) or nu (grad-div)
  double c_ = 1.0;
  std::vector<double> cache_r_;
  std::vector<RadialFactors> cache_;
};

inline double mode_zero(const ModeIndex& idx) {
  validate(idx);
  return idx.family == Family::GradDiv ? zeros_psi_prime(idx.n, idx.m).back()
                                       : zeros_psi(idx.n, idx.m).back();
}

/// q_k with n . q = 0 on the sphere.
inline VectorMode graddiv_mode(const ModeIndex& idx, const BallQuadrature& q) {
  if (idx.family != Family::GradDiv) throw std::invalid_argument("graddiv_mode: wrong family");
  return VectorMode(idx, mode_zero(idx), q);
}

/// u+-_k, Beltrami fields with curl u = +-(rho_{n,m}/R) u.
inline VectorMode curl_mode(const ModeIndex& idx, const BallQuadrature& q) {
  if (!is_curl(idx.family)) throw std::invalid_argument("curl_mode: wrong family");
  return VectorMode(idx, mode_zero(idx), q);
}

inline SphericalVec eval_mode(const VectorMode& mode, const SphericalPoint& p) { return mode.eval(p); }

// ---------------------------------------------------------------------------
// Scalar eigenfunctions

struct ScalarIndex {
  int n = 0;
  int m = 1;
  int k = 0;
};

enum class ScalarProblem { Dirichlet, Neumann };

/// c psi_n(z r / R) Y_n^k with z = rho_{n,m} (Dirichlet) or alpha_{n,m} (Neumann), unit L2 norm.
class ScalarMode {
 public:
  ScalarMode(ScalarProblem problem, const ScalarIndex& idx, const BallQuadrature& q)
      : problem_(problem), idx_(idx), radius_(q.radius()) {
    validate(AngularIndex{idx.n, idx.k});
    if (idx.m < 1) throw std::invalid_argument("ScalarMode: m must be >= 1");
    zero_ = problem == ScalarProblem::Dirichlet ? zeros_psi(idx.n, idx.m).back()
                                                : zeros_psi_prime(idx.n, idx.m).back();
    const SphereGrid& sg = q.sphere();
    double y2 = 0.0;
    for (std::size_t a = 0; a < sg.size(); ++a) {
      const double y = real_sph_harm({idx.n, idx.k}, sg.theta(a), sg.phi(a));
      y2 += sg.weight(a) * y * y;
    }
    double norm2 = 0.0;
    for (std::size_t i = 0; i < q.radii().size(); ++i) {
      const double v = psi(idx.n, zero_ * q.radii()[i] / radius_);
      norm2 += q.radial_weights()[i] * v * v;
    }
    c_ = 1.0 / std::sqrt(norm2 * y2);
  }

  ScalarProblem problem() const noexcept { return problem_; }
  const ScalarIndex& index() const noexcept { return idx_; }
  double zero() const noexcept { return zero_; }
  /// Eigenvalue of -Laplace: (zero / R)^2.
  double eigenvalue() const noexcept { return (zero_ / radius_) * (zero_ / radius_); }
  double normalization() const noexcept { return c_; }

  double eval(const SphericalPoint& p) const {
    return c_ * psi(idx_.n, zero_ * p.r / radius_) * real_sph_harm({idx_.n, idx_.k}, p.theta, p.phi);
  }
  double operator()(const Vec3& x) const { return eval(to_spherical(x)); }

 private:
  ScalarProblem problem_;
  ScalarIndex idx_;
  double radius_;
  double zero_ = 0.0;
  double c_ = 1.0;
};

inline ScalarMode scalar_dirichlet_mode(const ScalarIndex& idx, const BallQuadrature& q) {
  return ScalarMode(ScalarProblem::Dirichlet, idx, q);
}

inline ScalarMode scalar_neumann_mode(const ScalarIndex& idx, const BallQuadrature& q) {
  return ScalarMode(ScalarProblem::Neumann, idx, q);
}

// ---------------------------------------------------------------------------

/// Zero tables, the reference quadrature and lazily built modes for one ball.
/// Lookups that build new entries mutate the object: populate before sharing across threads.
class EigenBasis {
 public:
  explicit EigenBasis(double radius, QuadratureOrders orders = {})
      : quad_(radius, orders), psi_zeros_(ZeroFamily::Psi), psi_prime_zeros_(ZeroFamily::PsiPrime) {}

  double radius() const noexcept { return quad_.radius(); }
  const BallQuadrature& quadrature() const noexcept { return quad_; }
  ZeroTable& psi_zeros() noexcept { return psi_zeros_; }
  ZeroTable& psi_prime_zeros() noexcept { return psi_prime_zeros_; }

  double zero(const ModeIndex& idx) {
    validate(idx);
    return idx.family == Family::GradDiv ? psi_prime_zeros_.zero(idx.n, idx.m)
                                         : psi_zeros_.zero(idx.n, idx.m);
  }
  double frequency(const ModeIndex& idx) { return zero(idx) / radius(); }

  const VectorMode& mode(const ModeIndex& idx) {
    auto it = modes_.find(idx);
    if (it == modes_.end())
      it = modes_.emplace(idx, std::make_unique<VectorMode>(idx, zero(idx), quad_)).first;
    return *it->second;
  }

  /// All modes with n <= n_max, m <= m_max, |k| <= n, ordered by family, n, m, k.
  static std::vector<ModeIndex> rectangle(int n_max, int m_max) {
    std::vector<ModeIndex> out;
    for (Family f : {Family::GradDiv, Family::CurlPlus, Family::CurlMinus})
      for (int n = is_curl(f) ? 1 : 0; n <= n_max; ++n)
        for (int m = 1; m <= m_max; ++m)
          for (int k = -n; k <= n; ++k) out.push_back({f, n, m, k});
    return out;
  }

  /// Truncation by eigenvalue magnitude: grad-div (n, m) with alpha_{n,m} < cutoff and curl
  /// (n, m) with rho_{n,m} < cutoff, every |k| <= n.
  std::vector<ModeIndex> lattice(double cutoff) {
    std::vector<ModeIndex> out;
    for (Family f : {Family::GradDiv, Family::CurlPlus, Family::CurlMinus}) {
      ZeroTable& table = is_curl(f) ? psi_zeros_ : psi_prime_zeros_;
      for (int n = is_curl(f) ? 1 : 0;; ++n) {
        const int count = zeros_below(table, n, cutoff);
        if (count == 0) break;
        for (int m = 1; m <= count; ++m)
          for (int k = -n; k <= n; ++k) out.push_back({f, n, m, k});
      }
    }
    return out;
  }

 private:
  static int zeros_below(ZeroTable& table, int n, double cutoff) {
    int count = 1;
    while (true) {
      const auto z = table.zeros(n, count);
      if (z.back() >= cutoff) return count - 1;
      ++count;
    }
  }

  BallQuadrature quad_;
  ZeroTable psi_zeros_;
  ZeroTable psi_prime_zeros_;
  std::map<ModeIndex, std::unique_ptr<VectorMode>> modes_;
};

}  // namespace ballspec
