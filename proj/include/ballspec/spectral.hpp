#pragma once

// Fourier analysis of vector fields in the combined orthonormal basis {q_k} u {u+_k} u {u-_k}.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdlib>
#include <map>
#include <span>
#include <stdexcept>
#include <thread>
#include <tuple>
#include <utility>
#include <vector>

#include "ballspec/ballquad.hpp"
#include "ballspec/eigenbasis.hpp"
#include "ballspec/geometry.hpp"

namespace ballspec {

struct Coefficient {
  double value = 0.0;
  double frequency = 0.0;  // lambda_k or nu_k of the mode
};

/// Fourier coefficients (f, q_k), (f, u+_k), (f, u-_k) of one field.
struct SpectralCoefficients {
  double radius = 1.0;
  double cutoff = 0.0;  // 0 when the index set is not a lattice truncation
  QuadratureOrders orders{};
  std::map<ModeIndex, Coefficient> entries;

  double value(const ModeIndex& idx) const {
    const auto it = entries.find(idx);
    return it == entries.end() ? 0.0 : it->second.value;
  }

  /// Sum of squared coefficients (Parseval side of the norm).
  double norm2() const {
    double s = 0.0;
    for (const auto& [idx, c] : entries) s += c.value * c.value;
    return s;
  }
};

namespace detail {

inline unsigned thread_count() {
  if (const char* env = std::getenv("BALLSPEC_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return 1;
}

// Each task writes only its own output slot, so results do not depend on the thread count.
template <class F>
void parallel_for(std::size_t count, F&& body) {
  const unsigned threads = std::min<unsigned>(thread_count(), static_cast<unsigned>(std::max<std::size_t>(count, 1)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::jthread> pool;
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&, t] {
      for (std::size_t i = t; i < count; i += threads) body(i);
    });
}

}  // namespace detail

/// A set of modes tabulated on the basis quadrature: radial profiles on the radial nodes and
/// (Y, HY) on the angular grid. Projections and Gram entries are the full tensor-product
/// quadrature sums, regrouped by shell.
class ModeTable {
 public:
  ModeTable(EigenBasis& basis, std::vector<ModeIndex> modes)
      : quad_(&basis.quadrature()), modes_(std::move(modes)) {
    const SphereGrid& sg = quad_->sphere();
    std::map<AngularIndex, std::size_t> slot;
    for (const ModeIndex& idx : modes_) {
      const VectorMode& mode = basis.mode(idx);
      auto [it, inserted] = slot.try_emplace(angular(idx), angular_.size());
      if (inserted) {
        Angular tab;
        tab.y.resize(sg.size());
        tab.hy.resize(sg.size());
        for (std::size_t a = 0; a < sg.size(); ++a) {
          const AngularValues av = angular_values(angular(idx), sg.theta(a), sg.phi(a));
          tab.y[a] = av.y;
          tab.hy[a] = av.hy;
        }
        angular_.push_back(std::move(tab));
      }
      angular_slot_.push_back(it->second);
      Profile prof;
      prof.c = mode.normalization();
      for (const RadialFactors& f : mode.node_factors()) {
        prof.radial.push_back(f.radial);
        prof.tangential.push_back(f.tangential);
      }
      profiles_.push_back(std::move(prof));
    }
  }

  const std::vector<ModeIndex>& modes() const noexcept { return modes_; }
  const BallQuadrature& quadrature() const noexcept { return *quad_; }

  /// Coefficients (f, mode) for samples of f in the local spherical frame at every
  /// quadrature node (flat node order).
  std::vector<double> project(std::span<const SphericalVec> samples) const {
    if (samples.size() != quad_->size())
      throw std::invalid_argument("ModeTable::project: sample count does not match quadrature");
    const std::size_t nr = quad_->radii().size(), na = quad_->sphere().size();
    // Angular moments per (angular slot, shell).
    std::vector<std::vector<double>> m_r(angular_.size(), std::vector<double>(nr));
    std::vector<std::vector<std::complex<double>>> m_t(angular_.size(),
                                                       std::vector<std::complex<double>>(nr));
    detail::parallel_for(angular_.size(), [&](std::size_t s) {
      const Angular& tab = angular_[s];
      for (std::size_t i = 0; i < nr; ++i) {
        double acc_r = 0.0;
        std::complex<double> acc_t{0.0, 0.0};
        for (std::size_t a = 0; a < na; ++a) {
          const SphericalVec& f = samples[i * na + a];
          const double w = quad_->sphere().weight(a);
          acc_r += w * f.v_r * tab.y[a];
          acc_t += w * std::complex<double>(f.v_phi, f.v_theta) * std::conj(tab.hy[a]);
        }
        m_r[s][i] = acc_r;
        m_t[s][i] = acc_t;
      }
    });
    std::vector<double> out(modes_.size());
    const auto w = quad_->radial_weights();
    for (std::size_t j = 0; j < modes_.size(); ++j) {
      const Profile& p = profiles_[j];
      const std::size_t s = angular_slot_[j];
      double acc = 0.0;
      for (std::size_t i = 0; i < nr; ++i)
        acc += w[i] * (p.radial[i] * m_r[s][i] + (std::conj(p.tangential[i]) * m_t[s][i]).real());
      out[j] = p.c * acc;
    }
    return out;
  }

  /// Partial sum sum_j coeffs[j] * mode_j at every quadrature node.
  std::vector<SphericalVec> synthesize(std::span<const double> coeffs) const {
    if (coeffs.size() != modes_.size())
      throw std::invalid_argument("ModeTable::synthesize: coefficient count mismatch");
    const std::size_t nr = quad_->radii().size(), na = quad_->sphere().size();
    std::vector<SphericalVec> out(quad_->size());
    for (std::size_t j = 0; j < modes_.size(); ++j) {
      if (coeffs[j] == 0.0) continue;
      const Profile& p = profiles_[j];
      const Angular& tab = angular_[angular_slot_[j]];
      for (std::size_t i = 0; i < nr; ++i) {
        const double ar = coeffs[j] * p.c * p.radial[i];
        const std::complex<double> at = coeffs[j] * p.c * p.tangential[i];
        for (std::size_t a = 0; a < na; ++a) {
          const std::complex<double> t = at * tab.hy[a];
          SphericalVec& v = out[i * na + a];
          v.v_r += ar * tab.y[a];
          v.v_phi += t.real();
          v.v_theta += t.imag();
        }
      }
    }
    return out;
  }

  /// Gram matrix (mode_a, mode_b), row-major.
  std::vector<double> gram() const {
    const std::size_t nm = modes_.size(), ns = angular_.size(), na = quad_->sphere().size();
    std::vector<double> yy(ns * ns);
    std::vector<std::complex<double>> hh(ns * ns);
    detail::parallel_for(ns, [&](std::size_t s) {
      for (std::size_t t = 0; t < ns; ++t) {
        double acc_y = 0.0;
        std::complex<double> acc_h{0.0, 0.0};
        for (std::size_t a = 0; a < na; ++a) {
          const double w = quad_->sphere().weight(a);
          acc_y += w * angular_[s].y[a] * angular_[t].y[a];
          acc_h += w * angular_[s].hy[a] * std::conj(angular_[t].hy[a]);
        }
        yy[s * ns + t] = acc_y;
        hh[s * ns + t] = acc_h;
      }
    });
    std::vector<double> g(nm * nm);
    const auto w = quad_->radial_weights();
    detail::parallel_for(nm, [&](std::size_t x) {
      for (std::size_t y = 0; y < nm; ++y) {
        const Profile& p = profiles_[x];
        const Profile& q = profiles_[y];
        const std::size_t st = angular_slot_[x] * ns + angular_slot_[y];
        double acc = 0.0;
        for (std::size_t i = 0; i < w.size(); ++i)
          acc += w[i] * (p.radial[i] * q.radial[i] * yy[st] +
                         (p.tangential[i] * std::conj(q.tangential[i]) * hh[st]).real());
        g[x * nm + y] = p.c * q.c * acc;
      }
    });
    return g;
  }

 private:
  struct Angular {
    std::vector<double> y;
    std::vector<std::complex<double>> hy;
  };
  struct Profile {
    double c = 1.0;
    std::vector<double> radial;
    std::vector<std::complex<double>> tangential;
  };

  const BallQuadrature* quad_;
  std::vector<ModeIndex> modes_;
  std::vector<Angular> angular_;
  std::vector<std::size_t> angular_slot_;
  std::vector<Profile> profiles_;
};

/// Samples of a Cartesian field f(x) -> Vec3 at every node of q, in local spherical components.
template <class F>
std::vector<SphericalVec> sample_on_quadrature(F&& f, const BallQuadrature& q) {
  std::vector<SphericalVec> out(q.size());
  for (std::size_t idx = 0; idx < q.size(); ++idx) {
    const BallNode nd = q.node(idx);
    out[idx] = to_spherical(f(nd.x), nd.point.theta, nd.point.phi);
  }
  return out;
}

/// L2 norm squared of node samples.
inline double quadrature_norm2(std::span<const SphericalVec> samples, const BallQuadrature& q) {
  const std::size_t na = q.sphere().size();
  double total = 0.0;
  for (std::size_t i = 0; i < q.radii().size(); ++i) {
    double shell = 0.0;
    for (std::size_t a = 0; a < na; ++a) shell += q.sphere().weight(a) * dot(samples[i * na + a], samples[i * na + a]);
    total += q.radial_weights()[i] * shell;
  }
  return total;
}

/// Coefficients of node samples against an explicit index set.
inline SpectralCoefficients analyze_samples(std::span<const SphericalVec> samples,
                                            const std::vector<ModeIndex>& modes, EigenBasis& basis,
                                            double cutoff = 0.0) {
  const ModeTable table(basis, modes);
  const std::vector<double> values = table.project(samples);
  SpectralCoefficients out;
  out.radius = basis.radius();
  out.cutoff = cutoff;
  out.orders = basis.quadrature().orders();
  for (std::size_t j = 0; j < modes.size(); ++j)
    out.entries[modes[j]] = {values[j], basis.frequency(modes[j])};
  return out;
}

/// Coefficients of f over the lattice of modes with zero below `cutoff`.
template <class F>
SpectralCoefficients analyze(F&& f, double cutoff, EigenBasis& basis) {
  const auto samples = sample_on_quadrature(f, basis.quadrature());
  return analyze_samples(samples, basis.lattice(cutoff), basis, cutoff);
}

/// Coefficients of f over an explicit index set.
template <class F>
SpectralCoefficients analyze(F&& f, const std::vector<ModeIndex>& modes, EigenBasis& basis) {
  const auto samples = sample_on_quadrature(f, basis.quadrature());
  return analyze_samples(samples, modes, basis);
}

/// Pointwise partial sum of a coefficient set; profiles shared across k and families are
/// evaluated once per point.
class Series {
 public:
  Series(const SpectralCoefficients& c, EigenBasis& basis) {
    std::map<std::tuple<Family, int, int>, std::size_t> radial_slot;
    std::map<AngularIndex, std::size_t> angular_slot;
    for (const auto& [idx, coef] : c.entries) {
      if (coef.value == 0.0) continue;
      const VectorMode* mode = &basis.mode(idx);
      Term t{mode, coef.value, 0, 0};
      auto [ri, r_new] = radial_slot.try_emplace({idx.family, idx.n, idx.m}, radial_modes_.size());
      if (r_new) radial_modes_.push_back(mode);
      t.radial = ri->second;
      auto [ai, a_new] = angular_slot.try_emplace(angular(idx), angular_index_.size());
      if (a_new) angular_index_.push_back(angular(idx));
      t.angular = ai->second;
      terms_.push_back(t);
    }
  }

  SphericalVec eval(const SphericalPoint& p) const {
    std::vector<RadialFactors> rf(radial_modes_.size());
    for (std::size_t i = 0; i < rf.size(); ++i) rf[i] = radial_modes_[i]->radial_factors(p.r);
    std::vector<AngularValues> av(angular_index_.size());
    for (std::size_t i = 0; i < av.size(); ++i) av[i] = angular_values(angular_index_[i], p.theta, p.phi);
    SphericalVec out;
    for (const Term& t : terms_) {
      const SphericalVec v = t.mode->combine(rf[t.radial], av[t.angular]);
      out.v_r += t.value * v.v_r;
      out.v_theta += t.value * v.v_theta;
      out.v_phi += t.value * v.v_phi;
    }
    return out;
  }

  Vec3 eval_cartesian(const Vec3& x) const {
    const SphericalPoint p = to_spherical(x);
    return to_cartesian(eval(p), p.theta, p.phi);
  }
  Vec3 operator()(const Vec3& x) const { return eval_cartesian(x); }

  std::size_t size() const noexcept { return terms_.size(); }

 private:
  struct Term {
    const VectorMode* mode;
    double value;
    std::size_t radial;
    std::size_t angular;
  };
  std::vector<Term> terms_;
  std::vector<const VectorMode*> radial_modes_;
  std::vector<AngularIndex> angular_index_;
};

/// Partial sum sum a_k q_k + sum b+_k u+_k + sum b-_k u-_k at one point.
inline SphericalVec synthesize(const SpectralCoefficients& c, EigenBasis& basis, const SphericalPoint& p) {
  return Series(c, basis).eval(p);
}

/// Potential part a_f (grad-div entries) and solenoidal part b_f (curl entries).
inline std::pair<SpectralCoefficients, SpectralCoefficients> split(const SpectralCoefficients& c) {
  SpectralCoefficients a = c, b = c;
  a.entries.clear();
  b.entries.clear();
  for (const auto& [idx, coef] : c.entries) (is_curl(idx.family) ? b : a).entries.emplace(idx, coef);
  return {a, b};
}

/// sum lambda_k^{2s} (b+_k^2 + b-_k^2) + sum nu_k^{2s} a_k^2 over the stored entries.
inline double sobolev_diagnostic(const SpectralCoefficients& c, int s) {
  if (s < 0) throw std::invalid_argument("sobolev_diagnostic: order must be >= 0");
  double total = 0.0;
  for (const auto& [idx, coef] : c.entries) total += std::pow(coef.frequency, 2 * s) * coef.value * coef.value;
  return total;
}

}  // namespace ballspec
