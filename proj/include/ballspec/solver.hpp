#pragma once

// Series resolvents on the ball with n . u = 0 on the sphere:
//   curl u + lambda u = f          (curl q = 0, curl u+- = +-lambda_k u+-)
//   grad div u + lambda u = f      (grad div q = -nu_k^2 q, grad div u+- = 0)
// Both are diagonal in the eigenbasis. At resonance the offending directions must carry no
// data (Fredholm compatibility); the returned solution then has them set to zero.

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ballspec/eigenbasis.hpp"
#include "ballspec/spectral.hpp"

namespace ballspec {

enum class ResolventStatus { Clean, ResonantCompatible, Incompatible };

struct SolverTolerances {
  double resonance_scale = 1e-9;      // tol_res = resonance_scale * (1 + |lambda|)
  double compatibility_scale = 1e-8;  // tol_compat = compatibility_scale * ||f||
};

struct ResolventReport {
  double lambda = 0.0;
  ResolventStatus status = ResolventStatus::Clean;
  /// Modes whose eigenvalue matches lambda; they span the kernel within the truncation.
  std::vector<ModeIndex> offending_modes;
  /// max |coefficient of f| over the offending modes.
  double compatibility_residual = 0.0;
  double resonance_tolerance = 0.0;
  double compatibility_tolerance = 0.0;
  /// Absent when the data is incompatible.
  std::optional<SpectralCoefficients> solution;

  bool resonant() const noexcept { return !offending_modes.empty(); }

  std::string message() const {
    switch (status) {
      case ResolventStatus::Clean:
        return "solved";
      case ResolventStatus::ResonantCompatible:
        return "resonant; compatible data, minimal-norm solution";
      case ResolventStatus::Incompatible: {
        std::string s = "incompatible data at resonance lambda = " + std::to_string(lambda) + ": modes";
        for (const ModeIndex& m : offending_modes) s += " " + to_string(m);
        return s + " carry |coefficient| " + std::to_string(compatibility_residual) + " > " +
               std::to_string(compatibility_tolerance);
      }
    }
    return {};
  }
};

namespace detail {

template <class Symbol>
ResolventReport diagonal_solve(const SpectralCoefficients& f, double lambda, const SolverTolerances& tol,
                               Symbol&& symbol) {
  if (lambda == 0.0 || !std::isfinite(lambda))
    throw std::invalid_argument("resolvent: lambda must be finite and nonzero");
  ResolventReport rep;
  rep.lambda = lambda;
  rep.resonance_tolerance = tol.resonance_scale * (1.0 + std::abs(lambda));
  rep.compatibility_tolerance = tol.compatibility_scale * std::sqrt(f.norm2());
  SpectralCoefficients u = f;
  for (auto& [idx, coef] : u.entries) {
    const double d = symbol(idx, coef.frequency);
    if (std::abs(d) <= rep.resonance_tolerance) {
      rep.offending_modes.push_back(idx);
      rep.compatibility_residual = std::max(rep.compatibility_residual, std::abs(coef.value));
      coef.value = 0.0;
    } else {
      coef.value /= d;
    }
  }
  if (!rep.resonant()) {
    rep.status = ResolventStatus::Clean;
  } else if (rep.compatibility_residual > rep.compatibility_tolerance) {
    rep.status = ResolventStatus::Incompatible;
    return rep;
  } else {
    rep.status = ResolventStatus::ResonantCompatible;
  }
  rep.solution = std::move(u);
  return rep;
}

}  // namespace detail

/// Multiplier of curl + lambda on one mode.
inline double curl_symbol(const ModeIndex& idx, double frequency, double lambda) {
  switch (idx.family) {
    case Family::GradDiv:
      return lambda;
    case Family::CurlPlus:
      return lambda + frequency;
    case Family::CurlMinus:
      return lambda - frequency;
  }
  return lambda;
}

/// Multiplier of grad div + lambda on one mode.
inline double graddiv_symbol(const ModeIndex& idx, double frequency, double lambda) {
  return idx.family == Family::GradDiv ? lambda - frequency * frequency : lambda;
}

/// curl u + lambda u = f, n . u = 0.
inline ResolventReport solve_curl(const SpectralCoefficients& f, double lambda, const SolverTolerances& tol = {}) {
  return detail::diagonal_solve(f, lambda, tol, [lambda](const ModeIndex& idx, double freq) {
    return curl_symbol(idx, freq, lambda);
  });
}

/// grad div u + lambda u = f, n . u = 0.
inline ResolventReport solve_graddiv(const SpectralCoefficients& f, double lambda,
                                     const SolverTolerances& tol = {}) {
  return detail::diagonal_solve(f, lambda, tol, [lambda](const ModeIndex& idx, double freq) {
    return graddiv_symbol(idx, freq, lambda);
  });
}

}  // namespace ballspec
