#pragma once

// Special functions on the ball: psi_n(z) = sqrt(pi/(2z)) J_{n+1/2}(z), its derivatives and
// positive zeros, Ferrers associated Legendre functions, the real spherical harmonics
// Y_n^k and the tangential operator H = (1/sin th) d_phi + i d_th applied to them.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <map>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ballspec {

namespace detail {

inline double parity_sign(int n) { return (n % 2 == 0) ? 1.0 : -1.0; }

// Sum_p c_p * D_d(n + 2p) * a^(n + 2p - d), where psi_n(a) = Sum_p c_p a^(n+2p) and
// D_d(e) = e (e-1) ... (e-d+1). Used for 0 < a < 1 only, where it has no cancellation.
inline double psi_series(int n, double a, int d) {
  double t = 1.0;
  for (int l = 1; l <= n; ++l) t *= a / (2.0 * l + 1.0);
  const double a2 = a * a;
  double sum = 0.0;
  for (int p = 0; p < 200 && t != 0.0; ++p) {
    const int e = n + 2 * p;
    double fall = 1.0;
    for (int i = 0; i < d; ++i) fall *= static_cast<double>(e - i);
    const double term = t * fall;
    sum += term;
    if (p > 0 && std::abs(term) <= 1e-17 * std::abs(sum)) break;
    t *= -a2 / (2.0 * (p + 1) * (2.0 * n + 2.0 * p + 3.0));
  }
  return d == 0 ? sum : sum / std::pow(a, d);
}

// psi_n(a) for a >= 1.
inline double psi_positive(int n, double a) {
  const double s = std::sin(a), c = std::cos(a);
  const double j0 = s / a;
  const double j1 = s / (a * a) - c / a;
  if (n == 0) return j0;
  if (n == 1) return j1;
  if (static_cast<double>(n) <= a) {
    // Upward recurrence is stable while the order stays below the argument.
    double prev = j0, cur = j1;
    for (int l = 1; l < n; ++l) {
      const double next = (2.0 * l + 1.0) / a * cur - prev;
      prev = cur;
      cur = next;
    }
    return cur;
  }
  // Miller downward recurrence, normalized against whichever of j0, j1 is larger.
  const int start = n + 20 + static_cast<int>(std::sqrt(40.0 * n));
  double upper = 0.0, cur = 1e-30;
  double at_n = 0.0, at_1 = 0.0, at_0 = 0.0;
  for (int l = start; l >= 1; --l) {
    const double lower = (2.0 * l + 1.0) / a * cur - upper;
    upper = cur;
    cur = lower;  // cur now holds f_{l-1}
    if (l - 1 == n) at_n = cur;
    if (std::abs(cur) > 1e250) {
      cur *= 1e-250;
      upper *= 1e-250;
      at_n *= 1e-250;
    }
  }
  at_0 = cur;
  at_1 = upper;
  if (std::abs(j0) >= std::abs(j1)) return at_n * (j0 / at_0);
  return at_n * (j1 / at_1);
}

}  // namespace detail

/// psi_n(z) = (-z)^n (d/(z dz))^n (sin z / z), the spherical Bessel function j_n.
inline double psi(int n, double z) {
  if (n < 0) throw std::invalid_argument("psi: degree must be non-negative");
  const double a = std::abs(z);
  const double sign = (z < 0.0) ? detail::parity_sign(n) : 1.0;
  if (a == 0.0) return n == 0 ? 1.0 : 0.0;
  if (a < 1.0) return sign * detail::psi_series(n, a, 0);
  return sign * detail::psi_positive(n, a);
}

/// d psi_n / dz. At z = 0 returns the series value (1/3 for n = 1, otherwise 0).
inline double psi_prime(int n, double z) {
  if (n < 0) throw std::invalid_argument("psi_prime: degree must be non-negative");
  if (n == 0) return -psi(1, z);
  const double a = std::abs(z);
  const double sign = (z < 0.0) ? detail::parity_sign(n + 1) : 1.0;
  if (a == 0.0) return n == 1 ? 1.0 / 3.0 : 0.0;
  if (a < 1.0) return sign * detail::psi_series(n, a, 1);
  return sign * (detail::psi_positive(n - 1, a) - (n + 1.0) / a * detail::psi_positive(n, a));
}

/// Second derivative, from the spherical Bessel equation.
inline double psi_second(int n, double z) {
  if (n < 0) throw std::invalid_argument("psi_second: degree must be non-negative");
  const double a = std::abs(z);
  const double sign = (z < 0.0) ? detail::parity_sign(n) : 1.0;
  if (a == 0.0) {
    if (n == 0) return -1.0 / 3.0;
    if (n == 2) return 2.0 / 15.0;
    return 0.0;
  }
  if (a < 1.0) return sign * detail::psi_series(n, a, 2);
  const double p = psi(n, a), dp = psi_prime(n, a);
  return sign * (-2.0 / a * dp - (1.0 - n * (n + 1.0) / (a * a)) * p);
}

/// psi_n(z) / z for n >= 1, continuous through z = 0.
inline double psi_over_z(int n, double z) {
  if (n < 1) throw std::invalid_argument("psi_over_z: requires n >= 1");
  const double a = std::abs(z);
  const double sign = (z < 0.0) ? detail::parity_sign(n + 1) : 1.0;
  if (a == 0.0) return n == 1 ? 1.0 / 3.0 : 0.0;
  if (a < 1.0) return sign * detail::psi_series(n, a, 0) / a;
  return sign * detail::psi_positive(n, a) / a;
}

// ---------------------------------------------------------------------------
// Zeros

enum class ZeroFamily { Psi, PsiPrime };

inline constexpr double kDefaultZeroCeiling = 4096.0;

class ZeroSearchError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

template <class F, class DF>
double refine_root(const F& f, const DF& df, double lo, double hi, double f_lo) {
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (f_lo < 0.0)) {
      lo = mid;
      f_lo = fm;
    } else {
      hi = mid;
    }
  }
  double z = 0.5 * (lo + hi);
  double fz = f(z);
  for (int it = 0; it < 3 && fz != 0.0; ++it) {
    const double d = df(z);
    if (d == 0.0) break;
    const double cand = z - fz / d;
    const double fc = f(cand);
    if (!(std::abs(fc) < std::abs(fz))) break;
    z = cand;
    fz = fc;
  }
  return z;
}

// Sign-change bracketing on a uniform grid starting just above n; roots of psi_n and psi_n'
// both lie above n.
template <class F, class DF>
std::vector<double> find_zeros(const F& f, const DF& df, int n, int count, double ceiling) {
  if (n < 0) throw std::invalid_argument("zeros: degree must be non-negative");
  if (count < 1) throw std::invalid_argument("zeros: count must be >= 1");
  const double step = std::min(std::numbers::pi / 4.0, std::numbers::pi / (2.0 * n + 2.0));
  std::vector<double> roots;
  roots.reserve(static_cast<std::size_t>(count));
  double a = std::max(static_cast<double>(n), 1e-3);
  double fa = f(a);
  std::size_t i = 0;
  while (static_cast<int>(roots.size()) < count) {
    const double b = std::max(static_cast<double>(n), 1e-3) + step * static_cast<double>(++i);
    if (b > ceiling) {
      throw ZeroSearchError("zero search for degree " + std::to_string(n) + " found only " +
                            std::to_string(roots.size()) + " of " + std::to_string(count) +
                            " roots below ceiling " + std::to_string(ceiling));
    }
    const double fb = f(b);
    if (fb == 0.0) {
      roots.push_back(b);
      a = b + 1e-6 * step;
      fa = f(a);
      continue;
    }
    if ((fa < 0.0) != (fb < 0.0)) roots.push_back(refine_root(f, df, a, b, fa));
    a = b;
    fa = fb;
  }
  return roots;
}

}  // namespace detail

/// First `count` positive zeros rho_{n,1..count} of psi_n.
inline std::vector<double> zeros_psi(int n, int count, double ceiling = kDefaultZeroCeiling) {
  return detail::find_zeros([n](double z) { return psi(n, z); },
                            [n](double z) { return psi_prime(n, z); }, n, count, ceiling);
}

/// First `count` positive zeros alpha_{n,1..count} of psi_n'. z = 0 is never reported.
inline std::vector<double> zeros_psi_prime(int n, int count,
                                           double ceiling = kDefaultZeroCeiling) {
  return detail::find_zeros([n](double z) { return psi_prime(n, z); },
                            [n](double z) { return psi_second(n, z); }, n, count, ceiling);
}

/// Memoized zeros of psi_n or psi_n'. Not thread-safe while being extended: build the entries
/// you need first, then share the table read-only.
class ZeroTable {
 public:
  explicit ZeroTable(ZeroFamily family, double ceiling = kDefaultZeroCeiling)
      : family_(family), ceiling_(ceiling) {}

  ZeroFamily family() const noexcept { return family_; }
  double ceiling() const noexcept { return ceiling_; }

  std::span<const double> zeros(int n, int count) {
    auto& row = entries_[n];
    if (static_cast<int>(row.size()) < count) {
      row = family_ == ZeroFamily::Psi ? zeros_psi(n, count, ceiling_)
                                       : zeros_psi_prime(n, count, ceiling_);
    }
    return std::span<const double>(row).first(static_cast<std::size_t>(count));
  }

  /// m-th zero (m >= 1) of degree n.
  double zero(int n, int m) {
    if (m < 1) throw std::invalid_argument("ZeroTable: radial index m must be >= 1");
    return zeros(n, m).back();
  }

  std::optional<double> find(int n, int m) const {
    const auto it = entries_.find(n);
    if (it == entries_.end() || m < 1 || static_cast<std::size_t>(m) > it->second.size())
      return std::nullopt;
    return it->second[static_cast<std::size_t>(m - 1)];
  }

  /// Fill all degrees 0..n_max with m_max zeros each.
  void build(int n_max, int m_max) {
    for (int n = 0; n <= n_max; ++n) zeros(n, m_max);
  }

  const std::map<int, std::vector<double>>& entries() const noexcept { return entries_; }

  /// Adopt externally stored rows (e.g. from a file) after checking the defining residual
  /// and ordering invariants.
  void adopt(int n, std::vector<double> row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      const double z = row[i];
      const double res = family_ == ZeroFamily::Psi ? psi(n, z) : psi_prime(n, z);
      if (!(z > 0.0) || std::abs(res) > 1e-12)
        throw std::invalid_argument("ZeroTable: entry (" + std::to_string(n) + ", " +
                                    std::to_string(i + 1) + ") is not a zero");
      if (i > 0 && !(row[i] > row[i - 1]))
        throw std::invalid_argument("ZeroTable: entries must increase in m");
    }
    entries_[n] = std::move(row);
  }

 private:
  ZeroFamily family_;
  double ceiling_;
  std::map<int, std::vector<double>> entries_;
};

// ---------------------------------------------------------------------------
// Angular functions

struct AngularIndex {
  int n = 0;
  int k = 0;

  friend constexpr auto operator<=>(const AngularIndex&, const AngularIndex&) = default;
};

inline void validate(const AngularIndex& idx) {
  if (idx.n < 0 || std::abs(idx.k) > idx.n)
    throw std::invalid_argument("AngularIndex: require n >= 0 and |k| <= n");
}

struct LegendreValues {
  double value = 0.0;     // P_n^k(cos th)
  double d_theta = 0.0;   // d/d th of P_n^k(cos th)
  double over_sin = 0.0;  // P_n^k(cos th) / sin th; defined for k >= 1 only, zero for k = 0
};

namespace detail {

// Q_l = P_l^k / sin th for l = n-1, n (k >= 1), via the three-term recurrence in l.
inline std::pair<double, double> legendre_over_sin(int n, int k, double x, double s) {
  double qk = 1.0;
  for (int i = 1; i <= k; ++i) qk *= (2.0 * i - 1.0);
  for (int i = 1; i < k; ++i) qk *= s;
  if (n == k) return {0.0, qk};
  double prev = qk;
  double cur = x * (2.0 * k + 1.0) * qk;
  for (int l = k + 2; l <= n; ++l) {
    const double next = ((2.0 * l - 1.0) * x * cur - (l + k - 1.0) * prev) / (l - k);
    prev = cur;
    cur = next;
  }
  return {prev, cur};
}

}  // namespace detail

/// Ferrers associated Legendre function without the Condon-Shortley phase, unnormalized:
/// P_k^k(cos th) = (2k-1)!! sin^k th.
inline LegendreValues ferrers_legendre(int n, int k, double theta) {
  if (k < 0 || k > n) throw std::invalid_argument("ferrers_legendre: require 0 <= k <= n");
  const double x = std::cos(theta);
  const double s = std::abs(std::sin(theta));
  LegendreValues out;
  if (k == 0) {
    double prev = 1.0, cur = x;
    if (n == 0) {
      cur = 1.0;
    } else {
      for (int l = 2; l <= n; ++l) {
        const double next = ((2.0 * l - 1.0) * x * cur - (l - 1.0) * prev) / l;
        prev = cur;
        cur = next;
      }
    }
    out.value = cur;
    out.d_theta = n == 0 ? 0.0 : -s * detail::legendre_over_sin(n, 1, x, s).second;
    return out;
  }
  const auto [q_lower, q_n] = detail::legendre_over_sin(n, k, x, s);
  out.over_sin = q_n;
  out.value = s * q_n;
  out.d_theta = n * x * q_n - (n + k) * q_lower;
  return out;
}

/// Y and HY at one direction.
struct AngularValues {
  double y = 0.0;
  std::complex<double> hy;
};

inline AngularValues angular_values(const AngularIndex& idx, double theta, double phi) {
  validate(idx);
  const int a = std::abs(idx.k);
  const LegendreValues p = ferrers_legendre(idx.n, a, theta);
  AngularValues v;
  if (idx.k == 0) {
    v.y = p.value;
    v.hy = {0.0, p.d_theta};
  } else if (idx.k > 0) {
    const double c = std::cos(a * phi), s = std::sin(a * phi);
    v.y = p.value * c;
    v.hy = {-a * p.over_sin * s, p.d_theta * c};
  } else {
    const double c = std::cos(a * phi), s = std::sin(a * phi);
    v.y = p.value * s;
    v.hy = {a * p.over_sin * c, p.d_theta * s};
  }
  return v;
}

/// Y_n^k(th, ph): P_n^k(cos th) cos(k ph) for k >= 0, P_n^|k|(cos th) sin(|k| ph) for k < 0.
inline double real_sph_harm(const AngularIndex& idx, double theta, double phi) {
  return angular_values(idx, theta, phi).y;
}

/// H Y_n^k = (1/sin th) d_ph Y + i d_th Y. Finite at the poles (analytic limit).
inline std::complex<double> h_operator(const AngularIndex& idx, double theta, double phi) {
  return angular_values(idx, theta, phi).hy;
}

}  // namespace ballspec
