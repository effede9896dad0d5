#pragma once

// Streamlines dx/dt = u(x) by the classical fourth-order Runge-Kutta method with a fixed step.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "ballspec/fieldio.hpp"
#include "ballspec/geometry.hpp"

namespace ballspec {

struct TraceOptions {
  double radius = 1.0;
  double step = 1e-3;
  double total_time = 1.0;
  /// Record every stride-th step (the first and last points are always recorded).
  std::size_t stride = 1;
  /// Integration stops once |x| > radius * (1 + exit_tolerance).
  double exit_tolerance = 1e-6;
};

struct TracePoint {
  double t = 0.0;
  Vec3 x;
};

struct TraceResult {
  std::vector<TracePoint> polyline;
  std::size_t steps = 0;
  double max_radius = 0.0;
  /// True when the trajectory left the ball and integration stopped early.
  bool exited = false;
  Vec3 endpoint() const { return polyline.back().x; }
};

inline void validate(const TraceOptions& o) {
  if (!(o.radius > 0.0)) throw std::invalid_argument("trace: radius must be positive");
  if (!(o.step > 0.0) || !std::isfinite(o.step)) throw std::invalid_argument("trace: step must be positive");
  if (!(o.total_time >= 0.0) || !std::isfinite(o.total_time))
    throw std::invalid_argument("trace: total time must be non-negative");
  if (o.stride < 1) throw std::invalid_argument("trace: stride must be >= 1");
}

template <class F>
Vec3 rk4_step(F&& u, const Vec3& x, double h) {
  const Vec3 k1 = u(x);
  const Vec3 k2 = u(x + (0.5 * h) * k1);
  const Vec3 k3 = u(x + (0.5 * h) * k2);
  const Vec3 k4 = u(x + h * k3);
  return x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

/// Integrates from x0 for total_time with ceil(total_time / step) steps; the last step is
/// shortened so the trajectory ends exactly at total_time.
template <class F>
TraceResult trace_streamline(F&& u, const Vec3& x0, const TraceOptions& opt) {
  validate(opt);
  if (!(norm(x0) < opt.radius)) throw std::invalid_argument("trace: seed point lies outside the open ball");
  TraceResult out;
  out.polyline.push_back({0.0, x0});
  out.max_radius = norm(x0);
  const auto steps = static_cast<std::size_t>(std::ceil(opt.total_time / opt.step - 1e-9));
  const double limit = opt.radius * (1.0 + opt.exit_tolerance);
  Vec3 x = x0;
  for (std::size_t s = 1; s <= steps; ++s) {
    const double t_prev = static_cast<double>(s - 1) * opt.step;
    const double h = std::min(opt.step, opt.total_time - t_prev);
    x = rk4_step(u, x, h);
    out.steps = s;
    const double rx = norm(x);
    out.max_radius = std::max(out.max_radius, rx);
    const double t = t_prev + h;
    if (rx > limit) {
      out.exited = true;
      out.polyline.push_back({t, x});
      return out;
    }
    if (s % opt.stride == 0 || s == steps) out.polyline.push_back({t, x});
  }
  return out;
}

inline std::string polyline_to_csv(const TraceResult& r) {
  std::string out = "t,x,y,z\n";
  for (const TracePoint& p : r.polyline)
    out += format_double(p.t) + ',' + format_double(p.x.x) + ',' + format_double(p.x.y) + ',' +
           format_double(p.x.z) + '\n';
  return out;
}

}  // namespace ballspec
