#pragma once

#include <cmath>
#include <numbers>

namespace ballspec {

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr Vec3& operator+=(const Vec3& o) {
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }
  constexpr Vec3& operator-=(const Vec3& o) {
    x -= o.x;
    y -= o.y;
    z -= o.z;
    return *this;
  }
  constexpr Vec3& operator*=(double s) {
    x *= s;
    y *= s;
    z *= s;
    return *this;
  }

  friend constexpr Vec3 operator+(Vec3 a, const Vec3& b) { return a += b; }
  friend constexpr Vec3 operator-(Vec3 a, const Vec3& b) { return a -= b; }
  friend constexpr Vec3 operator-(const Vec3& a) { return {-a.x, -a.y, -a.z}; }
  friend constexpr Vec3 operator*(Vec3 a, double s) { return a *= s; }
  friend constexpr Vec3 operator*(double s, Vec3 a) { return a *= s; }
  friend constexpr Vec3 operator/(Vec3 a, double s) { return a *= (1.0 / s); }
  friend constexpr bool operator==(const Vec3&, const Vec3&) = default;
};

constexpr double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

constexpr Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

/// Point in spherical coordinates: colatitude theta in [0, pi], longitude phi in [0, 2pi).
struct SphericalPoint {
  double r = 0.0;
  double theta = 0.0;
  double phi = 0.0;
};

/// Components of a vector in the orthonormal frame (i_r, i_theta, i_phi) attached to a point.
struct SphericalVec {
  double v_r = 0.0;
  double v_theta = 0.0;
  double v_phi = 0.0;

  friend constexpr bool operator==(const SphericalVec&, const SphericalVec&) = default;
};

inline Vec3 to_cartesian(const SphericalPoint& p) {
  const double st = std::sin(p.theta);
  return {p.r * st * std::cos(p.phi), p.r * st * std::sin(p.phi), p.r * std::cos(p.theta)};
}

inline SphericalPoint to_spherical(const Vec3& x) {
  const double rho = std::hypot(x.x, x.y);
  SphericalPoint p;
  p.r = std::hypot(rho, x.z);
  p.theta = std::atan2(rho, x.z);
  p.phi = std::atan2(x.y, x.x);
  if (p.phi < 0.0) p.phi += 2.0 * std::numbers::pi;
  return p;
}

struct SphericalFrame {
  Vec3 e_r;
  Vec3 e_theta;
  Vec3 e_phi;
};

inline SphericalFrame frame_at(double theta, double phi) {
  const double st = std::sin(theta), ct = std::cos(theta);
  const double sp = std::sin(phi), cp = std::cos(phi);
  return {{st * cp, st * sp, ct}, {ct * cp, ct * sp, -st}, {-sp, cp, 0.0}};
}

inline Vec3 to_cartesian(const SphericalVec& v, double theta, double phi) {
  const SphericalFrame f = frame_at(theta, phi);
  return v.v_r * f.e_r + v.v_theta * f.e_theta + v.v_phi * f.e_phi;
}

inline SphericalVec to_spherical(const Vec3& v, double theta, double phi) {
  const SphericalFrame f = frame_at(theta, phi);
  return {dot(v, f.e_r), dot(v, f.e_theta), dot(v, f.e_phi)};
}

inline double dot(const SphericalVec& a, const SphericalVec& b) {
  return a.v_r * b.v_r + a.v_theta * b.v_theta + a.v_phi * b.v_phi;
}

}  // namespace ballspec
