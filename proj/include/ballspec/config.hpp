#pragma once

// Run configuration shared by the command-line front end: ball radius, truncation, quadrature
// orders, resolvent tolerances and the seed for randomized test data. Serialized as a flat
// key = value file; '#' starts a comment.

#include <charconv>
#include <cstdint>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

#include "ballspec/ballquad.hpp"
#include "ballspec/fieldio.hpp"
#include "ballspec/solver.hpp"

namespace ballspec {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  double radius = 1.0;
  /// Lattice cutoff on the dimensionless zeros (rho or alpha < truncation).
  double truncation = 10.0;
  QuadratureOrders orders{};
  /// Resonance tolerance scale: |symbol| <= tol_res * (1 + |lambda|).
  double tol_res = 1e-9;
  /// Compatibility tolerance scale: |coefficient| <= tol_compat * ||f||.
  double tol_compat = 1e-8;
  std::uint64_t seed = 1;

  SolverTolerances tolerances() const { return {tol_res, tol_compat}; }
};

inline void validate(const RunConfig& c) {
  if (!(c.radius > 0.0)) throw ConfigError("radius must be positive");
  if (!(c.truncation > 0.0)) throw ConfigError("truncation must be positive");
  if (c.orders.n_r < 1 || c.orders.n_theta < 1 || c.orders.n_phi < 1)
    throw ConfigError("quadrature orders must be positive");
  if (!(c.tol_res > 0.0) || !(c.tol_compat > 0.0)) throw ConfigError("tolerances must be positive");
  if (c.seed == 0) throw ConfigError("seed must be positive");
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

template <class Int>
Int parse_positive_int(std::string_view s) {
  Int v{};
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw ConfigError("malformed integer '" + std::string(s) + "'");
  return v;
}

}  // namespace detail

/// Applies one key = value assignment. Unknown keys are errors.
inline void set_config_value(RunConfig& c, std::string_view key, std::string_view value) {
  try {
    if (key == "radius") c.radius = parse_double(value);
    else if (key == "truncation") c.truncation = parse_double(value);
    else if (key == "nr") c.orders.n_r = detail::parse_positive_int<int>(value);
    else if (key == "ntheta") c.orders.n_theta = detail::parse_positive_int<int>(value);
    else if (key == "nphi") c.orders.n_phi = detail::parse_positive_int<int>(value);
    else if (key == "tol_res") c.tol_res = parse_double(value);
    else if (key == "tol_compat") c.tol_compat = parse_double(value);
    else if (key == "seed") c.seed = detail::parse_positive_int<std::uint64_t>(value);
    else throw ConfigError("unknown config key '" + std::string(key) + "'");
  } catch (const FieldFormatError& e) {
    throw ConfigError("config key '" + std::string(key) + "': " + e.what());
  }
}

inline RunConfig parse_config(std::istream& in, RunConfig base = {}) {
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view s = line;
    if (const auto hash = s.find('#'); hash != std::string_view::npos) s = s.substr(0, hash);
    s = detail::trim(s);
    if (s.empty()) continue;
    const auto eq = s.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
    std::string_view value = detail::trim(s.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
    try {
      set_config_value(base, detail::trim(s.substr(0, eq)), value);
    } catch (const ConfigError& e) {
      throw ConfigError("config line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  validate(base);
  return base;
}

inline RunConfig read_config(const std::string& path, RunConfig base = {}) {
  std::istringstream in(read_text(path));
  return parse_config(in, base);
}

inline std::string config_to_string(const RunConfig& c) {
  std::string out;
  out += "radius = " + format_double(c.radius) + "\n";
  out += "truncation = " + format_double(c.truncation) + "\n";
  out += "nr = " + std::to_string(c.orders.n_r) + "\n";
  out += "ntheta = " + std::to_string(c.orders.n_theta) + "\n";
  out += "nphi = " + std::to_string(c.orders.n_phi) + "\n";
  out += "tol_res = " + format_double(c.tol_res) + "\n";
  out += "tol_compat = " + format_double(c.tol_compat) + "\n";
  out += "seed = " + std::to_string(c.seed) + "\n";
  return out;
}

}  // namespace ballspec
