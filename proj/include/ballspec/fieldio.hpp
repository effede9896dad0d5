#pragma once

// File formats: sampled fields (CSV, JSON envelope), coefficient files and zero tables (JSON,
// "version": 1), mode metadata (JSON) and legacy-VTK structured points for visualization.
// Writers are deterministic: fixed field order and shortest round-trip float formatting.

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include <json.hpp>

#include "ballspec/ballquad.hpp"
#include "ballspec/eigenbasis.hpp"
#include "ballspec/geometry.hpp"
#include "ballspec/spectral.hpp"
#include "ballspec/specfun.hpp"

namespace ballspec {

class FieldFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kFormatVersion = 1;

/// Shortest decimal string that parses back to exactly the same double.
inline std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

inline double parse_double(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw FieldFormatError("malformed number '" + std::string(s) + "'");
  if (!std::isfinite(v)) throw FieldFormatError("non-finite value '" + std::string(s) + "'");
  return v;
}

// ---------------------------------------------------------------------------
// Sampled fields

struct SampledField {
  double radius = 1.0;
  std::vector<Vec3> points;
  std::vector<Vec3> values;
  std::map<std::string, std::string> metadata;
};

inline void validate(const SampledField& f) {
  if (!(f.radius > 0.0)) throw FieldFormatError("field radius must be positive");
  if (f.points.size() != f.values.size()) throw FieldFormatError("points and values differ in length");
  for (std::size_t i = 0; i < f.points.size(); ++i) {
    const Vec3& p = f.points[i];
    const Vec3& v = f.values[i];
    for (double c : {p.x, p.y, p.z, v.x, v.y, v.z})
      if (!std::isfinite(c)) throw FieldFormatError("non-finite entry at point " + std::to_string(i));
    if (norm(p) > f.radius * (1.0 + 1e-12))
      throw FieldFormatError("point " + std::to_string(i) + " (" + format_double(p.x) + ", " +
                             format_double(p.y) + ", " + format_double(p.z) + ") lies outside the ball");
  }
}

inline constexpr std::string_view kFieldCsvHeader = "x,y,z,vx,vy,vz";

inline std::string field_to_csv(const SampledField& f) {
  std::string out(kFieldCsvHeader);
  out += '\n';
  for (std::size_t i = 0; i < f.points.size(); ++i) {
    const Vec3& p = f.points[i];
    const Vec3& v = f.values[i];
    out += format_double(p.x) + ',' + format_double(p.y) + ',' + format_double(p.z) + ',' +
           format_double(v.x) + ',' + format_double(v.y) + ',' + format_double(v.z) + '\n';
  }
  return out;
}

/// CSV has no radius column; the caller supplies it.
inline SampledField field_from_csv(std::istream& in, double radius) {
  SampledField f;
  f.radius = radius;
  std::string line;
  std::size_t line_no = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (!header) {
      if (line != kFieldCsvHeader)
        throw FieldFormatError("line " + std::to_string(line_no) + ": expected header '" +
                               std::string(kFieldCsvHeader) + "'");
      header = true;
      continue;
    }
    std::vector<double> cols;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = line.find(',', start);
      const std::string_view cell = std::string_view(line).substr(start, comma == std::string::npos ? std::string::npos : comma - start);
      try {
        cols.push_back(parse_double(cell));
      } catch (const FieldFormatError& e) {
        throw FieldFormatError("line " + std::to_string(line_no) + ": " + e.what());
      }
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (cols.size() != 6)
      throw FieldFormatError("line " + std::to_string(line_no) + ": expected 6 columns, got " +
                             std::to_string(cols.size()));
    f.points.push_back({cols[0], cols[1], cols[2]});
    f.values.push_back({cols[3], cols[4], cols[5]});
  }
  if (!header) throw FieldFormatError("empty field file");
  validate(f);
  return f;
}

inline nlohmann::ordered_json field_to_json(const SampledField& f) {
  nlohmann::ordered_json j;
  j["version"] = kFormatVersion;
  j["R"] = f.radius;
  auto& pts = j["points"] = nlohmann::ordered_json::array();
  auto& vals = j["values"] = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < f.points.size(); ++i) {
    pts.push_back({f.points[i].x, f.points[i].y, f.points[i].z});
    vals.push_back({f.values[i].x, f.values[i].y, f.values[i].z});
  }
  j["metadata"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : f.metadata) j["metadata"][k] = v;
  return j;
}

inline SampledField field_from_json(const nlohmann::json& j) {
  SampledField f;
  try {
    f.radius = j.at("R").get<double>();
    const auto read_vec = [](const nlohmann::json& a) {
      if (!a.is_array() || a.size() != 3) throw FieldFormatError("expected a 3-vector");
      return Vec3{a[0].get<double>(), a[1].get<double>(), a[2].get<double>()};
    };
    for (const auto& p : j.at("points")) f.points.push_back(read_vec(p));
    for (const auto& v : j.at("values")) f.values.push_back(read_vec(v));
    if (j.contains("metadata"))
      for (const auto& [k, v] : j.at("metadata").items()) f.metadata[k] = v.is_string() ? v.get<std::string>() : v.dump();
  } catch (const nlohmann::json::exception& e) {
    throw FieldFormatError(std::string("field JSON: ") + e.what());
  }
  validate(f);
  return f;
}

inline std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

inline bool has_suffix(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

/// Reads CSV (radius from `radius`) or, for *.json paths, the JSON envelope.
inline SampledField read_field(const std::string& path, double radius = 1.0) {
  if (has_suffix(path, ".json")) {
    try {
      return field_from_json(nlohmann::json::parse(read_text(path)));
    } catch (const nlohmann::json::parse_error& e) {
      throw FieldFormatError("field JSON: " + std::string(e.what()));
    }
  }
  std::istringstream in(read_text(path));
  return field_from_csv(in, radius);
}

inline void write_field(const SampledField& f, const std::string& path) {
  validate(f);
  write_text(path, has_suffix(path, ".json") ? field_to_json(f).dump(1) + "\n" : field_to_csv(f));
}

// ---------------------------------------------------------------------------
// Grids

enum class GridKind { CartesianBox, SphericalProduct };

/// CartesianBox: n1 x n2 x n3 lattice on [-R, R]^3, x fastest.
/// SphericalProduct: the BallQuadrature nodes with orders (n_r, n_theta, n_phi) = (n1, n2, n3).
struct GridSpec {
  GridKind kind = GridKind::CartesianBox;
  int n1 = 2;
  int n2 = 2;
  int n3 = 2;
  double radius = 1.0;
};

inline void validate(const GridSpec& g) {
  if (g.n1 < 1 || g.n2 < 1 || g.n3 < 1) throw std::invalid_argument("grid resolutions must be positive");
  if (!(g.radius > 0.0)) throw std::invalid_argument("grid radius must be positive");
}

inline double box_spacing(int n, double radius) { return n > 1 ? 2.0 * radius / (n - 1) : 1.0; }
inline double box_origin(int n, double radius) { return n > 1 ? -radius : 0.0; }

inline std::vector<Vec3> grid_points(const GridSpec& g) {
  validate(g);
  std::vector<Vec3> pts;
  if (g.kind == GridKind::CartesianBox) {
    const double hx = box_spacing(g.n1, g.radius), hy = box_spacing(g.n2, g.radius), hz = box_spacing(g.n3, g.radius);
    const double ox = box_origin(g.n1, g.radius), oy = box_origin(g.n2, g.radius), oz = box_origin(g.n3, g.radius);
    for (int k = 0; k < g.n3; ++k)
      for (int j = 0; j < g.n2; ++j)
        for (int i = 0; i < g.n1; ++i) pts.push_back({ox + i * hx, oy + j * hy, oz + k * hz});
    return pts;
  }
  const BallQuadrature q(g.radius, {g.n1, g.n2, g.n3});
  for (std::size_t i = 0; i < q.size(); ++i) pts.push_back(q.node(i).x);
  return pts;
}

/// Samples a Cartesian evaluator on a grid. Box points outside the ball are dropped.
template <class F>
SampledField sample_field(const GridSpec& g, F&& f) {
  SampledField out;
  out.radius = g.radius;
  for (const Vec3& p : grid_points(g)) {
    if (norm(p) > g.radius) continue;
    out.points.push_back(p);
    out.values.push_back(f(p));
  }
  if (g.kind == GridKind::SphericalProduct) {
    out.metadata["grid"] = "spherical";
    out.metadata["nr"] = std::to_string(g.n1);
    out.metadata["ntheta"] = std::to_string(g.n2);
    out.metadata["nphi"] = std::to_string(g.n3);
  }
  return out;
}

/// Node samples (local spherical components) of a field given on a SphericalProduct grid that
/// matches q point for point.
inline std::vector<SphericalVec> field_on_quadrature(const SampledField& f, const BallQuadrature& q) {
  if (f.points.size() != q.size())
    throw FieldFormatError("field has " + std::to_string(f.points.size()) + " points; quadrature (" +
                           std::to_string(q.orders().n_r) + ", " + std::to_string(q.orders().n_theta) + ", " +
                           std::to_string(q.orders().n_phi) + ") needs " + std::to_string(q.size()));
  std::vector<SphericalVec> out(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) {
    const BallNode nd = q.node(i);
    if (norm(nd.x - f.points[i]) > 1e-9 * q.radius())
      throw FieldFormatError("field point " + std::to_string(i) + " does not match the quadrature node");
    out[i] = to_spherical(f.values[i], nd.point.theta, nd.point.phi);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Coefficient files

inline nlohmann::ordered_json coefficients_to_json(const SpectralCoefficients& c) {
  nlohmann::ordered_json j;
  j["version"] = kFormatVersion;
  j["R"] = c.radius;
  j["N"] = c.cutoff;
  j["quadrature"] = {{"nr", c.orders.n_r}, {"ntheta", c.orders.n_theta}, {"nphi", c.orders.n_phi}};
  auto& entries = j["entries"] = nlohmann::ordered_json::array();
  for (const auto& [idx, coef] : c.entries)
    entries.push_back({{"family", std::string(to_string(idx.family))},
                       {"n", idx.n},
                       {"m", idx.m},
                       {"k", idx.k},
                       {"value", coef.value}});
  return j;
}

/// Frequencies are recomputed from the zero tables.
inline SpectralCoefficients coefficients_from_json(const nlohmann::json& j) {
  SpectralCoefficients c;
  ZeroTable rho(ZeroFamily::Psi), alpha(ZeroFamily::PsiPrime);
  try {
    if (j.at("version").get<int>() != kFormatVersion) throw FieldFormatError("unsupported coefficient file version");
    c.radius = j.at("R").get<double>();
    if (!(c.radius > 0.0)) throw FieldFormatError("coefficient file: R must be positive");
    c.cutoff = j.at("N").get<double>();
    const auto& q = j.at("quadrature");
    c.orders = {q.at("nr").get<int>(), q.at("ntheta").get<int>(), q.at("nphi").get<int>()};
    for (const auto& e : j.at("entries")) {
      ModeIndex idx{family_from_string(e.at("family").get<std::string>()), e.at("n").get<int>(),
                    e.at("m").get<int>(), e.at("k").get<int>()};
      validate(idx);
      const double v = e.at("value").get<double>();
      if (!std::isfinite(v)) throw FieldFormatError("coefficient file: non-finite value");
      const double z = idx.family == Family::GradDiv ? alpha.zero(idx.n, idx.m) : rho.zero(idx.n, idx.m);
      c.entries[idx] = {v, z / c.radius};
    }
  } catch (const nlohmann::json::exception& e) {
    throw FieldFormatError(std::string("coefficient JSON: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw FieldFormatError(std::string("coefficient JSON: ") + e.what());
  }
  return c;
}

inline void write_coefficients(const SpectralCoefficients& c, const std::string& path) {
  write_text(path, coefficients_to_json(c).dump(1) + "\n");
}

inline SpectralCoefficients read_coefficients(const std::string& path) {
  try {
    return coefficients_from_json(nlohmann::json::parse(read_text(path)));
  } catch (const nlohmann::json::parse_error& e) {
    throw FieldFormatError("coefficient JSON: " + std::string(e.what()));
  }
}

// ---------------------------------------------------------------------------
// Zero tables and mode metadata

inline std::string_view to_string(ZeroFamily f) { return f == ZeroFamily::Psi ? "psi" : "psi_prime"; }

inline ZeroFamily zero_family_from_string(std::string_view s) {
  if (s == "psi") return ZeroFamily::Psi;
  if (s == "psi_prime" || s == "psi-prime") return ZeroFamily::PsiPrime;
  throw std::invalid_argument("unknown zero family '" + std::string(s) + "'");
}

inline nlohmann::ordered_json zero_table_to_json(const ZeroTable& t) {
  nlohmann::ordered_json j;
  j["version"] = kFormatVersion;
  j["family"] = std::string(to_string(t.family()));
  auto& entries = j["entries"] = nlohmann::ordered_json::array();
  for (const auto& [n, row] : t.entries())
    for (std::size_t m = 0; m < row.size(); ++m) entries.push_back({{"n", n}, {"m", m + 1}, {"z", row[m]}});
  return j;
}

inline ZeroTable zero_table_from_json(const nlohmann::json& j) {
  try {
    if (j.at("version").get<int>() != kFormatVersion) throw FieldFormatError("unsupported zero table version");
    ZeroTable t(zero_family_from_string(j.at("family").get<std::string>()));
    std::map<int, std::map<int, double>> rows;
    for (const auto& e : j.at("entries")) rows[e.at("n").get<int>()][e.at("m").get<int>()] = e.at("z").get<double>();
    for (auto& [n, row] : rows) {
      std::vector<double> zs;
      int expect = 1;
      for (const auto& [m, z] : row) {
        if (m != expect++) throw FieldFormatError("zero table: missing m for n = " + std::to_string(n));
        zs.push_back(z);
      }
      t.adopt(n, std::move(zs));
    }
    return t;
  } catch (const nlohmann::json::exception& e) {
    throw FieldFormatError(std::string("zero table JSON: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw FieldFormatError(std::string("zero table JSON: ") + e.what());
  }
}

inline nlohmann::ordered_json mode_to_json(const VectorMode& m) {
  nlohmann::ordered_json j;
  j["version"] = kFormatVersion;
  j["index"] = {{"family", std::string(to_string(m.index().family))},
                {"n", m.index().n},
                {"m", m.index().m},
                {"k", m.index().k}};
  j["eigenvalue"] = m.eigenvalue();
  j["c"] = m.normalization();
  j["R"] = m.radius();
  return j;
}

// ---------------------------------------------------------------------------
// Legacy VTK

/// ASCII STRUCTURED_POINTS with a VECTORS attribute and an inside-ball mask. Points outside the
/// ball carry zero vectors.
template <class F>
std::string vtk_structured_points(const GridSpec& g, F&& f, std::string_view title = "ballspec field") {
  validate(g);
  if (g.kind != GridKind::CartesianBox) throw std::invalid_argument("VTK export requires a CartesianBox grid");
  const std::vector<Vec3> pts = grid_points(g);
  std::string out = "# vtk DataFile Version 3.0\n";
  out += std::string(title) + "\nASCII\nDATASET STRUCTURED_POINTS\n";
  out += "DIMENSIONS " + std::to_string(g.n1) + ' ' + std::to_string(g.n2) + ' ' + std::to_string(g.n3) + '\n';
  out += "ORIGIN " + format_double(box_origin(g.n1, g.radius)) + ' ' + format_double(box_origin(g.n2, g.radius)) +
         ' ' + format_double(box_origin(g.n3, g.radius)) + '\n';
  out += "SPACING " + format_double(box_spacing(g.n1, g.radius)) + ' ' +
         format_double(box_spacing(g.n2, g.radius)) + ' ' + format_double(box_spacing(g.n3, g.radius)) + '\n';
  out += "POINT_DATA " + std::to_string(pts.size()) + '\n';
  out += "VECTORS field double\n";
  std::vector<int> mask;
  mask.reserve(pts.size());
  for (const Vec3& p : pts) {
    const bool inside = norm(p) <= g.radius;
    mask.push_back(inside ? 1 : 0);
    const Vec3 v = inside ? f(p) : Vec3{};
    out += format_double(v.x) + ' ' + format_double(v.y) + ' ' + format_double(v.z) + '\n';
  }
  out += "SCALARS inside_ball int 1\nLOOKUP_TABLE default\n";
  for (int m : mask) out += m ? "1\n" : "0\n";
  return out;
}

template <class F>
void export_vtk(const GridSpec& g, F&& f, const std::string& path) {
  write_text(path, vtk_structured_points(g, f));
}

}  // namespace ballspec
