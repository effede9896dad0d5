// ballspec command-line front end: zero tables, mode evaluation, decomposition, resolvents and
// streamline tracing. Thin orchestration over the library headers.
//
// Exit status: 0 ok, 2 resonant but compatible, 3 incompatible data, 1 any other error.

#include <exception>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ballspec/ballspec.hpp"

namespace {

using namespace ballspec;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitResonant = 2;
constexpr int kExitIncompatible = 3;

struct GlobalFlags {
  std::string config_path;
  double radius = 1.0;
  double truncation = 10.0;
  int nr = 64;
  int ntheta = 64;
  int nphi = 128;
  std::string out;
  CLI::Option* radius_opt = nullptr;
  CLI::Option* truncation_opt = nullptr;
  CLI::Option* nr_opt = nullptr;
  CLI::Option* ntheta_opt = nullptr;
  CLI::Option* nphi_opt = nullptr;

  /// Defaults, then the config file, then explicit flags.
  RunConfig resolve() const {
    RunConfig c;
    if (!config_path.empty()) c = read_config(config_path, c);
    if (radius_opt->count()) c.radius = radius;
    if (truncation_opt->count()) c.truncation = truncation;
    if (nr_opt->count()) c.orders.n_r = nr;
    if (ntheta_opt->count()) c.orders.n_theta = ntheta;
    if (nphi_opt->count()) c.orders.n_phi = nphi;
    validate(c);
    return c;
  }
};

void emit(const GlobalFlags& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
    std::cout.flush();
  } else {
    write_text(g.out, text);
  }
}

struct ModeFlags {
  std::string family;
  int n = 1;
  int m = 1;
  int k = 0;

  void add(CLI::App* app, bool required) {
    auto* f = app->add_option("--family", family, "Mode family: graddiv | curl_plus | curl_minus");
    if (required) f->required();
    app->add_option("--n", n, "Angular degree n (>= 0 for graddiv, >= 1 for curl)")->capture_default_str();
    app->add_option("--m", m, "Radial index m (>= 1)")->capture_default_str();
    app->add_option("--k", k, "Azimuthal order k, |k| <= n")->capture_default_str();
  }

  ModeIndex index() const {
    ModeIndex idx{family_from_string(family), n, m, k};
    validate(idx);
    return idx;
  }
};

// ---------------------------------------------------------------------------

struct ZerosCommand {
  std::string family;
  int n_max = 0;
  int m_max = 1;
  std::string format = "tsv";

  void add(CLI::App& app) {
    CLI::App* sub = app.add_subcommand("zeros", "Tabulate positive zeros of psi_n or psi_n'");
    sub->add_option("--family", family, "psi | psi-prime")->required()->check(CLI::IsMember({"psi", "psi-prime", "psi_prime"}));
    sub->add_option("--n", n_max, "Largest degree n (rows for 0..n)")->required()->check(CLI::NonNegativeNumber);
    sub->add_option("--m", m_max, "Number of zeros per degree")->required()->check(CLI::PositiveNumber);
    sub->add_option("--format", format, "tsv (n, m, z) or json zero table")
        ->capture_default_str()
        ->check(CLI::IsMember({"tsv", "json"}));
  }

  int run(const GlobalFlags& g) const {
    (void)g.resolve();
    ZeroTable table(zero_family_from_string(family));
    table.build(n_max, m_max);
    if (format == "json") {
      emit(g, zero_table_to_json(table).dump(1) + "\n");
      return kExitOk;
    }
    // Shortest round-trip digits: at least 15 significant digits, and lossless.
    std::string text;
    for (int n = 0; n <= n_max; ++n)
      for (int m = 1; m <= m_max; ++m)
        text += std::to_string(n) + '\t' + std::to_string(m) + '\t' + format_double(table.zero(n, m)) + '\n';
    emit(g, text);
    return kExitOk;
  }
};

struct ModeCommand {
  ModeFlags info_mode;
  ModeFlags eval_mode;
  std::string grid = "box";
  std::vector<int> res;
  std::string format;
  CLI::App* info = nullptr;
  CLI::App* eval = nullptr;

  void add(CLI::App& app) {
    CLI::App* sub = app.add_subcommand("mode", "Inspect or sample a single eigenfield");
    sub->require_subcommand(1);
    info = sub->add_subcommand("info", "Print mode metadata (index, eigenvalue, c, R) as JSON");
    info_mode.add(info, true);
    eval = sub->add_subcommand("eval", "Sample a mode on a grid and write CSV, JSON or legacy VTK");
    eval_mode.add(eval, true);
    eval->add_option("--grid", grid, "box (Cartesian lattice on [-R,R]^3) or spherical (quadrature nodes)")
        ->capture_default_str()
        ->check(CLI::IsMember({"box", "spherical"}));
    eval->add_option("--res", res, "Grid resolution n1,n2,n3 (box default 16,16,16; spherical default nr,ntheta,nphi)")
        ->expected(3)
        ->delimiter(',')
        ->check(CLI::PositiveNumber);
    eval->add_option("--format", format, "csv | json | vtk (default: from the --out suffix, else csv)")
        ->check(CLI::IsMember({"csv", "json", "vtk"}));
  }

  int run(const GlobalFlags& g) const {
    const RunConfig cfg = g.resolve();
    EigenBasis basis(cfg.radius, cfg.orders);
    if (*info) {
      emit(g, mode_to_json(basis.mode(info_mode.index())).dump(1) + "\n");
      return kExitOk;
    }
    const VectorMode& mode = basis.mode(eval_mode.index());
    GridSpec spec;
    spec.radius = cfg.radius;
    spec.kind = grid == "box" ? GridKind::CartesianBox : GridKind::SphericalProduct;
    if (res.size() == 3) {
      spec.n1 = res[0];
      spec.n2 = res[1];
      spec.n3 = res[2];
    } else if (spec.kind == GridKind::CartesianBox) {
      spec.n1 = spec.n2 = spec.n3 = 16;
    } else {
      spec.n1 = cfg.orders.n_r;
      spec.n2 = cfg.orders.n_theta;
      spec.n3 = cfg.orders.n_phi;
    }
    std::string fmt = format;
    if (fmt.empty()) fmt = has_suffix(g.out, ".vtk") ? "vtk" : has_suffix(g.out, ".json") ? "json" : "csv";
    if (fmt == "vtk") {
      emit(g, vtk_structured_points(spec, mode, to_string(mode.index())));
      return kExitOk;
    }
    SampledField field = sample_field(spec, mode);
    field.metadata["mode"] = to_string(mode.index());
    emit(g, fmt == "json" ? field_to_json(field).dump(1) + "\n" : field_to_csv(field));
    return kExitOk;
  }
};

struct DecomposeCommand {
  std::string input;
  std::string coeffs_out;

  void add(CLI::App& app) {
    CLI::App* sub = app.add_subcommand(
        "decompose", "Project a field sampled at the quadrature nodes onto the eigenbasis");
    sub->add_option("--input", input, "Field file (CSV x,y,z,vx,vy,vz or JSON envelope)")->required();
    sub->add_option("--coeffs", coeffs_out, "Write the coefficient JSON to this path");
  }

  int run(const GlobalFlags& g) const {
    RunConfig cfg = g.resolve();
    const SampledField field = read_field(input, cfg.radius);
    cfg.radius = field.radius;
    const auto order = [&](const char* key, int fallback) {
      const auto it = field.metadata.find(key);
      return it == field.metadata.end() ? fallback : std::stoi(it->second);
    };
    if (!g.nr_opt->count()) cfg.orders.n_r = order("nr", cfg.orders.n_r);
    if (!g.ntheta_opt->count()) cfg.orders.n_theta = order("ntheta", cfg.orders.n_theta);
    if (!g.nphi_opt->count()) cfg.orders.n_phi = order("nphi", cfg.orders.n_phi);
    validate(cfg);

    EigenBasis basis(cfg.radius, cfg.orders);
    const std::vector<SphericalVec> samples = field_on_quadrature(field, basis.quadrature());
    const SpectralCoefficients c = analyze_samples(samples, basis.lattice(cfg.truncation), basis, cfg.truncation);
    const auto [potential, solenoidal] = split(c);
    if (!coeffs_out.empty()) write_coefficients(c, coeffs_out);

    const double f2 = quadrature_norm2(samples, basis.quadrature());
    const double c2 = c.norm2();
    std::string text;
    text += "modes\t" + std::to_string(c.entries.size()) + "\n";
    text += "norm2_field\t" + format_double(f2) + "\n";
    text += "norm2_coefficients\t" + format_double(c2) + "\n";
    text += "norm2_potential\t" + format_double(potential.norm2()) + "\n";
    text += "norm2_solenoidal\t" + format_double(solenoidal.norm2()) + "\n";
    text += "parseval_defect\t" + format_double(f2 - c2) + "\n";
    text += "sobolev_s1\t" + format_double(sobolev_diagnostic(c, 1)) + "\n";
    text += "sobolev_s2\t" + format_double(sobolev_diagnostic(c, 2)) + "\n";
    emit(g, text);
    return kExitOk;
  }
};

struct SolveCommand {
  std::string op;
  double lambda = 0.0;
  std::string input;

  void add(CLI::App& app) {
    CLI::App* sub = app.add_subcommand(
        "solve", "Solve curl u + lambda u = f or grad div u + lambda u = f with n.u = 0 on the sphere");
    sub->add_option("--op", op, "curl | graddiv")->required()->check(CLI::IsMember({"curl", "graddiv"}));
    sub->add_option("--lambda", lambda, "Spectral parameter lambda (nonzero)")->required();
    sub->add_option("--input", input, "Coefficient JSON of the right-hand side f")->required();
  }

  int run(const GlobalFlags& g) const {
    const RunConfig cfg = g.resolve();
    const SpectralCoefficients f = read_coefficients(input);
    const ResolventReport rep =
        op == "curl" ? solve_curl(f, lambda, cfg.tolerances()) : solve_graddiv(f, lambda, cfg.tolerances());
    std::cerr << "status: " << rep.message() << "\n";
    if (rep.status == ResolventStatus::Incompatible) return kExitIncompatible;
    emit(g, coefficients_to_json(*rep.solution).dump(1) + "\n");
    return rep.status == ResolventStatus::ResonantCompatible ? kExitResonant : kExitOk;
  }
};

struct TraceCommand {
  ModeFlags mode;
  std::string coeffs;
  std::vector<double> x0;
  double h = 1e-3;
  double total = 1.0;
  std::size_t stride = 1;

  void add(CLI::App& app) {
    CLI::App* sub = app.add_subcommand("trace", "Integrate a streamline dx/dt = u(x) with fixed-step RK4");
    // --h is the step size here, so help is reachable only as --help.
    sub->set_help_flag("--help", "Print this help message and exit");
    mode.add(sub, false);
    sub->add_option("--coeffs", coeffs, "Trace the series given by a coefficient JSON instead of a single mode");
    sub->add_option("--x0", x0, "Seed point x,y,z inside the ball")->required()->expected(3)->delimiter(',');
    sub->add_option("--h", h, "Step size")->capture_default_str()->check(CLI::PositiveNumber);
    sub->add_option("--T", total, "Total integration time")->capture_default_str()->check(CLI::NonNegativeNumber);
    sub->add_option("--stride", stride, "Record every stride-th step")->capture_default_str()->check(CLI::PositiveNumber);
  }

  int run(const GlobalFlags& g) const {
    RunConfig cfg = g.resolve();
    TraceOptions opt;
    opt.step = h;
    opt.total_time = total;
    opt.stride = stride;
    const Vec3 seed{x0[0], x0[1], x0[2]};
    TraceResult result;
    if (!coeffs.empty()) {
      if (!mode.family.empty()) throw std::invalid_argument("trace: give either --family or --coeffs, not both");
      const SpectralCoefficients c = read_coefficients(coeffs);
      EigenBasis basis(c.radius, c.orders);
      const Series series(c, basis);
      opt.radius = c.radius;
      result = trace_streamline(series, seed, opt);
    } else {
      if (mode.family.empty()) throw std::invalid_argument("trace: --family or --coeffs is required");
      EigenBasis basis(cfg.radius, cfg.orders);
      opt.radius = cfg.radius;
      result = trace_streamline(basis.mode(mode.index()), seed, opt);
    }
    emit(g, polyline_to_csv(result));
    std::cerr << "steps: " << result.steps << "\tmax_radius: " << format_double(result.max_radius) << "\n";
    if (result.exited)
      std::cerr << "trajectory left the ball at t = " << format_double(result.polyline.back().t)
                << "; integration stopped\n";
    return kExitOk;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral theory of curl and grad div on a ball"};
  app.require_subcommand(1);
  GlobalFlags g;
  app.add_option("--config", g.config_path, "key = value config file")->check(CLI::ExistingFile);
  g.radius_opt = app.add_option("--radius", g.radius, "Ball radius R")->capture_default_str();
  g.truncation_opt =
      app.add_option("--truncation", g.truncation, "Cutoff N on the zeros rho, alpha")->capture_default_str();
  g.nr_opt = app.add_option("--nr", g.nr, "Radial quadrature order")->capture_default_str();
  g.ntheta_opt = app.add_option("--ntheta", g.ntheta, "Polar quadrature order")->capture_default_str();
  g.nphi_opt = app.add_option("--nphi", g.nphi, "Azimuthal quadrature order")->capture_default_str();
  app.add_option("--out", g.out, "Output path (default: standard output)");

  ZerosCommand zeros;
  ModeCommand mode;
  DecomposeCommand decompose;
  SolveCommand solve;
  TraceCommand trace;
  zeros.add(app);
  mode.add(app);
  decompose.add(app);
  solve.add(app);
  trace.add(app);
  for (CLI::App* sub : app.get_subcommands({})) {
    sub->fallthrough();
    for (CLI::App* leaf : sub->get_subcommands({})) leaf->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (app.got_subcommand("zeros")) return zeros.run(g);
    if (app.got_subcommand("mode")) return mode.run(g);
    if (app.got_subcommand("decompose")) return decompose.run(g);
    if (app.got_subcommand("solve")) return solve.run(g);
    if (app.got_subcommand("trace")) return trace.run(g);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
