#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>

#include "kpwave/analytic.hpp"
#include "kpwave/config.hpp"
#include "kpwave/material.hpp"
#include "kpwave/snapshot_io.hpp"
#include "kpwave/solver.hpp"
#include "kpwave/transforms.hpp"
#include "kpwave/validation/acceptance.hpp"

namespace kpwave::cli {

namespace {

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// ---------------------------------------------------------------- solve

struct SolveArgs {
  std::string config;
  std::string out_dir;
  std::string format;
};

int cmd_solve(const SolveArgs& a, std::ostream& out, std::ostream& err) {
  SimulationConfig cfg = load_config(a.config);
  if (!a.out_dir.empty()) cfg.output_dir = a.out_dir;
  if (!a.format.empty()) cfg.format = parse_snapshot_format(a.format);
  for (const auto& w : cfg.warnings) err << "warning: " << w << '\n';

  const SolverConfig sc = to_solver_config(cfg);
  std::filesystem::create_directories(cfg.output_dir);
  const std::filesystem::path dir(cfg.output_dir);
  auto save = [&](const Snapshot& s) {
    const auto path = (dir / snapshot_file_name(s, cfg.format)).string();
    write_snapshot(s, path, cfg.format);
    out << "wrote " << path << " (t = " << g17(s.sim_time) << ")\n";
  };

  out << "equation " << sc.spec.tag() << ", grid " << cfg.nx << "x" << cfg.ny << ", "
      << step_count(sc.t_end, sc.dt) << " steps, config " << cfg.digest << '\n';
  try {
    const RunResult r = run(sc, sample_initial(cfg, sc.grid));
    for (const auto& s : r.snapshots) save(s);
    write_diagnostics_csv(r.series, (dir / "diagnostics.csv").string());
    if (r.clamped_factors) {
      err << "note: " << r.clamped_factors << " overflowing stage factors were clamped to 0\n";
    }
    const auto& last = r.series.back();
    out << "done: " << r.steps << " steps, final mean " << g17(last.mean) << ", L2 "
        << g17(last.l2_norm) << '\n';
    return kSuccess;
  } catch (const InstabilityError& e) {
    err << "instability: " << e.what() << '\n';
    Snapshot last = e.last_finite();
    const auto path =
        (dir / ("last_finite_" + snapshot_file_name(last, cfg.format))).string();
    write_snapshot(last, path, cfg.format);
    err << "last finite state (t = " << g17(last.sim_time) << ") written to " << path << '\n';
    return kInstability;
  }
}

// ---------------------------------------------------------------- params

struct ParamsArgs {
  std::string equation;
  std::optional<double> lambda, alpha1, alpha2, gamma0, gamma1, gamma2, a, d;
  double mu = 1.0;
  double rho0 = 1.0;
  std::optional<double> nu0, nu, length, epsilon;
};

int cmd_params(const ParamsArgs& a, std::ostream& out, std::ostream& err) {
  EquationKind kind;
  if (!a.equation.empty()) {
    kind = parse_equation_kind(a.equation);
  } else if (a.a || a.d) {
    kind = EquationKind::cubic;
  } else if (a.lambda) {
    kind = EquationKind::quadratic;
  } else {
    err << "params: give --equation, or --lambda (compressible) or --A/--D (incompressible)\n";
    return kUsageError;
  }
  if (a.nu0 && (a.nu || a.length)) throw ConfigError("give either --nu0 or --nu with --length");
  if (!a.nu0 && !(a.nu && a.length)) throw ConfigError("give --nu0, or --nu with --length");
  double epsilon = 0.01;
  if (a.epsilon) {
    epsilon = *a.epsilon;
  } else if (a.nu) {
    err << "warning: --epsilon not set; using 0.01\n";
  }

  EquationSpec spec;
  if (kind == EquationKind::quadratic) {
    if (a.a || a.d) throw ConfigError("--A/--D apply to the cubic (incompressible) case");
    if (!a.lambda) throw ConfigError("the quadratic case needs --lambda");
    TaylorConstants t{a.alpha1.value_or(0.0), a.alpha2.value_or(0.0), a.gamma0.value_or(a.mu),
                      a.gamma1.value_or(0.0), a.gamma2.value_or(0.0)};
    const auto m = a.nu0 ? MaterialCompressible(*a.lambda, a.mu, a.rho0, t, *a.nu0)
                         : MaterialCompressible::with_physical_dispersion(
                               *a.lambda, a.mu, a.rho0, t, *a.nu, *a.length, epsilon);
    const WaveSpeeds w = wave_speeds(m);
    const double beta = beta_quadratic(m);
    out << "c_ell = " << g17(w.c_ell) << '\n'
        << "c_t = " << g17(w.c_t) << '\n'
        << "identity_residual = " << g17(w.identity_residual) << '\n'
        << "beta = " << g17(beta) << '\n';
    spec = equation_spec(kind, beta, m.nu0());
  } else {
    if (a.lambda || a.alpha1 || a.alpha2 || a.gamma0 || a.gamma1 || a.gamma2) {
      throw ConfigError("Taylor constants apply to the quadratic (compressible) case");
    }
    const double ca = a.a.value_or(0.0);
    const double cd = a.d.value_or(0.0);
    const auto m = a.nu0 ? MaterialIncompressible(a.mu, a.rho0, ca, cd, *a.nu0)
                         : MaterialIncompressible::with_physical_dispersion(
                               a.mu, a.rho0, ca, cd, *a.nu, *a.length, epsilon);
    const double beta3 = beta3_landau(m);
    out << "c_t = " << g17(shear_speed(m)) << '\n' << "beta3 = " << g17(beta3) << '\n';
    spec = equation_spec(kind, beta3, m.nu0());
  }
  const CanonicalScaling s = scale_factors(spec);
  out << "branch = " << to_string(spec.branch) << '\n'
      << "nu0 = " << g17(spec.nu0) << '\n'
      << "s_t = " << g17(s.s_t) << '\n'
      << "s_x = " << g17(s.s_x) << '\n'
      << "s_y = " << g17(s.s_y) << '\n';
  return kSuccess;
}

// ---------------------------------------------------------------- soliton

struct SolitonArgs {
  std::string equation;
  double kappa = 1.0;
  double theta = 0.0;
  double x0 = 0.0;
  std::string branch = "plus";
  std::optional<double> t;
  double y = 0.0;
  double x_min = -4 * std::numbers::pi;
  double x_max = 4 * std::numbers::pi;
  std::size_t samples = 65;
};

int cmd_soliton(const SolitonArgs& a, std::ostream& out, std::ostream&) {
  const SolitonParams p(parse_equation_kind(a.equation), a.kappa, a.theta, a.x0,
                        parse_sign_branch(a.branch));
  out << "speed = " << g17(p.speed()) << '\n';
  if (!a.t) return kSuccess;
  if (a.samples < 2 || !(a.x_max > a.x_min)) throw ConfigError("need --n >= 2 and xmax > xmin");
  out << "x,value\n";
  for (std::size_t i = 0; i < a.samples; ++i) {
    const double x =
        a.x_min + (a.x_max - a.x_min) * static_cast<double>(i) / static_cast<double>(a.samples - 1);
    out << g17(x) << ',' << g17(line_soliton(p, *a.t, x, a.y)) << '\n';
  }
  return kSuccess;
}

// ---------------------------------------------------------------- shock

struct ShockArgs {
  std::string equation;
  double coeff = 0.0;
  std::string profile;
  double period = 2 * std::numbers::pi;
};

std::vector<double> read_profile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open profile '" + path + "'");
  std::vector<double> v;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream is(line);
    std::string tok;
    while (is >> tok) {
      try {
        std::size_t used = 0;
        const double x = std::stod(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        v.push_back(x);
      } catch (const std::exception&) {
        throw InputError("profile line " + std::to_string(line_no) + ": bad number '" + tok + "'");
      }
    }
  }
  return v;
}

int cmd_shock(const ShockArgs& a, std::ostream& out, std::ostream&) {
  const auto profile = read_profile(a.profile);
  const auto chi = shock_distance(profile, a.period, parse_equation_kind(a.equation), a.coeff);
  if (chi) {
    out << "shock distance = " << g17(*chi) << '\n';
  } else {
    out << "no shock\n";
  }
  return kSuccess;
}

// ---------------------------------------------------------------- validate

int cmd_validate(bool fast, const std::string& from, std::ostream& out) {
  validation::AcceptanceOptions opt;
  opt.fast = fast;
  opt.from_dir = from;
  opt.on_result = [&](const validation::CriterionResult& r) {
    out << validation::format_result(r) << '\n' << std::flush;
  };
  const auto results = validation::run_acceptance(opt);
  std::size_t pass = 0, fail = 0, skip = 0;
  for (const auto& r : results) {
    (r.status == validation::Status::pass ? pass : r.status == validation::Status::fail ? fail : skip)++;
  }
  out << pass << " passed, " << fail << " failed, " << skip << " skipped\n";
  return fail == 0 ? kSuccess : kValidationFailure;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Canonical KP equations: material coefficients, spectral solver, validation", "kpwave"};
  app.require_subcommand(1);

  SolveArgs solve_args;
  auto* solve = app.add_subcommand("solve", "Integrate a configured problem and write snapshots");
  solve->add_option("--config", solve_args.config, "Configuration file")->required();
  solve->add_option("--out", solve_args.out_dir, "Output directory (overrides the config)");
  solve->add_option("--format", solve_args.format, "Snapshot format")
      ->check(CLI::IsMember({"csv", "f64le"}));

  ParamsArgs pa;
  auto* params = app.add_subcommand("params", "Wave speeds, nonlinearity coefficient, branch and scalings");
  params->add_option("--equation", pa.equation, "quad|cubic (inferred from the flags if absent)");
  params->add_option("--lambda", pa.lambda, "First Lame constant (compressible)");
  params->add_option("--mu", pa.mu, "Shear modulus")->capture_default_str();
  params->add_option("--rho0", pa.rho0, "Density")->capture_default_str();
  params->add_option("--alpha1", pa.alpha1);
  params->add_option("--alpha2", pa.alpha2);
  params->add_option("--gamma0", pa.gamma0, "Defaults to mu");
  params->add_option("--gamma1", pa.gamma1);
  params->add_option("--gamma2", pa.gamma2);
  params->add_option("--A", pa.a, "Third-order Landau constant (incompressible)");
  params->add_option("--D", pa.d, "Fourth-order Landau constant (incompressible)");
  params->add_option("--nu0", pa.nu0, "Dimensionless dispersion");
  params->add_option("--nu", pa.nu, "Physical dispersion parameter");
  params->add_option("--length", pa.length, "Length scale L");
  params->add_option("--epsilon", pa.epsilon, "Small parameter (default 0.01)");

  SolitonArgs sa;
  auto* soliton = app.add_subcommand("soliton", "Line-soliton speed and optional profile samples");
  soliton->add_option("--equation", sa.equation, "quad|cubic")->required();
  soliton->add_option("--kappa", sa.kappa)->capture_default_str();
  soliton->add_option("--theta", sa.theta)->capture_default_str();
  soliton->add_option("--x0", sa.x0)->capture_default_str();
  soliton->add_option("--branch", sa.branch)->capture_default_str();
  soliton->add_option("--t", sa.t, "Print samples along a line y = const at this time");
  soliton->add_option("--y", sa.y)->capture_default_str();
  soliton->add_option("--xmin", sa.x_min)->capture_default_str();
  soliton->add_option("--xmax", sa.x_max)->capture_default_str();
  soliton->add_option("--n", sa.samples, "Number of samples")->capture_default_str();

  ShockArgs sh;
  auto* shock = app.add_subcommand("shock", "Shock-formation distance of the dispersionless reduction");
  shock->add_option("--equation", sh.equation, "quad|cubic")->required();
  shock->add_option("--coeff", sh.coeff, "beta or beta3")->required();
  shock->add_option("--profile", sh.profile, "File with samples of one period (whitespace or comma separated, # comments)")
      ->required();
  shock->add_option("--period", sh.period, "Profile period")->capture_default_str();

  bool fast = false;
  std::string from;
  auto* validate = app.add_subcommand("validate", "Run the acceptance suite");
  validate->add_flag("--fast", fast, "Skip the two long soliton runs unless --from provides them");
  validate->add_option("--from", from, "Directory with snapshots written by solve");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsageError;
  }

  try {
    if (*solve) return cmd_solve(solve_args, out, err);
    if (*params) return cmd_params(pa, out, err);
    if (*soliton) return cmd_soliton(sa, out, err);
    if (*shock) return cmd_shock(sh, out, err);
    if (*validate) return cmd_validate(fast, from, out);
  } catch (const ConfigParseError& e) {
    err << "configuration error:\n";
    for (const auto& i : e.issues()) {
      err << "  " << (i.line ? "line " + std::to_string(i.line) + ": " : std::string()) << i.message
          << '\n';
    }
    return kUsageError;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kValidationFailure;
  }
  return kUsageError;
}

}  // namespace kpwave::cli
