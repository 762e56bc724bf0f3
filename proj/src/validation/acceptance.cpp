#include "kpwave/validation/acceptance.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <numbers>
#include <optional>
#include <random>

#include "kpwave/analytic.hpp"
#include "kpwave/material.hpp"
#include "kpwave/snapshot_io.hpp"
#include "kpwave/solver.hpp"
#include "kpwave/spectral.hpp"
#include "kpwave/transforms.hpp"
#include "kpwave/validation/oracles.hpp"

namespace kpwave::validation {

namespace {

constexpr double kPi = std::numbers::pi;

template <class... Args>
std::string fmt(const char* format, Args... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

CriterionResult verdict(std::string name, bool ok, std::string detail) {
  return {std::move(name), ok ? Status::pass : Status::fail, std::move(detail)};
}

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

bool all_finite(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

// ---------------------------------------------------------------------------
// Soliton propagation on the 256 x 256 grid over [-4 pi, 4 pi]^2, dt = 1e-4, t = 2.

constexpr double kPropagationTime = 2.0;

SolverConfig propagation_config(EquationKind kind) {
  SolverConfig c;
  c.spec = EquationSpec::canonical(kind, SignBranch::plus);
  c.grid = make_grid(256, 256, {-4 * kPi, 4 * kPi, -4 * kPi, 4 * kPi});
  c.dt = 1e-4;
  c.t_end = kPropagationTime;
  c.snapshot_times = {0.0, kPropagationTime};
  c.diagnostics_stride = 100;
  return c;
}

struct SolitonRun {
  Snapshot initial;
  Snapshot final;
  std::vector<Diagnostics> series;  // every stored record; only endpoints when read from files
  std::string source;
};

InitialCondition initial_for(EquationKind kind) {
  return kind == EquationKind::quadratic ? InitialCondition::soliton_quad
                                         : InitialCondition::soliton_cubic;
}

SolitonRun simulate(EquationKind kind) {
  const SolverConfig c = propagation_config(kind);
  RunResult r = run(c, sample_initial(c.grid, initial_for(kind)));
  return {r.snapshots.front(), r.snapshots.back(), std::move(r.series), "simulated"};
}

std::optional<SolitonRun> load_run(const std::string& dir, EquationKind kind) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (dir.empty() || !fs::is_directory(dir, ec)) return std::nullopt;
  const SolverConfig c = propagation_config(kind);
  const std::string tag = c.spec.tag();
  std::optional<Snapshot> first;
  std::optional<Snapshot> last;
  for (fs::recursive_directory_iterator it(dir, ec), end; !ec && it != end; it.increment(ec)) {
    if (!it->is_regular_file(ec)) continue;
    const auto ext = it->path().extension();
    if (ext != ".f64le" && ext != ".csv") continue;
    try {
      Snapshot s = read_snapshot(it->path().string());
      if (s.equation != tag || s.field.geometry != c.grid.geometry()) continue;
      if (std::abs(s.sim_time) < 1e-12) first = std::move(s);
      else if (std::abs(s.sim_time - kPropagationTime) < 1e-9) last = std::move(s);
    } catch (const Error&) {
      continue;
    }
  }
  if (!first || !last) return std::nullopt;
  SolitonRun run{*first, *last, {}, "snapshots in " + dir};
  run.series = {diagnostics(first->field, first->sim_time), diagnostics(last->field, last->sim_time)};
  return run;
}

CriterionResult check_propagation(EquationKind kind, const SolitonRun& run) {
  const std::string name = kind == EquationKind::quadratic ? "quadratic-soliton-propagation"
                                                           : "cubic-soliton-propagation";
  const SolverConfig c = propagation_config(kind);
  const double dx = c.grid.geometry().dx();
  const SolitonParams p(kind, 1.0, 0.0, 0.0, SignBranch::plus);
  const double t = run.final.sim_time;
  const double expected_x = p.speed() * t;
  const double amplitude = kind == EquationKind::quadratic ? 2.0 : 1.0;
  const double amplitude_tol = kind == EquationKind::quadratic ? 0.02 : 0.01;

  // The initial snapshot must be the expected initial condition.
  const Field2D ic = sample_initial(c.grid, initial_for(kind));
  double ic_err = 0.0;
  for (std::size_t i = 0; i < ic.values.size(); ++i) {
    ic_err = std::max(ic_err, std::abs(ic.values[i] - run.initial.field.values[i]));
  }

  if (!all_finite(run.final.field.values)) return verdict(name, false, "non-finite samples");
  const Diagnostics d = diagnostics(run.final.field, t);
  if (!d.peak) return verdict(name, false, "final field is identically zero");
  const Field2D exact = sample_soliton(c.grid, p, t);
  double err = 0.0;
  for (std::size_t i = 0; i < exact.values.size(); ++i) {
    err = std::max(err, std::abs(run.final.field.values[i] - exact.values[i]));
  }
  const double rel = err / max_abs(exact.values);
  const bool ok = ic_err <= 1e-12 && std::abs(d.peak->x - expected_x) <= 2.0 * dx &&
                  std::abs(d.peak->value - amplitude) <= amplitude_tol && rel <= 1e-2;
  return verdict(name, ok,
                 fmt("t=%.6g peak x=%.6f (want %.3g +- %.4f) amplitude=%.6f (want %.3g +- %.3g) "
                     "rel Linf=%.3e (<= 1e-2) [%s]",
                     t, d.peak->x, expected_x, 2.0 * dx, d.peak->value, amplitude, amplitude_tol,
                     rel, run.source.c_str()));
}

CriterionResult check_conservation(const SolitonRun& run) {
  const auto& s = run.series;
  if (s.size() < 2) return verdict("conservation", false, "no diagnostics recorded");
  const double mean0 = s.front().mean;
  const double l20 = s.front().l2_norm;
  double mean_drift = 0.0;
  double l2_drift = 0.0;
  for (const auto& d : s) {
    mean_drift = std::max(mean_drift, std::abs(d.mean - mean0) / std::abs(mean0));
    l2_drift = std::max(l2_drift, std::abs(d.l2_norm - l20) / l20);
  }
  return verdict("conservation", mean_drift <= 1e-13 && l2_drift < 1e-3,
                 fmt("quadratic run, %zu records: mean drift=%.3e (<= 1e-13) L2 drift=%.3e "
                     "(< 1e-3) [%s]",
                     s.size(), mean_drift, l2_drift, run.source.c_str()));
}

// ---------------------------------------------------------------------------

CriterionResult check_speeds() {
  const double q = soliton_speed(EquationKind::quadratic, 1.0, 0.0);
  const double c = soliton_speed(EquationKind::cubic, 1.0, 0.0);
  return verdict("soliton-speeds", q == 4.0 && c == 1.0,
                 fmt("quadratic=%.17g (want 4) cubic=%.17g (want 1)", q, c));
}

CriterionResult check_boussinesq() {
  constexpr std::size_t n = 512;
  const double period = 8 * kPi;
  const double x_min = -4 * kPi;
  double worst = 0.0;
  std::string detail;
  struct Case {
    EquationKind kind;
    SignBranch branch;
    const char* label;
  };
  for (const Case& k : {Case{EquationKind::quadratic, SignBranch::plus, "quadratic+"},
                        Case{EquationKind::quadratic, SignBranch::minus, "quadratic-"},
                        Case{EquationKind::cubic, SignBranch::plus, "cubic+"}}) {
    const SolitonParams p(k.kind, 1.0, 0.0, 0.0, k.branch);
    const double r = boussinesq_residual(periodic_soliton_samples(p, 0.0, x_min, period, n),
                                         period, p.speed(), k.kind, k.branch);
    // Plain truncated sampling, reported for reference only: the seam jump dominates.
    std::vector<double> plain(n);
    for (std::size_t i = 0; i < n; ++i) {
      plain[i] = line_soliton(p, 0.0, x_min + period * static_cast<double>(i) / n, 0.0);
    }
    const double r_plain = boussinesq_residual(plain, period, p.speed(), k.kind, k.branch);
    worst = std::max(worst, r);
    detail += fmt("%s=%.3e (truncated %.1e) ", k.label, r, r_plain);
  }
  return verdict("boussinesq-residual", worst < 1e-6,
                 detail + "(< 1e-6, 512 periodic samples on [-4pi,4pi])");
}

CriterionResult check_order() {
  // A wide domain keeps the sech tail truncation far below the time-stepping error.
  const SpectralGrid grid = make_grid(1024, 16, {-16 * kPi, 16 * kPi, -16 * kPi, 16 * kPi});
  const SolitonParams p(EquationKind::cubic, 1.0, 0.0, 0.0, SignBranch::plus);
  const double t_end = 0.01;
  const Field2D exact = sample_soliton(grid, p, t_end);
  std::vector<double> errors;
  for (double dt : {4e-4, 2e-4, 1e-4}) {
    SolverConfig c;
    c.spec = EquationSpec::canonical(EquationKind::cubic, SignBranch::plus);
    c.grid = grid;
    c.dt = dt;
    c.t_end = t_end;
    c.snapshot_times = {t_end};
    const RunResult r = run(c, sample_soliton(grid, p, 0.0));
    double e = 0.0;
    for (std::size_t i = 0; i < exact.values.size(); ++i) {
      e = std::max(e, std::abs(r.snapshots.back().field.values[i] - exact.values[i]));
    }
    errors.push_back(e);
  }
  const double r1 = errors[0] / errors[1];
  const double r2 = errors[1] / errors[2];
  const bool ok = r1 >= 12 && r1 <= 20 && r2 >= 12 && r2 <= 20;
  return verdict("rk4-order", ok,
                 fmt("errors %.3e %.3e %.3e for dt=4e-4,2e-4,1e-4; ratios %.2f %.2f (in [12,20])",
                     errors[0], errors[1], errors[2], r1, r2));
}

// Sign changes along a row, ignoring samples below 1e-3 of the row maximum.
std::size_t oscillation_count(std::span<const double> row) {
  const double floor = 1e-3 * max_abs(row);
  std::size_t count = 0;
  int last = 0;
  for (double v : row) {
    if (std::abs(v) < floor || v == 0.0) continue;
    const int s = v > 0 ? 1 : -1;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

double y_asymmetry(const Field2D& f) {
  const auto& g = f.geometry;
  double worst = 0.0;
  for (std::size_t j = 1; j < g.ny; ++j) {
    const std::size_t mirror = g.ny - j;
    for (std::size_t i = 0; i < g.nx; ++i) worst = std::max(worst, std::abs(f(i, j) - f(i, mirror)));
  }
  return worst;
}

CriterionResult check_radial() {
  std::string detail;
  bool ok = true;
  for (EquationKind kind : {EquationKind::quadratic, EquationKind::cubic}) {
    SolverConfig c;
    c.spec = EquationSpec::canonical(kind, SignBranch::plus);
    c.grid = make_grid(512, 256, {-16 * kPi, 16 * kPi, -8 * kPi, 8 * kPi});
    c.dt = 1e-4;
    c.t_end = 0.1;
    c.snapshot_times = {0.0, 0.1};
    const InitialCondition ic =
        kind == EquationKind::quadratic ? InitialCondition::radial_quad : InitialCondition::radial_cubic;
    const char* label = kind == EquationKind::quadratic ? "quadratic" : "cubic";
    try {
      const RunResult r = run(c, sample_initial(c.grid, ic));
      const Field2D& f0 = r.snapshots.front().field;
      const Field2D& f1 = r.snapshots.back().field;
      const double max0 = max_abs(f0.values);
      double peak = 0.0;
      for (const auto& d : r.series) peak = std::max({peak, std::abs(d.min), std::abs(d.max)});
      const std::size_t center = c.grid.ny() / 2;  // y = 0 on the symmetric domain
      const std::size_t n0 = oscillation_count(f0.row(center));
      const std::size_t n1 = oscillation_count(f1.row(center));
      const double asym = std::max(y_asymmetry(f0), y_asymmetry(f1)) / max0;
      const bool finite = all_finite(f1.values);
      const bool good = finite && peak <= 3.0 * max0 && n1 > n0 && asym <= 1e-10;
      ok = ok && good;
      detail += fmt("%s: finite=%s max %.4f -> %.4f (<= 3x) oscillations %zu -> %zu "
                    "y-asymmetry %.2e; ",
                    label, finite ? "yes" : "no", max0, peak, n0, n1, asym);
    } catch (const InstabilityError& e) {
      ok = false;
      detail += fmt("%s: %s; ", label, e.what());
    }
  }
  return verdict("radial-desk-scale", ok, detail);
}

CriterionResult check_transforms() {
  std::mt19937_64 rng(0x6b70'7761'7665ULL);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  auto log_uniform = [&](double lo, double hi) {
    return std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * 0.5 * (unit(rng) + 1.0));
  };
  auto rel_component = [](double a, double b) {
    return a == b ? 0.0 : std::abs(a - b) / std::max(std::abs(a), std::abs(b));
  };

  double worst_canon = 0.0;
  double worst_phys = 0.0;
  constexpr int trials = 10000;
  for (int i = 0; i < trials; ++i) {
    const EquationKind kind = (i % 2) ? EquationKind::cubic : EquationKind::quadratic;
    const double coeff = std::copysign(log_uniform(1e-2, 1e2), unit(rng));
    const CanonicalScaling s = scale_factors(equation_spec(kind, coeff, log_uniform(1e-2, 1e2)));
    const MultiscaleCoords m{100 * unit(rng), 100 * unit(rng), 100 * unit(rng)};
    const MultiscaleCoords back = to_multiscale(to_canonical(m, s), s);
    const CanonicalCoords q{100 * unit(rng), 100 * unit(rng), 100 * unit(rng)};
    const CanonicalCoords fwd = to_canonical(to_multiscale(q, s), s);
    worst_canon = std::max({worst_canon, rel_component(m.chi, back.chi),
                            rel_component(m.tau, back.tau), rel_component(m.eta, back.eta),
                            rel_component(q.sim_time, fwd.sim_time),
                            rel_component(q.profile_coord, fwd.profile_coord),
                            rel_component(q.transverse, fwd.transverse)});

    // Physical -> multiscale -> physical, compared in the dimensionless variables
    // (X/L, Y/L, c t / L).
    PhysicalScaling ps;
    ps.epsilon = log_uniform(1e-3, 0.5);
    ps.length = log_uniform(1e-3, 1e2);
    ps.speed = log_uniform(1.0, 1e4);
    ps.regime = (i / 2) % 2 ? Regime::incompressible : Regime::compressible;
    const PhysicalPoint p{10 * ps.length * unit(rng), 10 * ps.length * unit(rng),
                          10 * ps.length / ps.speed * unit(rng)};
    const PhysicalPoint pb = multiscale_to_physical(physical_to_multiscale(p, ps), ps);
    const double scale_p = std::max({std::abs(p.x), std::abs(p.y), std::abs(ps.speed * p.time)}) / ps.length;
    const double err_p = std::max({std::abs(pb.x - p.x), std::abs(pb.y - p.y),
                                   std::abs(ps.speed * (pb.time - p.time))}) / ps.length;
    worst_phys = std::max(worst_phys, err_p / scale_p);
  }

  const CanonicalScaling hand =
      scale_factors(equation_spec(EquationKind::quadratic, 1.0, 0.5));
  const bool exact = hand.s_t == -0.5 && hand.s_x == 1.0 && hand.s_y == 1.0;
  const bool ok = worst_canon <= 1e-14 && worst_phys <= 1e-14 && exact;
  return verdict("transform-round-trips", ok,
                 fmt("%d trials: canonical max rel err %.2e, physical max rel err %.2e (<= 1e-14); "
                     "|beta|=1 nu0=1/2 -> (%.17g, %.17g, %.17g)",
                     trials, worst_canon, worst_phys, hand.s_t, hand.s_x, hand.s_y));
}

CriterionResult check_coefficients() {
  const double b3 = beta3_landau(MaterialIncompressible(1.0, 1.0, 0.0, 0.0, 1.0));
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  int mismatches = 0;
  int tested = 0;
  for (EquationKind kind : {EquationKind::quadratic, EquationKind::cubic}) {
    for (int i = 0; i < 100; ++i) {
      double coeff = 0.0;
      while (coeff == 0.0) coeff = u(rng);
      const SignBranch want = kind == EquationKind::quadratic
                                  ? (coeff > 0 ? SignBranch::minus : SignBranch::plus)
                                  : (coeff > 0 ? SignBranch::plus : SignBranch::minus);
      if (equation_spec(kind, coeff, 1.0).branch != want) ++mismatches;
      ++tested;
    }
  }
  return verdict("coefficients", b3 == 1.5 && mismatches == 0,
                 fmt("beta3_landau(mu=1,A=0,D=0)=%.17g (want 1.5); sign rule mismatches %d/%d",
                     b3, mismatches, tested));
}

CriterionResult check_oracle() {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double worst = 0.0;
  int cases = 0;
  for (EquationKind kind : {EquationKind::quadratic, EquationKind::cubic}) {
    for (SignBranch branch : {SignBranch::plus, SignBranch::minus}) {
      for (Dealias dealias : {Dealias::off, Dealias::two_thirds}) {
        for (int trial = 0; trial < 3; ++trial) {
          const double lx = 2 * kPi * (1.0 + 0.5 * (u(rng) + 1.0));
          const double ly = 2 * kPi * (1.0 + 0.5 * (u(rng) + 1.0));
          const SpectralGrid grid = make_grid(16, 16, {-lx / 2, lx / 2, -ly / 2, ly / 2});
          Field2D f(grid.geometry());
          for (double& v : f.values) v = u(rng);
          const EquationSpec spec = EquationSpec::canonical(kind, branch);
          const Spectrum fast = nonlinear_term(spec, f, grid, dealias);
          worst = std::max(worst, relative_max_error(fast.coeffs, brute_force_nonlinear(spec, f, dealias)));
          ++cases;
        }
      }
    }
  }
  return verdict("nonlinear-oracle", worst <= 1e-12,
                 fmt("%d random 16x16 fields: max relative deviation %.2e (<= 1e-12)", cases, worst));
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options) {
  std::vector<CriterionResult> results;
  auto record = [&](CriterionResult r) {
    if (options.on_result) options.on_result(r);
    results.push_back(std::move(r));
  };
  auto guarded = [&](const std::string& name, auto&& fn) {
    try {
      record(fn());
    } catch (const std::exception& e) {
      record(verdict(name, false, std::string("error: ") + e.what()));
    }
  };

  guarded("soliton-speeds", check_speeds);
  guarded("coefficients", check_coefficients);
  guarded("transform-round-trips", check_transforms);
  guarded("boussinesq-residual", check_boussinesq);
  guarded("nonlinear-oracle", check_oracle);
  guarded("rk4-order", check_order);
  guarded("radial-desk-scale", check_radial);

  for (EquationKind kind : {EquationKind::quadratic, EquationKind::cubic}) {
    const bool quad = kind == EquationKind::quadratic;
    const std::string name = quad ? "quadratic-soliton-propagation" : "cubic-soliton-propagation";
    std::optional<SolitonRun> run_data;
    try {
      run_data = load_run(options.from_dir, kind);
      if (!run_data && !options.fast) run_data = simulate(kind);
    } catch (const std::exception& e) {
      record(verdict(name, false, std::string("error: ") + e.what()));
      if (quad) record(verdict("conservation", false, "quadratic run failed"));
      continue;
    }
    if (!run_data) {
      record({name, Status::skip, "skipped by --fast (no snapshots found)"});
      if (quad) record({"conservation", Status::skip, "skipped by --fast (no snapshots found)"});
      continue;
    }
    guarded(name, [&] { return check_propagation(kind, *run_data); });
    if (quad) guarded("conservation", [&] { return check_conservation(*run_data); });
  }
  return results;
}

std::string format_result(const CriterionResult& r) {
  const char* tag = r.status == Status::pass ? "PASS" : r.status == Status::fail ? "FAIL" : "SKIP";
  return std::string(tag) + "  " + r.name + "  " + r.detail;
}

bool no_failures(const std::vector<CriterionResult>& results) {
  return std::none_of(results.begin(), results.end(),
                      [](const CriterionResult& r) { return r.status == Status::fail; });
}

}  // namespace kpwave::validation
