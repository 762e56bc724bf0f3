#include <doctest.h>

#include <cmath>
#include <numbers>

#include "kpwave/error.hpp"
#include "kpwave/solver.hpp"
#include "support.hpp"

using namespace kpwave;
using doctest::Approx;

namespace {

constexpr double pi = std::numbers::pi;

SolverConfig small_config(EquationKind kind, double dt, double t_end, std::size_t n = 32,
                          double half = 4 * pi) {
  SolverConfig c;
  c.spec = EquationSpec::canonical(kind, SignBranch::plus);
  c.grid = make_grid(n, n, Domain{-half, half, -half, half});
  c.dt = dt;
  c.t_end = t_end;
  return c;
}

}  // namespace

TEST_CASE("step count") {
  CHECK(step_count(2.0, 1e-4) == 20000);
  CHECK(step_count(0.3, 0.1) == 3);
  CHECK(step_count(0.35, 0.1) == 4);
  CHECK(step_count(0.0, 0.1) == 0);
}

TEST_CASE("config validation") {
  auto c = small_config(EquationKind::quadratic, 0.01, 1.0);
  CHECK_NOTHROW(validate(c));
  c.dt = -1;
  CHECK_THROWS_AS(validate(c), ConfigError);
  c.dt = 0.01;
  c.snapshot_times = {0.5, 0.2};
  CHECK_THROWS_AS(validate(c), ConfigError);
  c.snapshot_times = {0.5, 1.5};
  CHECK_THROWS_AS(validate(c), ConfigError);
  c.snapshot_times = {};
  c.eps_reg = 0;
  CHECK_THROWS_AS(validate(c), ConfigError);
}

TEST_CASE("zero-length run returns the initial field") {
  const auto c = small_config(EquationKind::quadratic, 0.01, 0.0);
  const auto f = sample_initial(c.grid, InitialCondition::radial_quad);
  const auto r = run(c, f);
  REQUIRE(r.snapshots.size() == 1);
  CHECK(r.snapshots[0].sim_time == 0.0);
  CHECK(r.snapshots[0].field.values == f.values);
  CHECK(r.snapshots[0].equation == "quadratic-plus");
  CHECK(r.snapshots[0].digest.size() == 64);
  CHECK(r.steps == 0);
}

TEST_CASE("diagnostics") {
  const auto g = make_grid(32, 16, Domain{0, 2 * pi, 0, 2 * pi});
  Field2D zero(g.geometry());
  const auto dz = diagnostics(zero);
  CHECK_FALSE(dz.peak.has_value());
  CHECK(dz.mean == 0.0);
  CHECK(dz.l2_norm == 0.0);

  Field2D s(g.geometry());
  for (std::size_t iy = 0; iy < 16; ++iy)
    for (std::size_t ix = 0; ix < 32; ++ix) s(ix, iy) = std::sin(g.geometry().x(ix));
  const auto ds = diagnostics(s, 1.5);
  CHECK(ds.time == 1.5);
  CHECK(std::abs(ds.mean) < 1e-14);
  CHECK(ds.l2_norm == Approx(std::sqrt(2 * pi * pi)).epsilon(1e-13));
  CHECK(ds.max == Approx(1.0).epsilon(1e-15));
  CHECK(ds.min == Approx(-1.0).epsilon(1e-15));

  const auto grid = make_grid(64, 16, Domain{-4 * pi, 4 * pi, -4 * pi, 4 * pi});
  const auto sol = sample_initial(grid, InitialCondition::soliton_quad);
  const auto d = diagnostics(sol);
  REQUIRE(d.peak.has_value());
  CHECK(d.peak->x == Approx(0.0).scale(1.0).epsilon(1e-12));
  CHECK(d.peak->value == 2.0);
  CHECK(d.max == 2.0);
}

TEST_CASE("snapshots snap to the nearest step") {
  auto c = small_config(EquationKind::cubic, 0.01, 0.1);
  c.snapshot_times = {0.0, 0.024, 0.026, 0.1};
  std::size_t calls = 0;
  const auto r = run(c, sample_initial(c.grid, InitialCondition::soliton_cubic),
                     [&](std::size_t n, double t) {
                       ++calls;
                       CHECK(t == Approx(0.01 * n));
                     });
  CHECK(calls == 10);
  CHECK(r.steps == 10);
  REQUIRE(r.snapshots.size() == 4);
  CHECK(r.snapshots[1].sim_time == Approx(0.02));
  CHECK(r.snapshots[2].sim_time == Approx(0.03));
  CHECK(r.snapshots[3].sim_time == Approx(0.1));
}

TEST_CASE("diagnostics stride") {
  auto c = small_config(EquationKind::quadratic, 0.001, 0.01);
  c.diagnostics_stride = 3;
  const auto r = run(c, sample_initial(c.grid, InitialCondition::radial_quad));
  REQUIRE(r.series.size() == 5);  // steps 0, 3, 6, 9, 10
  CHECK(r.series.back().time == Approx(0.01));
}

TEST_CASE("mean is conserved") {
  auto c = small_config(EquationKind::quadratic, 1e-3, 0.05, 64, 8 * pi);
  c.diagnostics_stride = 1;
  const auto r = run(c, sample_initial(c.grid, InitialCondition::soliton_quad));
  REQUIRE(r.series.size() == 51);
  for (const auto& d : r.series) CHECK(std::abs(d.mean - r.series.front().mean) <= 1e-13);
}

TEST_CASE("mismatched or non-finite initial data is rejected") {
  const auto c = small_config(EquationKind::quadratic, 0.01, 0.1);
  Field2D wrong(make_grid(16, 16, Domain{0, 1, 0, 1}).geometry());
  CHECK_THROWS_AS(run(c, wrong), ConfigError);
  auto f = sample_initial(c.grid, InitialCondition::radial_quad);
  f.values[3] = INFINITY;
  CHECK_THROWS_AS(run(c, f), InputError);
}

TEST_CASE("blow-up reports the last finite state") {
  auto c = small_config(EquationKind::cubic, 0.5, 50.0, 16);
  auto f = sample_initial(c.grid, InitialCondition::radial_cubic);
  for (double& v : f.values) v *= 50.0;
  try {
    run(c, f);
    FAIL("expected the run to blow up");
  } catch (const InstabilityError& e) {
    CHECK(e.blow_up_time() > 0.0);
    CHECK(e.last_finite().sim_time == Approx(e.blow_up_time() - 0.5));
    for (double v : e.last_finite().field.values) CHECK(std::isfinite(v));
  }
}

TEST_CASE("property: y-symmetric data stays y-symmetric") {
  kptest::for_all(4, 51, [](kptest::Gen& g, int i) {
    const auto kind = i % 2 ? EquationKind::cubic : EquationKind::quadratic;
    auto c = small_config(kind, 1e-3, 0.02);
    c.spec = EquationSpec::canonical(kind, g.coin() ? SignBranch::plus : SignBranch::minus);
    const auto ic = i % 2 ? InitialCondition::radial_cubic : InitialCondition::radial_quad;
    const auto r = run(c, sample_initial(c.grid, ic));
    const auto& f = r.snapshots.back().field;
    const std::size_t n = f.geometry.ny;
    double worst = 0.0;
    for (std::size_t j = 1; j < n; ++j)
      for (std::size_t ix = 0; ix < f.geometry.nx; ++ix)
        worst = std::max(worst, std::abs(f(ix, j) - f(ix, n - j)));
    CHECK(worst <= 1e-12);
  });
}

TEST_CASE("describe is stable and sensitive") {
  auto a = small_config(EquationKind::quadratic, 0.01, 1.0);
  auto b = a;
  CHECK(describe(a) == describe(b));
  b.dt = 0.02;
  CHECK(describe(a) != describe(b));
}
