#include <doctest.h>

#include <cmath>
#include <numbers>

#include "kpwave/analytic.hpp"
#include "kpwave/error.hpp"
#include "kpwave/validation/oracles.hpp"
#include "support.hpp"

using namespace kpwave;
using doctest::Approx;

namespace {

constexpr double pi = std::numbers::pi;

std::vector<double> sample(double (*f)(double), double period, std::size_t n) {
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = f(period * static_cast<double>(i) / static_cast<double>(n));
  return v;
}

}  // namespace

TEST_CASE("soliton speeds") {
  CHECK(soliton_speed(EquationKind::quadratic, 1, 0) == 4.0);
  CHECK(soliton_speed(EquationKind::cubic, 1, 0) == 1.0);
  CHECK(soliton_speed(EquationKind::quadratic, 0.5, 2) == 5.0);
  CHECK(SolitonParams(EquationKind::cubic, 2, 1, 0, SignBranch::plus).speed() == 5.0);
  CHECK_THROWS_AS(SolitonParams(EquationKind::cubic, 0, 1, 0, SignBranch::plus), InputError);
  CHECK_THROWS_AS(SolitonParams(EquationKind::cubic, 1, NAN, 0, SignBranch::plus), InputError);
}

TEST_CASE("line soliton values") {
  const SolitonParams q(EquationKind::quadratic, 1, 0, 0, SignBranch::plus);
  CHECK(line_soliton(q, 0, 0, 0) == 2.0);
  const SolitonParams qm(EquationKind::quadratic, 1, 0, 0, SignBranch::minus);
  CHECK(line_soliton(qm, 0, 0, 0) == -2.0);
  const SolitonParams c(EquationKind::cubic, 1, 0, 0, SignBranch::plus);
  CHECK(line_soliton(c, 0, 0, 0) == 1.0);
  CHECK(line_soliton(c, 0, 1, 0) == Approx(1.0 / std::cosh(1.0)).epsilon(1e-15));
  // The crest moves at the soliton speed.
  CHECK(line_soliton(q, 2.0, 8.0, 0.0) == Approx(2.0).epsilon(1e-15));
  // Far tails decay without overflow.
  CHECK(line_soliton(q, 0, 800, 0) == 0.0);
  CHECK(std::isfinite(line_soliton(c, 0, -1e6, 0)));
}

TEST_CASE("initial conditions") {
  CHECK(initial_condition(InitialCondition::soliton_quad, 0, 5) == 2.0);
  CHECK(initial_condition(InitialCondition::soliton_cubic, 0, 5) == 1.0);
  CHECK(initial_condition(InitialCondition::radial_quad, 0, 0) == 0.0);
  CHECK(initial_condition(InitialCondition::radial_cubic, 0, 0) == 0.0);
  CHECK(initial_condition(InitialCondition::radial_cubic, 1, 0) ==
        Approx(std::tanh(1.0) / std::cosh(1.0)).epsilon(1e-14));

  for (const double h : {1e-6, 1e-8}) {
    const double fd = -(1.0 / std::cosh(1.0 + h) - 1.0 / std::cosh(1.0 - h)) / (2 * h);
    CHECK(initial_condition(InitialCondition::radial_cubic, 1, 0) == Approx(fd).epsilon(1e-6));
    const double fq = -(std::pow(1.0 / std::cosh(1.0 + h), 2) - std::pow(1.0 / std::cosh(1.0 - h), 2)) /
                      (2 * h);
    CHECK(initial_condition(InitialCondition::radial_quad, 1, 0) == Approx(fq).epsilon(1e-6));
  }

  CHECK(parse_initial_condition("radial_quad") == InitialCondition::radial_quad);
  CHECK(to_string(InitialCondition::soliton_cubic) == "soliton_cubic");
  CHECK_THROWS_AS(parse_initial_condition("gauss"), ConfigError);
}

TEST_CASE("travelling-wave residual of sampled solitons") {
  const double period = 8 * pi;
  for (auto kind : {EquationKind::quadratic, EquationKind::cubic}) {
    const SolitonParams p(kind, 1, 0, 0, SignBranch::plus);
    const auto v = periodic_soliton_samples(p, 0, -4 * pi, period, 512);
    CHECK(boussinesq_residual(v, period, p.speed(), kind, SignBranch::plus) < 1e-6);
    // A wrong speed is clearly detected.
    CHECK(boussinesq_residual(v, period, p.speed() * 1.1, kind, SignBranch::plus) > 1e-3);
  }
  const SolitonParams qm(EquationKind::quadratic, 1, 0, 0, SignBranch::minus);
  const auto vm = periodic_soliton_samples(qm, 0, -4 * pi, period, 512);
  CHECK(boussinesq_residual(vm, period, qm.speed(), EquationKind::quadratic, SignBranch::minus) <
        1e-6);
}

TEST_CASE("travelling-wave residual edge cases") {
  std::vector<double> zero(64, 0.0);
  CHECK(boussinesq_residual(zero, 2 * pi, 1, EquationKind::quadratic, SignBranch::plus) == 0.0);
  std::vector<double> few(8, 1.0);
  CHECK_THROWS_AS(boussinesq_residual(few, 2 * pi, 1, EquationKind::cubic, SignBranch::plus),
                  InputError);
  zero[3] = NAN;
  CHECK_THROWS_AS(boussinesq_residual(zero, 2 * pi, 1, EquationKind::cubic, SignBranch::plus),
                  InputError);
}

TEST_CASE("shock distance of sinusoidal profiles") {
  const auto s = sample([](double t) { return std::sin(t); }, 2 * pi, 4096);
  const auto ms = sample([](double t) { return -std::sin(t); }, 2 * pi, 4096);
  CHECK(*shock_distance(s, 2 * pi, EquationKind::quadratic, 1.0 / 3.0) == Approx(1.0).epsilon(1e-5));
  CHECK(*shock_distance(ms, 2 * pi, EquationKind::quadratic, 1.0 / 3.0) == Approx(1.0).epsilon(1e-5));
  CHECK(*shock_distance(s, 2 * pi, EquationKind::cubic, 2.0) == Approx(0.5).epsilon(1e-5));
  CHECK(*shock_distance(s, 2 * pi, EquationKind::cubic, -2.0) == Approx(0.5).epsilon(1e-5));

  const std::vector<double> flat(64, 0.7);
  CHECK_FALSE(shock_distance(flat, 2 * pi, EquationKind::quadratic, 1.0).has_value());
  CHECK_THROWS_AS(shock_distance(s, 2 * pi, EquationKind::cubic, 0.0), DegenerateEquation);
}

TEST_CASE("property: shock distance agrees with crossing characteristics") {
  kptest::for_all(20, 31, [](kptest::Gen& g, int i) {
    const auto kind = i % 2 ? EquationKind::cubic : EquationKind::quadratic;
    const double a1 = g.uniform(0.3, 1.5);
    const double a2 = g.uniform(-0.5, 0.5);
    const double ph = g.uniform(0, 2 * pi);
    const double coeff = g.nonzero(0.2, 5);
    auto f = [=](double t) { return a1 * std::sin(t + ph) + a2 * std::cos(2 * t); };
    std::vector<double> v(8192);
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = f(2 * pi * static_cast<double>(k) / 8192.0);
    const auto ours = shock_distance(v, 2 * pi, kind, coeff);
    const auto oracle = validation::characteristic_crossing(f, 2 * pi, kind, coeff);
    REQUIRE(ours.has_value() == oracle.has_value());
    if (ours) CHECK(*ours == Approx(*oracle).epsilon(1e-3));
  });
}

TEST_CASE("property: soliton is covariant under translation") {
  kptest::for_all(300, 32, [](kptest::Gen& g, int i) {
    const auto kind = i % 2 ? EquationKind::cubic : EquationKind::quadratic;
    const double kappa = g.log_uniform(0.2, 3);
    const double theta = g.uniform(-2, 2);
    const double x0 = g.uniform(-5, 5);
    const SolitonParams a(kind, kappa, theta, 0, SignBranch::plus);
    const SolitonParams b(kind, kappa, theta, x0, SignBranch::plus);
    const double t = g.uniform(-1, 1), x = g.uniform(-5, 5), y = g.uniform(-5, 5);
    CHECK(line_soliton(b, t, x, y) ==
          Approx(line_soliton(a, t, x + x0, y)).epsilon(1e-12).scale(1e-300));
  });
}

TEST_CASE("property: cubic branches differ only by sign") {
  kptest::for_all(300, 33, [](kptest::Gen& g, int) {
    const double kappa = g.log_uniform(0.2, 3);
    const SolitonParams p(EquationKind::cubic, kappa, 0.3, 0, SignBranch::plus);
    const SolitonParams m(EquationKind::cubic, kappa, 0.3, 0, SignBranch::minus);
    const double t = g.uniform(-1, 1), x = g.uniform(-5, 5), y = g.uniform(-5, 5);
    CHECK(line_soliton(m, t, x, y) == -line_soliton(p, t, x, y));
  });
}

TEST_CASE("property: radial initial conditions have zero x-mean") {
  kptest::for_all(40, 34, [](kptest::Gen& g, int i) {
    const auto ic = i % 2 ? InitialCondition::radial_cubic : InitialCondition::radial_quad;
    const double y = g.uniform(-3, 3);
    // Odd in x, so symmetric samples cancel exactly.
    double sum = 0.0;
    for (int k = -400; k <= 400; ++k) sum += initial_condition(ic, 0.05 * k, y);
    CHECK(std::abs(sum) <= 1e-12);
  });
}
