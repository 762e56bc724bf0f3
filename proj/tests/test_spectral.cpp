#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "kpwave/error.hpp"
#include "kpwave/spectral.hpp"
#include "kpwave/validation/oracles.hpp"
#include "support.hpp"

using namespace kpwave;
using doctest::Approx;
using cd = std::complex<double>;

namespace {

constexpr double pi = std::numbers::pi;

const Domain unit_box{0, 2 * pi, 0, 2 * pi};

std::size_t half_index(const SpectralGrid& g, std::size_t iy, std::size_t mx) {
  return iy * g.nx_half() + mx;
}

}  // namespace

TEST_CASE("grid construction") {
  const auto g = make_grid(16, 32, unit_box);
  CHECK(g.nx() == 16);
  CHECK(g.ny() == 32);
  CHECK(g.nx_half() == 9);
  CHECK(g.kx()[1] == Approx(1.0).epsilon(1e-15));
  CHECK(g.kx()[8] == Approx(-8.0).epsilon(1e-15));
  CHECK(g.ky()[31] == Approx(-1.0).epsilon(1e-15));

  CHECK_THROWS_AS(make_grid(24, 16, unit_box), ConfigError);
  CHECK_THROWS_AS(make_grid(8, 16, unit_box), ConfigError);
  CHECK_THROWS_AS(make_grid(16, 16, Domain{1, 1, 0, 1}), ConfigError);
  CHECK_THROWS_AS(make_grid(16, 16, Domain{0, INFINITY, 0, 1}), ConfigError);

  const auto k = fft_wavenumbers(4, 2 * pi);
  REQUIRE(k.size() == 4);
  CHECK(k[0] == 0.0);
  CHECK(k[1] == Approx(1.0).epsilon(1e-15));
  CHECK(k[2] == Approx(-2.0).epsilon(1e-15));
  CHECK(k[3] == Approx(-1.0).epsilon(1e-15));
  CHECK(is_power_of_two(64));
  CHECK_FALSE(is_power_of_two(0));
  CHECK_FALSE(is_power_of_two(48));
}

TEST_CASE("linear symbol values") {
  CHECK(symbol_value(1, 0, 1e-16) == cd(0, -1));
  const auto v = symbol_value(2, 2, 1e-16);
  CHECK(v.real() == Approx(0.0).scale(1.0));
  CHECK(v.imag() == Approx(-6.0).epsilon(1e-15));
  CHECK(symbol_value(0, 0, 1e-16) == cd(0, 0));

  const auto g = make_grid(16, 16, unit_box);
  const auto p = linear_symbol(g, 1e-16, ZeroModePolicy::project);
  CHECK(p.projected[half_index(g, 1, 0)] == 1);
  CHECK(p.projected[half_index(g, 0, 0)] == 0);
  CHECK(p.projected[half_index(g, 1, 1)] == 0);
  CHECK(p.values[half_index(g, 1, 0)] == cd(0, 0));
  CHECK(p.values[half_index(g, 0, 1)] == cd(0, -1));

  const auto r = linear_symbol(g, 1e-16, ZeroModePolicy::regularize);
  CHECK(r.values[half_index(g, 1, 0)].real() < -1e15);
  CHECK_THROWS_AS(linear_symbol(g, 0.0, ZeroModePolicy::project), ConfigError);
}

TEST_CASE("nonlinear coefficient") {
  CHECK(nonlinear_coefficient(EquationSpec::canonical(EquationKind::quadratic, SignBranch::plus)) == -3.0);
  CHECK(nonlinear_coefficient(EquationSpec::canonical(EquationKind::quadratic, SignBranch::minus)) == 3.0);
  CHECK(nonlinear_coefficient(EquationSpec::canonical(EquationKind::cubic, SignBranch::plus)) == -2.0);
  CHECK(nonlinear_coefficient(EquationSpec::canonical(EquationKind::cubic, SignBranch::minus)) == 2.0);
}

TEST_CASE("nonlinear term examples") {
  const auto g = make_grid(16, 16, unit_box);
  const auto spec = EquationSpec::canonical(EquationKind::quadratic, SignBranch::plus);

  Field2D c(g.geometry());
  for (double& v : c.values) v = 1.7;
  for (const auto& z : nonlinear_term(spec, c, g).coeffs) CHECK(std::abs(z) <= 1e-14);

  Field2D zero(g.geometry());
  for (const auto& z : nonlinear_term(spec, zero, g).coeffs) CHECK(z == cd(0, 0));

  // cos^2 x = 1/2 + cos 2x / 2, so only k_x = +-2 survive with magnitude 3 * 2 / 4.
  Field2D f(g.geometry());
  for (std::size_t iy = 0; iy < 16; ++iy)
    for (std::size_t ix = 0; ix < 16; ++ix) f(ix, iy) = std::cos(g.geometry().x(ix));
  const auto n = nonlinear_term(spec, f, g);
  for (std::size_t iy = 0; iy < 16; ++iy) {
    for (std::size_t mx = 0; mx < g.nx_half(); ++mx) {
      const double mag = std::abs(n.at(iy, mx));
      if (iy == 0 && mx == 2) {
        CHECK(mag == Approx(1.5).epsilon(1e-14));
      } else {
        CHECK(mag <= 1e-14);
      }
    }
  }

  Field2D bad(g.geometry());
  bad.values[5] = NAN;
  CHECK_THROWS_AS(nonlinear_term(spec, bad, g), NonFiniteValues);
  Field2D wrong(make_grid(32, 16, unit_box).geometry());
  CHECK_THROWS_AS(nonlinear_term(spec, wrong, g), InputError);
}

TEST_CASE("property: nonlinear term matches direct summation") {
  kptest::for_all(12, 41, [](kptest::Gen& g, int i) {
    const auto kind = i % 2 ? EquationKind::cubic : EquationKind::quadratic;
    const auto spec = EquationSpec::canonical(kind, g.coin() ? SignBranch::plus : SignBranch::minus);
    const auto dealias = i % 4 < 2 ? Dealias::off : Dealias::two_thirds;
    const auto grid = make_grid(16, 32, Domain{g.uniform(-5, 0), g.uniform(1, 5), -3, 4});
    Field2D f(grid.geometry());
    for (double& v : f.values) v = g.uniform(-2, 2);
    const auto ours = nonlinear_term(spec, f, grid, dealias, ZeroModePolicy::regularize);
    const auto ref = validation::brute_force_nonlinear(spec, f, dealias);
    CHECK(validation::relative_max_error(ours.coeffs, ref) <= 1e-12);
  });
}

TEST_CASE("property: spectra of real fields are hermitian on self-conjugate columns") {
  kptest::for_all(10, 42, [](kptest::Gen& g, int) {
    const auto grid = make_grid(16, 16, unit_box);
    Field2D f(grid.geometry());
    for (double& v : f.values) v = g.uniform(-1, 1);
    RealFft fft(16, 16);
    const auto s = to_spectrum(f, fft);
    for (std::size_t iy = 0; iy < 16; ++iy) {
      const std::size_t jy = (16 - iy) % 16;
      for (std::size_t mx : {std::size_t{0}, std::size_t{8}}) {
        CHECK(std::abs(s.at(iy, mx) - std::conj(s.at(jy, mx))) <= 1e-15);
      }
    }
    const auto back = to_field(s, grid.geometry(), fft);
    CHECK(kptest::max_abs_diff(back.values, f.values) <= 1e-15);
  });
}

TEST_CASE("spectral derivative") {
  const auto g = make_grid(32, 32, unit_box);
  Field2D f(g.geometry());
  for (std::size_t iy = 0; iy < 32; ++iy)
    for (std::size_t ix = 0; ix < 32; ++ix)
      f(ix, iy) = std::sin(3 * g.geometry().x(ix)) * std::cos(2 * g.geometry().y(iy));
  const auto d = spectral_derivative(f, 1, 1);
  double err = 0.0;
  for (std::size_t iy = 0; iy < 32; ++iy)
    for (std::size_t ix = 0; ix < 32; ++ix)
      err = std::max(err, std::abs(d(ix, iy) + 6 * std::cos(3 * g.geometry().x(ix)) *
                                                   std::sin(2 * g.geometry().y(iy))));
  CHECK(err <= 1e-12);

  std::vector<double> s(64);
  for (std::size_t i = 0; i < 64; ++i) s[i] = std::sin(2 * pi * i / 64.0 * 2);
  const auto ds = spectral_derivative_1d(s, 4.0, 2);
  for (std::size_t i = 0; i < 64; ++i) CHECK(ds[i] == Approx(-pi * pi * s[i]).scale(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(spectral_derivative(f, -1, 0), InputError);
}

TEST_CASE("linear step is exact without the nonlinear term") {
  const auto g = make_grid(16, 16, unit_box);
  const auto sym = linear_symbol(g, 1e-16, ZeroModePolicy::project);
  const double dt = 0.01;
  const auto fac = stage_factors(sym, dt);
  CHECK(fac.clamped == 0);

  Field2D f(g.geometry());
  kptest::Gen gen(43);
  for (double& v : f.values) v = gen.uniform(-1, 1);
  RealFft fft(16, 16);
  auto s = to_spectrum(f, fft);
  apply_projection(sym, s);
  auto expected = s;
  for (std::size_t i = 0; i < s.coeffs.size(); ++i) expected.coeffs[i] *= std::exp(-sym.values[i] * dt);
  restore_realness(expected);
  IfRk4Workspace ws(g);
  step_ifrk4(s, fac, dt, [](const Spectrum&, Spectrum& out) {
    std::fill(out.coeffs.begin(), out.coeffs.end(), cd(0, 0));
  }, ws);
  double err = 0.0;
  for (std::size_t i = 0; i < s.coeffs.size(); ++i) err = std::max(err, std::abs(s.coeffs[i] - expected.coeffs[i]));
  CHECK(err <= 1e-15);
}

TEST_CASE("zero state is a fixed point") {
  const auto g = make_grid(16, 16, unit_box);
  const auto spec = EquationSpec::canonical(EquationKind::cubic, SignBranch::plus);
  const auto fac = stage_factors(linear_symbol(g, 1e-16, ZeroModePolicy::project), 0.01);
  NonlinearOperator op(g, spec);
  Spectrum s(g);
  IfRk4Workspace ws(g);
  for (int k = 0; k < 5; ++k) step_ifrk4(s, fac, 0.01, [&](const Spectrum& a, Spectrum& b) { op.apply(a, b); }, ws);
  for (const auto& z : s.coeffs) CHECK(z == cd(0, 0));
}

TEST_CASE("property: stage factors are exponentials of the symbol") {
  kptest::for_all(20, 44, [](kptest::Gen& g, int) {
    const auto grid = make_grid(32, 32, Domain{0, g.log_uniform(1, 100), 0, g.log_uniform(1, 100)});
    const auto sym = linear_symbol(grid, g.log_uniform(1e-16, 1e-6), ZeroModePolicy::project);
    const double dt = g.log_uniform(1e-5, 1e-1);
    const auto fac = stage_factors(sym, dt);
    for (std::size_t i = 0; i < fac.full.size(); ++i) {
      CHECK(std::abs(fac.full[i] - std::exp(-sym.values[i] * dt)) <= 1e-14 * std::abs(fac.full[i]));
      CHECK(std::abs(fac.half[i] * fac.half[i] - fac.full[i]) <= 1e-14 * std::abs(fac.full[i]));
      // The regularisation only adds damping-free growth of order eps / k_x^2.
      CHECK(std::abs(fac.full[i]) >= 1.0 - 1e-14);
    }
  });
}

TEST_CASE("regularised factors that overflow are clamped to zero") {
  const auto g = make_grid(16, 16, unit_box);
  const auto sym = linear_symbol(g, 1e-16, ZeroModePolicy::regularize);
  const auto fac = stage_factors(sym, 1e-3);
  CHECK(fac.clamped > 0);
  CHECK(fac.full[half_index(g, 1, 0)] == cd(0, 0));
  CHECK(fac.full[half_index(g, 0, 0)] == cd(1, 0));
  for (const auto& z : fac.full) CHECK(std::isfinite(std::abs(z)));
  CHECK_THROWS_AS(stage_factors(sym, 0.0), ConfigError);
}
