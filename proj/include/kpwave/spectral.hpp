#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "kpwave/error.hpp"
#include "kpwave/fft.hpp"
#include "kpwave/grid.hpp"
#include "kpwave/material.hpp"

namespace kpwave {

/// Treatment of the k_x = 0, k_y != 0 line where the antiderivative in x is undefined.
enum class ZeroModePolicy {
  /// Keep the regularised symbol i k_y^2 / (k_x - i eps) everywhere. Stage factors
  /// that overflow on the k_x = 0 line are clamped to zero.
  regularize,
  /// Zero the k_x = 0, k_y != 0 modes of the state; the symbol is 0 there.
  project,
};

enum class Dealias { off, two_thirds };

/// Raised when a spectral computation produces NaN or Inf.
class NonFiniteValues : public Error {
 public:
  using Error::Error;
};

/// Normalised half spectrum of a real ny x nx field: ny rows by nx/2 + 1 columns.
struct Spectrum {
  std::size_t nx = 0;
  std::size_t ny = 0;
  std::vector<std::complex<double>> coeffs;

  Spectrum() = default;
  Spectrum(std::size_t nx_, std::size_t ny_) : nx(nx_), ny(ny_), coeffs(ny_ * (nx_ / 2 + 1)) {}
  explicit Spectrum(const SpectralGrid& g) : Spectrum(g.nx(), g.ny()) {}

  std::size_t nx_half() const { return nx / 2 + 1; }
  std::complex<double>& at(std::size_t iy, std::size_t mx) { return coeffs[iy * nx_half() + mx]; }
  const std::complex<double>& at(std::size_t iy, std::size_t mx) const {
    return coeffs[iy * nx_half() + mx];
  }
};

Spectrum to_spectrum(const Field2D& field, RealFft& fft);
Field2D to_field(const Spectrum& spectrum, const Geometry& geometry, RealFft& fft);

/// i k_y^2 / (k_x - i eps_reg) - i k_x^3.
std::complex<double> symbol_value(double kx, double ky, double eps_reg);

struct LinearSymbol {
  ZeroModePolicy policy = ZeroModePolicy::project;
  std::vector<std::complex<double>> values;  ///< half-spectrum layout
  std::vector<unsigned char> projected;      ///< 1 where the state is zeroed (project only)
};

/// Throws ConfigError for eps_reg <= 0.
LinearSymbol linear_symbol(const SpectralGrid& grid, double eps_reg, ZeroModePolicy policy);

/// Integrating-factor multipliers exp(-L dt / 2) and exp(-L dt), computed once per run.
struct StageFactors {
  std::vector<std::complex<double>> half;
  std::vector<std::complex<double>> full;
  std::size_t clamped = 0;  ///< entries replaced by 0 because they overflowed
};

StageFactors stage_factors(const LinearSymbol& symbol, double dt);

/// Coefficient c of the nonlinear right-hand side c i k_x FT(U^p):
/// -3 s for the quadratic and -2 s for the cubic equation, s = +1 on the plus branch.
double nonlinear_coefficient(const EquationSpec& spec);

/// Evaluates the nonlinear right-hand side for a fixed grid and equation.
/// Owns its FFT plans and scratch space; reuse one instance per run.
class NonlinearOperator {
 public:
  NonlinearOperator(const SpectralGrid& grid, const EquationSpec& spec,
                    Dealias dealias = Dealias::off,
                    ZeroModePolicy policy = ZeroModePolicy::project);

  /// out = c i k_x FT(U^p) where U is the physical field of `state`.
  void apply(const Spectrum& state, Spectrum& out);
  /// Same, starting from physical samples.
  void apply_physical(std::span<const double> field, Spectrum& out);

 private:
  void finish(Spectrum& out);

  RealFft fft_;
  int power_;
  std::vector<std::complex<double>> gain_;
};

/// One-shot nonlinear term of `field`. Throws NonFiniteValues on non-finite data.
Spectrum nonlinear_term(const EquationSpec& spec, const Field2D& field, const SpectralGrid& grid,
                        Dealias dealias = Dealias::off,
                        ZeroModePolicy policy = ZeroModePolicy::project);

/// Hermitian symmetrisation of the self-conjugate columns (k_x = 0 and Nyquist) so
/// that the half spectrum represents a real field exactly.
void restore_realness(Spectrum& s);

/// Zeroes the modes flagged in `symbol.projected`.
void apply_projection(const LinearSymbol& symbol, Spectrum& s);

bool all_finite(const Spectrum& s);

struct IfRk4Workspace {
  Spectrum stage, k1, k2, k3, k4;
  explicit IfRk4Workspace(const SpectralGrid& g) : stage(g), k1(g), k2(g), k3(g), k4(g) {}
};

/// One classical RK4 step on the integrating-factor variable exp(t L) U_hat.
///
/// `nonlinear(in, out)` must write N(in) into `out`. The state is advanced in place;
/// realness is restored at the end. Throws NonFiniteValues if the new state is not finite.
template <class NonlinearFn>
void step_ifrk4(Spectrum& state, const StageFactors& f, double dt, NonlinearFn&& nonlinear,
                IfRk4Workspace& ws) {
  const std::size_t n = state.coeffs.size();
  auto* u = state.coeffs.data();
  auto* s = ws.stage.coeffs.data();
  auto* k1 = ws.k1.coeffs.data();
  auto* k2 = ws.k2.coeffs.data();
  auto* k3 = ws.k3.coeffs.data();
  auto* k4 = ws.k4.coeffs.data();
  const auto* e = f.half.data();
  const auto* e2 = f.full.data();
  const double h = 0.5 * dt;

  nonlinear(static_cast<const Spectrum&>(state), ws.k1);
  for (std::size_t i = 0; i < n; ++i) s[i] = e[i] * (u[i] + h * k1[i]);
  nonlinear(static_cast<const Spectrum&>(ws.stage), ws.k2);
  for (std::size_t i = 0; i < n; ++i) s[i] = e[i] * u[i] + h * k2[i];
  nonlinear(static_cast<const Spectrum&>(ws.stage), ws.k3);
  for (std::size_t i = 0; i < n; ++i) s[i] = e2[i] * u[i] + dt * (e[i] * k3[i]);
  nonlinear(static_cast<const Spectrum&>(ws.stage), ws.k4);
  const double sixth = dt / 6.0;
  for (std::size_t i = 0; i < n; ++i) {
    u[i] = e2[i] * u[i] + sixth * (e2[i] * k1[i] + 2.0 * e[i] * (k2[i] + k3[i]) + k4[i]);
  }
  restore_realness(state);
  if (!all_finite(state)) throw NonFiniteValues("non-finite spectral state after RK4 step");
}

/// Spectral partial derivative d^ox/dx^ox d^oy/dy^oy of a periodic field.
/// The Nyquist mode of a direction with odd order is dropped.
Field2D spectral_derivative(const Field2D& field, int order_x, int order_y);

/// 1D spectral derivative of periodic samples with the given period.
std::vector<double> spectral_derivative_1d(std::span<const double> samples, double period,
                                           int order);

}  // namespace kpwave
