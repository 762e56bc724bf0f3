#include "kpwave/spectral.hpp"

#include <algorithm>
#include <cmath>

namespace kpwave {

namespace {

constexpr double kOverflowLimit = 1e300;

std::complex<double> clamp_factor(std::complex<double> z, std::size_t& clamped) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()) || std::abs(z) > kOverflowLimit) {
    ++clamped;
    return {0.0, 0.0};
  }
  return z;
}

// i^order * k^order
std::complex<double> derivative_factor(double k, int order) {
  std::complex<double> f{1.0, 0.0};
  const std::complex<double> ik{0.0, k};
  for (int i = 0; i < order; ++i) f *= ik;
  return f;
}

}  // namespace

Spectrum to_spectrum(const Field2D& field, RealFft& fft) {
  Spectrum s(field.geometry.nx, field.geometry.ny);
  fft.forward(field.values, s.coeffs);
  return s;
}

Field2D to_field(const Spectrum& spectrum, const Geometry& geometry, RealFft& fft) {
  Field2D f(geometry);
  fft.inverse(spectrum.coeffs, f.values);
  return f;
}

std::complex<double> symbol_value(double kx, double ky, double eps_reg) {
  const std::complex<double> i{0.0, 1.0};
  return i * (ky * ky) / std::complex<double>(kx, -eps_reg) - i * (kx * kx * kx);
}

LinearSymbol linear_symbol(const SpectralGrid& grid, double eps_reg, ZeroModePolicy policy) {
  if (!(eps_reg > 0.0) || !std::isfinite(eps_reg)) {
    throw ConfigError("antiderivative regularisation eps_reg must be positive");
  }
  const std::size_t nxh = grid.nx_half();
  const std::size_t ny = grid.ny();
  LinearSymbol sym;
  sym.policy = policy;
  sym.values.resize(ny * nxh);
  sym.projected.assign(ny * nxh, 0);
  for (std::size_t iy = 0; iy < ny; ++iy) {
    const double ky = grid.ky()[iy];
    for (std::size_t m = 0; m < nxh; ++m) {
      const double kx = grid.kx_half(m);
      const std::size_t idx = iy * nxh + m;
      if (policy == ZeroModePolicy::project && m == 0 && iy != 0) {
        sym.projected[idx] = 1;
        sym.values[idx] = {0.0, 0.0};
      } else {
        sym.values[idx] = symbol_value(kx, ky, eps_reg);
      }
    }
  }
  return sym;
}

StageFactors stage_factors(const LinearSymbol& symbol, double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("time step must be positive");
  StageFactors f;
  f.half.resize(symbol.values.size());
  f.full.resize(symbol.values.size());
  for (std::size_t i = 0; i < symbol.values.size(); ++i) {
    const auto l = symbol.values[i];
    f.half[i] = clamp_factor(std::exp(-0.5 * dt * l), f.clamped);
    f.full[i] = clamp_factor(std::exp(-dt * l), f.clamped);
  }
  return f;
}

double nonlinear_coefficient(const EquationSpec& spec) {
  const double s = sign_of(spec.branch);
  return spec.kind == EquationKind::quadratic ? -3.0 * s : -2.0 * s;
}

NonlinearOperator::NonlinearOperator(const SpectralGrid& grid, const EquationSpec& spec,
                                     Dealias dealias, ZeroModePolicy policy)
    : fft_(grid.ny(), grid.nx()),
      power_(spec.kind == EquationKind::quadratic ? 2 : 3) {
  const std::size_t nx = grid.nx();
  const std::size_t ny = grid.ny();
  const std::size_t nxh = grid.nx_half();
  // The forward transform below is unnormalised; fold 1/(nx ny) into the gain.
  const double coef = nonlinear_coefficient(spec) / static_cast<double>(nx * ny);
  gain_.resize(ny * nxh);
  for (std::size_t iy = 0; iy < ny; ++iy) {
    // signed mode index along y
    const std::size_t my = iy <= ny / 2 ? iy : ny - iy;
    for (std::size_t m = 0; m < nxh; ++m) {
      bool keep = true;
      if (dealias == Dealias::two_thirds) keep = 3 * m <= nx && 3 * my <= ny;
      if (policy == ZeroModePolicy::project && m == 0 && iy != 0) keep = false;
      gain_[iy * nxh + m] =
          keep ? std::complex<double>(0.0, coef * grid.kx_half(m)) : std::complex<double>{};
    }
  }
}

void NonlinearOperator::apply(const Spectrum& state, Spectrum& out) {
  auto spec = fft_.spectrum_buffer();
  std::copy(state.coeffs.begin(), state.coeffs.end(), spec.begin());
  fft_.execute_inverse();
  finish(out);
}

void NonlinearOperator::apply_physical(std::span<const double> field, Spectrum& out) {
  auto real = fft_.real_buffer();
  if (field.size() != real.size()) throw InputError("field does not match the grid");
  std::copy(field.begin(), field.end(), real.begin());
  finish(out);
}

void NonlinearOperator::finish(Spectrum& out) {
  auto real = fft_.real_buffer();
  if (power_ == 2) {
    for (double& v : real) v *= v;
  } else {
    for (double& v : real) v = v * v * v;
  }
  fft_.execute_forward();
  const auto spec = fft_.spectrum_buffer();
  for (std::size_t i = 0; i < gain_.size(); ++i) out.coeffs[i] = spec[i] * gain_[i];
}

Spectrum nonlinear_term(const EquationSpec& spec, const Field2D& field, const SpectralGrid& grid,
                        Dealias dealias, ZeroModePolicy policy) {
  if (field.geometry != grid.geometry()) throw InputError("field does not match the grid");
  for (double v : field.values) {
    if (!std::isfinite(v)) throw NonFiniteValues("non-finite sample in nonlinear term input");
  }
  NonlinearOperator op(grid, spec, dealias, policy);
  Spectrum out(grid);
  op.apply_physical(field.values, out);
  if (!all_finite(out)) throw NonFiniteValues("nonlinear term overflowed");
  return out;
}

void restore_realness(Spectrum& s) {
  const std::size_t ny = s.ny;
  const std::size_t cols[2] = {0, s.nx / 2};
  for (std::size_t m : cols) {
    for (std::size_t iy = 0; iy <= ny / 2; ++iy) {
      const std::size_t partner = (ny - iy) % ny;
      const auto a = s.at(iy, m);
      const auto b = s.at(partner, m);
      const auto v = 0.5 * (a + std::conj(b));
      s.at(iy, m) = v;
      s.at(partner, m) = std::conj(v);
    }
  }
}

void apply_projection(const LinearSymbol& symbol, Spectrum& s) {
  if (symbol.policy != ZeroModePolicy::project) return;
  for (std::size_t i = 0; i < s.coeffs.size(); ++i) {
    if (symbol.projected[i]) s.coeffs[i] = {0.0, 0.0};
  }
}

bool all_finite(const Spectrum& s) {
  for (const auto& c : s.coeffs) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
  }
  return true;
}

Field2D spectral_derivative(const Field2D& field, int order_x, int order_y) {
  const auto& g = field.geometry;
  if (order_x < 0 || order_y < 0) throw InputError("derivative order must be non-negative");
  RealFft fft(g.ny, g.nx);
  Spectrum s = to_spectrum(field, fft);
  const auto kx = fft_wavenumbers(g.nx, g.domain.x_length());
  const auto ky = fft_wavenumbers(g.ny, g.domain.y_length());
  const std::size_t nxh = s.nx_half();
  for (std::size_t iy = 0; iy < g.ny; ++iy) {
    const bool y_nyquist = g.ny % 2 == 0 && iy == g.ny / 2;
    const auto fy = (y_nyquist && order_y % 2 == 1) ? std::complex<double>{}
                                                     : derivative_factor(ky[iy], order_y);
    for (std::size_t m = 0; m < nxh; ++m) {
      const bool x_nyquist = g.nx % 2 == 0 && m == g.nx / 2;
      const auto fx = (x_nyquist && order_x % 2 == 1) ? std::complex<double>{}
                                                       : derivative_factor(kx[m], order_x);
      s.at(iy, m) *= fx * fy;
    }
  }
  return to_field(s, g, fft);
}

std::vector<double> spectral_derivative_1d(std::span<const double> samples, double period,
                                           int order) {
  const std::size_t n = samples.size();
  if (n < 2) throw InputError("need at least two samples");
  if (!(period > 0.0)) throw InputError("period must be positive");
  Field2D f(Geometry{n, 1, Domain{0.0, period, 0.0, 1.0}});
  std::copy(samples.begin(), samples.end(), f.values.begin());
  return spectral_derivative(f, order, 0).values;
}

}  // namespace kpwave
