#include "kpwave/validation/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "kpwave/error.hpp"

namespace kpwave::validation {

namespace {

// Signed index of FFT bin m out of n; the Nyquist bin n/2 maps to -n/2.
long signed_index(std::size_t m, std::size_t n) {
  return m < n / 2 ? static_cast<long>(m) : static_cast<long>(m) - static_cast<long>(n);
}

}  // namespace

std::vector<std::complex<double>> brute_force_nonlinear(const EquationSpec& spec,
                                                        const Field2D& field, Dealias dealias) {
  const auto& g = field.geometry;
  const std::size_t nx = g.nx;
  const std::size_t ny = g.ny;
  const std::size_t half = nx / 2 + 1;
  const int power = spec.kind == EquationKind::quadratic ? 2 : 3;
  const double s = spec.branch == SignBranch::plus ? 1.0 : -1.0;
  const double c = (spec.kind == EquationKind::quadratic ? -3.0 : -2.0) * s;
  const double two_pi = 2.0 * std::numbers::pi;

  std::vector<double> product(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) product[i] = std::pow(field.values[i], power);

  std::vector<std::complex<double>> out(ny * half);
  for (std::size_t my = 0; my < ny; ++my) {
    for (std::size_t mx = 0; mx < half; ++mx) {
      const long sx = signed_index(mx, nx);
      const long sy = signed_index(my, ny);
      if (dealias == Dealias::two_thirds &&
          (3 * std::labs(sx) > static_cast<long>(nx) || 3 * std::labs(sy) > static_cast<long>(ny))) {
        continue;
      }
      std::complex<double> acc = 0.0;
      for (std::size_t jy = 0; jy < ny; ++jy) {
        for (std::size_t jx = 0; jx < nx; ++jx) {
          // Reduce the phase index modulo n before scaling to keep the angle small.
          const double phase = two_pi * (static_cast<double>((mx * jx) % nx) / static_cast<double>(nx) +
                                         static_cast<double>((my * jy) % ny) / static_cast<double>(ny));
          acc += product[jy * nx + jx] * std::polar(1.0, -phase);
        }
      }
      acc /= static_cast<double>(nx * ny);
      const double kx = two_pi * static_cast<double>(sx) / g.domain.x_length();
      out[my * half + mx] = c * std::complex<double>(0.0, kx) * acc;
    }
  }
  return out;
}

std::optional<double> characteristic_crossing(const std::function<double(double)>& profile,
                                              double period, EquationKind kind, double coeff,
                                              std::size_t samples) {
  if (coeff == 0.0) throw DegenerateEquation("zero nonlinearity coefficient");
  if (samples < 2) throw InputError("need at least two characteristics");
  auto slope = [&](double u) { return kind == EquationKind::quadratic ? 3.0 * coeff * u : -coeff * u * u; };
  const double h = period / static_cast<double>(samples);
  std::optional<double> first;
  double prev_c = slope(profile(0.0));
  for (std::size_t j = 1; j <= samples; ++j) {
    const double c = slope(profile(h * static_cast<double>(j)));
    if (prev_c > c) {
      const double chi = h / (prev_c - c);
      if (!first || chi < *first) first = chi;
    }
    prev_c = c;
  }
  return first;
}

double relative_max_error(const std::vector<std::complex<double>>& a,
                          const std::vector<std::complex<double>>& b) {
  if (a.size() != b.size()) throw InputError("size mismatch");
  double diff = 0.0;
  double scale = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    diff = std::max(diff, std::abs(a[i] - b[i]));
    scale = std::max(scale, std::abs(b[i]));
  }
  return scale > 0.0 ? diff / scale : diff;
}

}  // namespace kpwave::validation
