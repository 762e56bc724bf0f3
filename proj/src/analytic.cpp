#include "kpwave/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "kpwave/error.hpp"
#include "kpwave/spectral.hpp"

namespace kpwave {

namespace {

double sech(double z) { return 1.0 / std::cosh(z); }

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

void check_profile(std::span<const double> profile, double period) {
  if (profile.size() < 16) throw InputError("profile needs at least 16 samples");
  if (!(period > 0.0) || !std::isfinite(period)) throw InputError("period must be positive");
  for (double v : profile) {
    if (!std::isfinite(v)) throw InputError("profile contains non-finite samples");
  }
}

}  // namespace

SolitonParams::SolitonParams(EquationKind kind, double kappa, double theta, double x0,
                             SignBranch branch)
    : kind_(kind), kappa_(kappa), theta_(theta), x0_(x0), branch_(branch) {
  if (!std::isfinite(kappa) || !std::isfinite(theta) || !std::isfinite(x0)) {
    throw InputError("soliton parameters must be finite");
  }
  if (!(kappa > 0.0)) throw InputError("soliton steepness kappa must be positive");
  speed_ = soliton_speed(kind, kappa, theta);
}

double soliton_speed(EquationKind kind, double kappa, double theta) {
  if (!(kappa > 0.0)) throw InputError("soliton steepness kappa must be positive");
  const double k2 = kappa * kappa;
  return (kind == EquationKind::quadratic ? 4.0 * k2 : k2) + theta * theta;
}

double line_soliton(const SolitonParams& p, double t, double x, double y) {
  const double xi = p.kappa() * (x + p.theta() * y - p.speed() * t + p.x0());
  const double s = sign_of(p.branch());
  if (p.kind() == EquationKind::quadratic) {
    const double h = sech(xi);
    return s * 2.0 * p.kappa() * p.kappa() * h * h;
  }
  return s * p.kappa() * sech(xi);
}

std::vector<double> periodic_soliton_samples(const SolitonParams& p, double t, double x_min,
                                             double period, std::size_t n) {
  if (!(period > 0.0) || n == 0) throw InputError("need a positive period and sample count");
  // Decay rate of the tail: exp(-2 kappa |xi|) or exp(-kappa |xi|).
  const double rate = p.kind() == EquationKind::quadratic ? 2.0 * p.kappa() : p.kappa();
  const auto images = static_cast<long>(std::ceil(42.0 / (rate * period))) + 1;
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = x_min + period * static_cast<double>(i) / static_cast<double>(n);
    double v = 0.0;
    for (long m = -images; m <= images; ++m) {
      v += line_soliton(p, t, x + static_cast<double>(m) * period, 0.0);
    }
    out[i] = v;
  }
  return out;
}

std::string_view to_string(InitialCondition ic) {
  switch (ic) {
    case InitialCondition::soliton_quad: return "soliton_quad";
    case InitialCondition::soliton_cubic: return "soliton_cubic";
    case InitialCondition::radial_quad: return "radial_quad";
    case InitialCondition::radial_cubic: return "radial_cubic";
  }
  return "unknown";
}

InitialCondition parse_initial_condition(std::string_view s) {
  for (auto ic : {InitialCondition::soliton_quad, InitialCondition::soliton_cubic,
                  InitialCondition::radial_quad, InitialCondition::radial_cubic}) {
    if (s == to_string(ic)) return ic;
  }
  throw ConfigError("unknown initial condition '" + std::string(s) + "'");
}

double initial_condition(InitialCondition ic, double x, double y) {
  switch (ic) {
    case InitialCondition::soliton_quad: {
      const double h = sech(x);
      return 2.0 * h * h;
    }
    case InitialCondition::soliton_cubic:
      return sech(x);
    case InitialCondition::radial_quad:
    case InitialCondition::radial_cubic: {
      const double r = std::hypot(x, y);
      if (r < 1e-12) return 0.0;
      const double h = sech(r);
      const double base = h * std::tanh(r) * x / r;
      return ic == InitialCondition::radial_quad ? 2.0 * h * base : base;
    }
  }
  return 0.0;
}

double boussinesq_residual(std::span<const double> profile, double period, double upsilon,
                           EquationKind kind, SignBranch branch) {
  check_profile(profile, period);
  const double scale = max_abs(profile);
  if (scale == 0.0) return 0.0;

  const std::size_t n = profile.size();
  const double s = sign_of(branch);
  std::vector<double> power(n);
  double weight = 0.0;
  if (kind == EquationKind::quadratic) {
    for (std::size_t i = 0; i < n; ++i) power[i] = profile[i] * profile[i];
    weight = 3.0 * s;
  } else {
    for (std::size_t i = 0; i < n; ++i) power[i] = profile[i] * profile[i] * profile[i];
    weight = 2.0 * s;
  }
  const auto u2 = spectral_derivative_1d(profile, period, 2);
  const auto u4 = spectral_derivative_1d(profile, period, 4);
  const auto p2 = spectral_derivative_1d(power, period, 2);
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    worst = std::max(worst, std::abs(-upsilon * u2[i] + weight * p2[i] + u4[i]));
  }
  return worst / scale;
}

std::optional<double> shock_distance(std::span<const double> profile, double period,
                                     EquationKind kind, double coeff) {
  if (coeff == 0.0 || !std::isfinite(coeff)) {
    throw DegenerateEquation("shock distance needs a nonzero nonlinearity coefficient");
  }
  check_profile(profile, period);
  std::vector<double> slope(profile.size());
  for (std::size_t i = 0; i < profile.size(); ++i) {
    const double u = profile[i];
    slope[i] = kind == EquationKind::quadratic ? 3.0 * coeff * u : -coeff * u * u;
  }
  const auto ds = spectral_derivative_1d(slope, period, 1);
  const double min_ds = *std::min_element(ds.begin(), ds.end());
  // Rounding floor of the spectral derivative of a constant slope.
  const double floor = 1e-12 * static_cast<double>(profile.size()) * max_abs(slope) * 2.0 *
                       std::numbers::pi / period;
  if (min_ds >= -floor) return std::nullopt;
  return -1.0 / min_ds;
}

}  // namespace kpwave
