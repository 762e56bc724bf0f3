#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "kpwave/material.hpp"

namespace kpwave {

/// Line-soliton parameters. The speed is derived on construction:
/// 4 kappa^2 + theta^2 (quadratic) or kappa^2 + theta^2 (cubic).
class SolitonParams {
 public:
  /// Throws InputError unless kappa > 0 and all values are finite.
  SolitonParams(EquationKind kind, double kappa, double theta, double x0, SignBranch branch);

  EquationKind kind() const { return kind_; }
  double kappa() const { return kappa_; }
  double theta() const { return theta_; }
  double x0() const { return x0_; }
  SignBranch branch() const { return branch_; }
  double speed() const { return speed_; }

 private:
  EquationKind kind_;
  double kappa_;
  double theta_;
  double x0_;
  SignBranch branch_;
  double speed_;
};

double soliton_speed(EquationKind kind, double kappa, double theta);

/// Closed-form line soliton with phase xi = kappa (x + theta y - speed t + x0):
///   quadratic: s 2 kappa^2 sech^2(xi)
///   cubic:     s kappa sech(xi)
/// with s = +1 on the plus branch and -1 on the minus branch.
///
/// The cubic minus-branch profile is returned as written for symmetry, but it does not
/// solve the minus-branch equation (the defocusing case has no bright soliton).
double line_soliton(const SolitonParams& p, double t, double x, double y);

/// Samples of the soliton along y = 0 at time t on [x_min, x_min + period), made exactly
/// periodic by summing the translates x + m period until they fall below 1e-18 of the peak.
/// Plain sampling leaves a derivative jump of the size of the tail at the seam, which
/// spectral derivatives amplify.
std::vector<double> periodic_soliton_samples(const SolitonParams& p, double t, double x_min,
                                             double period, std::size_t n);

enum class InitialCondition { soliton_quad, soliton_cubic, radial_quad, radial_cubic };

std::string_view to_string(InitialCondition ic);
InitialCondition parse_initial_condition(std::string_view s);

/// soliton_quad: 2 sech^2(x); soliton_cubic: sech(x);
/// radial_quad: -d/dx sech^2(r); radial_cubic: -d/dx sech(r), r = sqrt(x^2 + y^2),
/// with the removable singularity at r = 0 set to 0.
double initial_condition(InitialCondition ic, double x, double y);

/// Relative max-norm residual of the y-independent travelling-wave reduction
///   quadratic: -v U'' + 3 s (U^2)'' + U''''
///   cubic:     -v V'' + 2 s (V^3)'' + V''''
/// for periodic samples over one period, evaluated spectrally. Returns 0 for a zero
/// profile. Throws InputError for fewer than 16 samples or non-finite values.
double boussinesq_residual(std::span<const double> profile, double period, double upsilon,
                           EquationKind kind, SignBranch branch);

/// Shock-formation distance of the dispersionless 1D reduction
///   quadratic: U_chi + 3 beta U U_tau = 0,   characteristic slope c = 3 beta U
///   cubic:     V_chi - beta3 V^2 V_tau = 0,  characteristic slope c = -beta3 V^2
/// chi_s = -1 / min_tau c'(tau). Returns nullopt when the minimum is >= 0 (no crossing).
/// Throws DegenerateEquation for a zero coefficient.
std::optional<double> shock_distance(std::span<const double> profile, double period,
                                     EquationKind kind, double coeff);

}  // namespace kpwave
