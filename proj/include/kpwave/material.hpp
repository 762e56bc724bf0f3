#pragma once

#include <string_view>

namespace kpwave {

enum class EquationKind { quadratic, cubic };

/// Sign in front of the nonlinear term of the canonical equation:
///   quadratic: (U_t -/+ 6 U U_x + U_xxx)_x = -U_yy
///   cubic:     (V_t +/- 6 V^2 V_x + V_xxx)_x = -V_yy
/// `plus` always means the nonlinear term enters with a + sign.
enum class SignBranch { plus, minus };

/// +1 for plus, -1 for minus.
constexpr double sign_of(SignBranch b) { return b == SignBranch::plus ? 1.0 : -1.0; }

std::string_view to_string(EquationKind k);
std::string_view to_string(SignBranch b);
EquationKind parse_equation_kind(std::string_view s);  // "quadratic"/"quad", "cubic"
SignBranch parse_sign_branch(std::string_view s);      // "plus"/"+", "minus"/"-"

/// Taylor constants of the constitutive coefficients alpha and gamma about the
/// undeformed state (Pa).
struct TaylorConstants {
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  double gamma0 = 0.0;
  double gamma1 = 0.0;
  double gamma2 = 0.0;
};

/// Compressible isotropic solid in plane motion.
///
/// gamma0 must coincide with the shear modulus mu (relative tolerance 1e-12).
/// The dispersion parameter is stored in its dimensionless form nu0.
class MaterialCompressible {
 public:
  MaterialCompressible(double lambda, double mu, double rho0, TaylorConstants taylor, double nu0);

  /// Builds nu0 = nu / (epsilon * rho0 * L^2) from the physical dispersion parameter (Pa s^2).
  static MaterialCompressible with_physical_dispersion(double lambda, double mu, double rho0,
                                                       TaylorConstants taylor, double nu,
                                                       double length, double epsilon);

  double lambda() const { return lambda_; }
  double mu() const { return mu_; }
  double rho0() const { return rho0_; }
  const TaylorConstants& taylor() const { return taylor_; }
  double nu0() const { return nu0_; }

 private:
  double lambda_;
  double mu_;
  double rho0_;
  TaylorConstants taylor_;
  double nu0_;
};

/// Incompressible solid described by the Landau constants A (third order) and D (fourth order).
class MaterialIncompressible {
 public:
  MaterialIncompressible(double mu, double rho0, double landau_a, double landau_d, double nu0);

  /// Builds nu0 = nu / (epsilon^2 * rho0 * L^2).
  static MaterialIncompressible with_physical_dispersion(double mu, double rho0, double landau_a,
                                                         double landau_d, double nu, double length,
                                                         double epsilon);

  double mu() const { return mu_; }
  double rho0() const { return rho0_; }
  double landau_a() const { return a_; }
  double landau_d() const { return d_; }
  double nu0() const { return nu0_; }

 private:
  double mu_;
  double rho0_;
  double a_;
  double d_;
  double nu0_;
};

struct WaveSpeeds {
  double c_ell = 0.0;  ///< longitudinal speed sqrt((lambda + 2 mu) / rho0), m/s
  double c_t = 0.0;    ///< transverse speed sqrt(mu / rho0), m/s
  /// rho0 c_ell^2 - (alpha1 + gamma0 + gamma1), Pa. Zero when the Taylor constants
  /// are consistent with the linear moduli.
  double identity_residual = 0.0;
};

WaveSpeeds wave_speeds(const MaterialCompressible& m);

/// Transverse speed sqrt(mu / rho0) of an incompressible solid.
double shear_speed(const MaterialIncompressible& m);

/// beta = (c_t^2 / c_ell^2) (alpha2 + gamma2 + gamma1) / (3 gamma0).
double beta_quadratic(const MaterialCompressible& m);

/// beta3 = (3/2) (1 + (A/2 + D) / mu).
double beta3_landau(const MaterialIncompressible& m);

/// beta3 = (3/2) gamma1 / gamma0.
double beta3_landau(double gamma0, double gamma1);

/// Which canonical equation to solve.
struct EquationSpec {
  EquationKind kind = EquationKind::quadratic;
  SignBranch branch = SignBranch::plus;
  double nonlin_coeff = -1.0;  ///< beta or beta3, never zero
  double nu0 = 1.0;            ///< dimensionless dispersion, > 0

  /// Equation with an explicitly chosen branch. The coefficient is set to a unit
  /// value of the matching sign; its magnitude does not enter the canonical equation.
  static EquationSpec canonical(EquationKind kind, SignBranch branch);

  /// Tag used in snapshot files, e.g. "quadratic-plus".
  std::string tag() const;
};

/// Selects the sign branch from the coefficient sign.
///   quadratic: beta > 0  -> minus, beta < 0  -> plus
///   cubic:     beta3 > 0 -> plus,  beta3 < 0 -> minus
/// Throws DegenerateEquation for a zero coefficient or nu0 <= 0.
EquationSpec equation_spec(EquationKind kind, double nonlin_coeff, double nu0);

}  // namespace kpwave
