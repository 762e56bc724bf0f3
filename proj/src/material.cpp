#include "kpwave/material.hpp"

#include <cmath>
#include <string>

#include "kpwave/error.hpp"

namespace kpwave {

namespace {

void require_finite(double v, const char* name) {
  if (!std::isfinite(v)) throw InvalidMaterial(std::string(name) + " must be finite");
}

}  // namespace

std::string_view to_string(EquationKind k) {
  return k == EquationKind::quadratic ? "quadratic" : "cubic";
}

std::string_view to_string(SignBranch b) { return b == SignBranch::plus ? "plus" : "minus"; }

EquationKind parse_equation_kind(std::string_view s) {
  if (s == "quadratic" || s == "quad") return EquationKind::quadratic;
  if (s == "cubic") return EquationKind::cubic;
  throw ConfigError("unknown equation kind '" + std::string(s) + "' (expected quadratic or cubic)");
}

SignBranch parse_sign_branch(std::string_view s) {
  if (s == "plus" || s == "+") return SignBranch::plus;
  if (s == "minus" || s == "-") return SignBranch::minus;
  throw ConfigError("unknown sign branch '" + std::string(s) + "' (expected plus or minus)");
}

MaterialCompressible::MaterialCompressible(double lambda, double mu, double rho0,
                                           TaylorConstants taylor, double nu0)
    : lambda_(lambda), mu_(mu), rho0_(rho0), taylor_(taylor), nu0_(nu0) {
  require_finite(lambda, "lambda");
  require_finite(mu, "mu");
  require_finite(rho0, "rho0");
  require_finite(taylor.alpha1, "alpha1");
  require_finite(taylor.alpha2, "alpha2");
  require_finite(taylor.gamma0, "gamma0");
  require_finite(taylor.gamma1, "gamma1");
  require_finite(taylor.gamma2, "gamma2");
  require_finite(nu0, "nu0");
  if (!(mu > 0.0)) throw InvalidMaterial("shear modulus mu must be positive");
  if (!(rho0 > 0.0)) throw InvalidMaterial("density rho0 must be positive");
  if (!(lambda + 2.0 * mu > 0.0)) throw InvalidMaterial("lambda + 2 mu must be positive");
  if (std::abs(taylor.gamma0 - mu) > 1e-12 * std::abs(mu)) {
    throw InvalidMaterial("gamma0 must equal the shear modulus mu");
  }
  if (!(nu0 > 0.0)) throw InvalidMaterial("dispersion nu0 must be positive");
}

MaterialCompressible MaterialCompressible::with_physical_dispersion(double lambda, double mu,
                                                                    double rho0,
                                                                    TaylorConstants taylor,
                                                                    double nu, double length,
                                                                    double epsilon) {
  if (!(length > 0.0) || !(epsilon > 0.0) || !(rho0 > 0.0)) {
    throw InvalidMaterial("L, epsilon and rho0 must be positive to form nu0");
  }
  return MaterialCompressible(lambda, mu, rho0, taylor, nu / (epsilon * rho0 * length * length));
}

MaterialIncompressible::MaterialIncompressible(double mu, double rho0, double landau_a,
                                               double landau_d, double nu0)
    : mu_(mu), rho0_(rho0), a_(landau_a), d_(landau_d), nu0_(nu0) {
  require_finite(mu, "mu");
  require_finite(rho0, "rho0");
  require_finite(landau_a, "A");
  require_finite(landau_d, "D");
  require_finite(nu0, "nu0");
  if (!(mu > 0.0)) throw InvalidMaterial("shear modulus mu must be positive");
  if (!(rho0 > 0.0)) throw InvalidMaterial("density rho0 must be positive");
  if (!(nu0 > 0.0)) throw InvalidMaterial("dispersion nu0 must be positive");
}

MaterialIncompressible MaterialIncompressible::with_physical_dispersion(
    double mu, double rho0, double landau_a, double landau_d, double nu, double length,
    double epsilon) {
  if (!(length > 0.0) || !(epsilon > 0.0) || !(rho0 > 0.0)) {
    throw InvalidMaterial("L, epsilon and rho0 must be positive to form nu0");
  }
  return MaterialIncompressible(mu, rho0, landau_a, landau_d,
                                nu / (epsilon * epsilon * rho0 * length * length));
}

WaveSpeeds wave_speeds(const MaterialCompressible& m) {
  const double longitudinal = (m.lambda() + 2.0 * m.mu()) / m.rho0();
  const double transverse = m.mu() / m.rho0();
  if (longitudinal < 0.0 || transverse < 0.0) {
    throw InvalidMaterial("negative squared wave speed");
  }
  WaveSpeeds s;
  s.c_ell = std::sqrt(longitudinal);
  s.c_t = std::sqrt(transverse);
  const auto& t = m.taylor();
  s.identity_residual = m.rho0() * longitudinal - (t.alpha1 + t.gamma0 + t.gamma1);
  return s;
}

double shear_speed(const MaterialIncompressible& m) { return std::sqrt(m.mu() / m.rho0()); }

double beta_quadratic(const MaterialCompressible& m) {
  const auto& t = m.taylor();
  // c_t^2 / c_ell^2 = mu / (lambda + 2 mu); rho0 cancels.
  const double ratio = m.mu() / (m.lambda() + 2.0 * m.mu());
  return ratio * (t.alpha2 + t.gamma2 + t.gamma1) / (3.0 * t.gamma0);
}

double beta3_landau(const MaterialIncompressible& m) {
  return 1.5 * (1.0 + (0.5 * m.landau_a() + m.landau_d()) / m.mu());
}

double beta3_landau(double gamma0, double gamma1) {
  if (gamma0 == 0.0) throw InvalidMaterial("gamma0 must be nonzero");
  return 1.5 * gamma1 / gamma0;
}

EquationSpec EquationSpec::canonical(EquationKind kind, SignBranch branch) {
  EquationSpec s;
  s.kind = kind;
  s.branch = branch;
  const bool positive = (kind == EquationKind::quadratic) == (branch == SignBranch::minus);
  s.nonlin_coeff = positive ? 1.0 : -1.0;
  s.nu0 = 1.0;
  return s;
}

std::string EquationSpec::tag() const {
  return std::string(to_string(kind)) + "-" + std::string(to_string(branch));
}

EquationSpec equation_spec(EquationKind kind, double nonlin_coeff, double nu0) {
  if (!std::isfinite(nonlin_coeff) || nonlin_coeff == 0.0) {
    throw DegenerateEquation("nonlinearity coefficient must be finite and nonzero");
  }
  if (!std::isfinite(nu0) || !(nu0 > 0.0)) {
    throw DegenerateEquation("dispersion nu0 must be finite and positive");
  }
  EquationSpec s;
  s.kind = kind;
  s.nonlin_coeff = nonlin_coeff;
  s.nu0 = nu0;
  if (kind == EquationKind::quadratic) {
    s.branch = nonlin_coeff > 0.0 ? SignBranch::minus : SignBranch::plus;
  } else {
    s.branch = nonlin_coeff > 0.0 ? SignBranch::plus : SignBranch::minus;
  }
  return s;
}

}  // namespace kpwave
