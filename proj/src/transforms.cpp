#include "kpwave/transforms.hpp"

#include <cmath>

#include "kpwave/error.hpp"

namespace kpwave {

CanonicalScaling scale_factors(const EquationSpec& spec) {
  if (spec.nonlin_coeff == 0.0 || !(spec.nu0 > 0.0)) {
    throw DegenerateEquation("scale factors need a nonzero coefficient and positive nu0");
  }
  const double b = std::abs(spec.nonlin_coeff);
  const double nu0 = spec.nu0;
  CanonicalScaling s;
  s.kind = spec.kind;
  if (spec.kind == EquationKind::quadratic) {
    s.s_t = -std::pow(b, 1.5) / std::sqrt(8.0 * nu0);
    s.s_x = std::sqrt(b) / std::sqrt(2.0 * nu0);
    s.s_y = b / std::sqrt(2.0 * nu0);
  } else {
    s.s_t = -std::pow(b, 1.5) / (6.0 * std::sqrt(3.0 * nu0));
    s.s_x = std::sqrt(b) / std::sqrt(3.0 * nu0);
    s.s_y = b / (3.0 * std::sqrt(nu0));
  }
  return s;
}

CanonicalCoords to_canonical(const MultiscaleCoords& p, const CanonicalScaling& s) {
  return {s.s_t * p.chi, s.s_x * p.tau, s.s_y * p.eta};
}

MultiscaleCoords to_multiscale(const CanonicalCoords& p, const CanonicalScaling& s) {
  return {p.sim_time / s.s_t, p.profile_coord / s.s_x, p.transverse / s.s_y};
}

MultiscaleCoords physical_to_multiscale(const PhysicalPoint& p, const PhysicalScaling& ps) {
  const double eps = ps.epsilon;
  const double inv_l = 1.0 / ps.length;
  MultiscaleCoords m;
  m.tau = (ps.speed * p.time - p.x) * inv_l;
  if (ps.regime == Regime::compressible) {
    m.chi = eps * p.x * inv_l;
    m.eta = std::sqrt(eps) * p.y * inv_l;
  } else {
    m.chi = eps * eps * p.x * inv_l;
    m.eta = eps * p.y * inv_l;
  }
  return m;
}

PhysicalPoint multiscale_to_physical(const MultiscaleCoords& m, const PhysicalScaling& ps) {
  const double eps = ps.epsilon;
  PhysicalPoint p;
  if (ps.regime == Regime::compressible) {
    p.x = m.chi * ps.length / eps;
    p.y = m.eta * ps.length / std::sqrt(eps);
  } else {
    p.x = m.chi * ps.length / (eps * eps);
    p.y = m.eta * ps.length / eps;
  }
  p.time = (m.tau * ps.length + p.x) / ps.speed;
  return p;
}

double canonical_field_to_physical_velocity(double value, const PhysicalScaling& ps) {
  return ps.epsilon * ps.speed * value;
}

}  // namespace kpwave
