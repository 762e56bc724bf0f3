#pragma once

#include "kpwave/material.hpp"

namespace kpwave {

/// Dimensionless multiple-scales coordinates: chi (slow propagation distance),
/// tau (retarded time in the frame moving at c), eta (slow transverse coordinate).
struct MultiscaleCoords {
  double chi = 0.0;
  double tau = 0.0;
  double eta = 0.0;
};

/// Coordinates of the canonical KP equation.
///
/// `sim_time` is the evolution variable of the solver but is a scaled propagation
/// distance (proportional to X), not laboratory time. `profile_coord` is a scaled
/// retarded time, and `transverse` a scaled Y.
struct CanonicalCoords {
  double sim_time = 0.0;
  double profile_coord = 0.0;
  double transverse = 0.0;
};

/// Laboratory point: reference position (X, Y) in metres and time in seconds.
struct PhysicalPoint {
  double x = 0.0;
  double y = 0.0;
  double time = 0.0;
};

/// Multiplicative factors (sim_time, profile_coord, transverse) = (s_t chi, s_x tau, s_y eta).
struct CanonicalScaling {
  EquationKind kind = EquationKind::quadratic;
  double s_t = 0.0;  ///< always negative
  double s_x = 0.0;
  double s_y = 0.0;
};

enum class Regime { compressible, incompressible };

/// Slow-variable scalings of the asymptotic expansion.
///   compressible:   chi = eps X / L,   eta = sqrt(eps) Y / L, tau = (c t - X) / L
///   incompressible: chi = eps^2 X / L, eta = eps Y / L,       tau = (c_t t - X) / L
struct PhysicalScaling {
  double epsilon = 0.01;
  double length = 1.0;  ///< L, metres
  double speed = 1.0;   ///< frame speed c (c_ell or c_t), m/s
  Regime regime = Regime::compressible;
};

CanonicalScaling scale_factors(const EquationSpec& spec);

CanonicalCoords to_canonical(const MultiscaleCoords& p, const CanonicalScaling& s);
MultiscaleCoords to_multiscale(const CanonicalCoords& p, const CanonicalScaling& s);

MultiscaleCoords physical_to_multiscale(const PhysicalPoint& p, const PhysicalScaling& ps);
PhysicalPoint multiscale_to_physical(const MultiscaleCoords& p, const PhysicalScaling& ps);

/// Particle-velocity amplitude (m/s) of one canonical sample: epsilon * c * value.
/// For the compressible regime this is u_t, for the incompressible one v_t.
double canonical_field_to_physical_velocity(double value, const PhysicalScaling& ps);

}  // namespace kpwave
