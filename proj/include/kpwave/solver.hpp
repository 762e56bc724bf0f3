#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "kpwave/analytic.hpp"
#include "kpwave/error.hpp"
#include "kpwave/grid.hpp"
#include "kpwave/material.hpp"
#include "kpwave/spectral.hpp"

namespace kpwave {

struct SolverConfig {
  EquationSpec spec;
  SpectralGrid grid;
  double dt = 1e-4;
  double t_end = 0.0;
  double eps_reg = 1e-16;
  ZeroModePolicy zero_mode_policy = ZeroModePolicy::project;
  Dealias dealias = Dealias::off;
  /// Requested output times in [0, t_end], sorted. Empty means {0, t_end}.
  std::vector<double> snapshot_times;
  /// Diagnostics are recorded every `diagnostics_stride` steps (and at both ends).
  std::size_t diagnostics_stride = 100;
  /// Hex digest stored in snapshots. Empty: derived from `describe(config)`.
  std::string digest;
};

/// Canonical one-line rendering of every numeric setting of a run.
std::string describe(const SolverConfig& config);

/// Throws ConfigError for dt <= 0, t_end < 0, eps_reg <= 0, unsorted or out-of-range
/// snapshot times.
void validate(const SolverConfig& config);

/// Number of fixed steps covering [0, t_end]: ceil(t_end / dt), ignoring rounding noise.
std::size_t step_count(double t_end, double dt);

struct Snapshot {
  Field2D field;
  double sim_time = 0.0;
  std::string equation;  ///< EquationSpec::tag(), e.g. "quadratic-plus"
  std::string digest;
};

struct PeakLocation {
  double x = 0.0;
  double y = 0.0;
  double value = 0.0;  ///< parabolic estimate of the signed extremum
};

struct Diagnostics {
  double time = 0.0;
  double mean = 0.0;
  double l2_norm = 0.0;  ///< sqrt(sum u^2 dx dy)
  double min = 0.0;
  double max = 0.0;
  /// Largest |u| refined by a 3-point parabola along x; empty for an identically zero field.
  std::optional<PeakLocation> peak;
};

Diagnostics diagnostics(const Field2D& field, double time = 0.0);

struct RunResult {
  std::vector<Snapshot> snapshots;
  std::vector<Diagnostics> series;
  std::size_t steps = 0;
  std::size_t clamped_factors = 0;
};

/// Raised when the state stops being finite. Carries the last finite state.
class InstabilityError : public Error {
 public:
  InstabilityError(const std::string& what, double blow_up_time, Snapshot last_finite)
      : Error(what), blow_up_time_(blow_up_time), last_finite_(std::move(last_finite)) {}
  double blow_up_time() const { return blow_up_time_; }
  const Snapshot& last_finite() const { return last_finite_; }

 private:
  double blow_up_time_;
  Snapshot last_finite_;
};

/// Samples an initial condition on the grid.
Field2D sample_initial(const SpectralGrid& grid, InitialCondition ic);
/// Samples a line soliton at time t on the grid.
Field2D sample_soliton(const SpectralGrid& grid, const SolitonParams& p, double t);

/// Optional hook called after every step with (step index, time).
using StepObserver = std::function<void(std::size_t, double)>;

/// Integrates the canonical equation from `initial` over [0, t_end] with the
/// integrating-factor RK4 scheme. Snapshots snap to the nearest completed step and
/// record the time actually reached.
RunResult run(const SolverConfig& config, const Field2D& initial,
              const StepObserver& observer = {});

}  // namespace kpwave
