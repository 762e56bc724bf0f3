#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "kpwave/analytic.hpp"
#include "kpwave/error.hpp"
#include "kpwave/grid.hpp"
#include "kpwave/material.hpp"
#include "kpwave/solver.hpp"
#include "kpwave/spectral.hpp"

namespace kpwave {

enum class SnapshotFormat { f64le, csv };

std::string_view to_string(SnapshotFormat f);
SnapshotFormat parse_snapshot_format(std::string_view s);  // "f64le" or "csv"

/// One problem found while parsing a configuration file. `line` is 1-based; 0 means
/// the problem is not tied to a single line (e.g. a missing key).
struct ConfigIssue {
  std::size_t line = 0;
  std::string message;
};

/// Raised by parse_config with every issue found, in line order.
class ConfigParseError : public ConfigError {
 public:
  explicit ConfigParseError(std::vector<ConfigIssue> issues);
  const std::vector<ConfigIssue>& issues() const { return issues_; }

 private:
  std::vector<ConfigIssue> issues_;
};

/// A line soliton of the configured equation and branch as initial data.
struct LineSolitonInitial {
  double kappa = 1.0;
  double theta = 0.0;
  double x0 = 0.0;
};

using InitialSpec = std::variant<InitialCondition, LineSolitonInitial>;

/// Material-derived quantities, present when the sign branch came from a [material] block.
struct MaterialSummary {
  double c_frame = 0.0;  ///< c_ell (quadratic) or c_t (cubic), m/s
  double coefficient = 0.0;
  double epsilon = 0.01;
};

/// Validated contents of a configuration file.
///
/// Grammar: `key = value` lines, `#` starts a comment, optional section headers
/// `[grid]`, `[run]` and `[material]`. Keys before the first header are top level.
///
///   top level:  equation (required), branch, nu0
///   [grid]:     nx, ny, xmin, xmax, ymin, ymax (all required; numbers accept a
///               `pi` factor such as `-4pi`, `8*pi` or `pi`)
///   [run]:      dt, t_end, initial (required); kappa, theta, x0 (line_soliton only);
///               snapshots, eps_reg, zero_mode, dealias, diag_stride, output, format
///   [material]: quadratic: lambda, mu, rho0, alpha1, alpha2, gamma0, gamma1, gamma2
///               cubic:     mu, rho0, A, D
///               both:      nu0, or nu and length with optional epsilon (default 0.01)
///
/// `branch` and `[material]` are mutually exclusive. With neither, the plus branch is used.
struct SimulationConfig {
  EquationSpec spec;
  std::optional<MaterialSummary> material;
  std::size_t nx = 0;
  std::size_t ny = 0;
  Domain domain;
  double dt = 0.0;
  double t_end = 0.0;
  double eps_reg = 1e-16;
  ZeroModePolicy zero_mode_policy = ZeroModePolicy::project;
  Dealias dealias = Dealias::off;
  std::vector<double> snapshot_times;  ///< sorted; defaults to {0, t_end}
  std::size_t diagnostics_stride = 100;
  InitialSpec initial = InitialCondition::soliton_quad;
  std::string output_dir = ".";
  SnapshotFormat format = SnapshotFormat::f64le;
  std::vector<std::string> warnings;
  /// Normalised text (sections and keys sorted, whitespace collapsed) and its SHA-256.
  std::string canonical_text;
  std::string digest;
};

/// Parses and validates a configuration. Never throws anything but ConfigParseError.
SimulationConfig parse_config(std::string_view text);

/// Reads `path` and parses it. File errors are reported as ConfigParseError too.
SimulationConfig load_config(const std::string& path);

SolverConfig to_solver_config(const SimulationConfig& config);

Field2D sample_initial(const SimulationConfig& config, const SpectralGrid& grid);

}  // namespace kpwave
