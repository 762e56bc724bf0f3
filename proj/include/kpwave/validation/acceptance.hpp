#pragma once

#include <functional>
#include <string>
#include <vector>

namespace kpwave::validation {

enum class Status { pass, fail, skip };

struct CriterionResult {
  std::string name;
  Status status = Status::fail;
  std::string detail;
};

struct AcceptanceOptions {
  /// Skip the two full soliton-propagation runs (20 000 steps each) unless their
  /// snapshots can be read from `from_dir`.
  bool fast = false;
  /// Directory searched recursively for snapshots written by `solve`; when it holds
  /// the t = 0 and t = 2 snapshots of a soliton run, they replace that run.
  std::string from_dir;
  /// Called as soon as each criterion finishes.
  std::function<void(const CriterionResult&)> on_result;
};

/// Runs every acceptance criterion in a fixed order with fixed random seeds.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options = {});

/// "PASS  name  detail" style line.
std::string format_result(const CriterionResult& r);

/// True when no criterion failed (skipped ones do not count as failures).
bool no_failures(const std::vector<CriterionResult>& results);

}  // namespace kpwave::validation
