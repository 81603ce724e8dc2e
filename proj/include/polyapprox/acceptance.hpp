#pragma once

#include "polyapprox/vector.hpp"

#include <string>
#include <utility>
#include <vector>

namespace polyapprox {

struct CriterionInfo {
  int id = 0;
  std::string name;
  std::vector<std::string> tags;
  double budget_ms = 0.0;
};

struct CriterionResult {
  CriterionInfo info;
  bool passed = true;
  std::vector<std::pair<std::string, double>> measured;
  std::vector<std::string> failures;
  double runtime_ms = 0.0;
};

struct AcceptanceOptions {
  /// Comma-separated terms; a criterion runs when a term equals its id or a
  /// tag, or occurs in its name. Empty runs everything.
  std::string filter;
  /// Reports half the true grid step in the decomposition suite, which must
  /// then fail.
  bool inject_fault = false;
  /// Counts exceeding the runtime budget as a failure.
  bool enforce_budget = true;
};

std::vector<CriterionInfo> list_criteria();
bool criterion_selected(const CriterionInfo& info, const std::string& filter);
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options);

/// One line per criterion: `PASS|FAIL <id> <name> key=value ... (<ms> ms)`,
/// followed by indented failure descriptions.
std::string format_report(const std::vector<CriterionResult>& results);

/// 2-D verification directions at golden-ratio angle increments.
std::vector<double> golden_angles(int count);
/// 3-D verification directions on a Fibonacci lattice.
std::vector<Vector> fibonacci_sphere(int count);

}  // namespace polyapprox
