#pragma once

#include "polyapprox/error.hpp"
#include "polyapprox/modulus.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace polyapprox {

/// Result of a conditional error bound. When a hypothesis fails the value is
/// NaN, `hypotheses_ok` is false and `reasons` names the violated inequality.
struct BoundReport {
  std::string name;
  std::vector<std::pair<std::string, double>> inputs;
  double value = 0.0;
  bool hypotheses_ok = true;
  std::vector<std::string> reasons;
  std::optional<ErrorCode> violation;

  /// The value, or throws the recorded violation.
  double value_or_throw() const;
};

/// Root of delta(eps) / eps = step / (4 - step^2) on (0, diam).
struct EpsilonOfStep {
  double eps = 0.0;
  bool hypotheses_ok = true;
  std::vector<std::string> reasons;
};
EpsilonOfStep solve_epsilon_of_step(const Modulus& m, double step, double diam);

/// Same, throwing GridTooCoarse when the hypothesis fails.
double epsilon_of_step(const Modulus& m, double step, double diam);

/// (8/7) eps(step) step.
BoundReport bound_main(const Modulus& m, double step, double diam);

/// (8 d / (7 r0)) eps_B(step) step for the geometric difference.
BoundReport bound_geomdiff(const Modulus& m_b, double step, double d, double r0, double diam_b);

/// (8/7) (max(eps_A, eps_B) + (d / r0)(eps_A + eps_B)) step for the intersection.
BoundReport bound_intersection(const Modulus& m_a, const Modulus& m_b, double step, double d,
                               double r0, double diam_a, double diam_b);

/// max(2 r0, r0 + delta^{-1}(r0 / 2)).
double bound_radius_ratio(const Modulus& m, double r0);

/// 2 (d + 4 d^2 step / r0)^2 step / R.
double bound_alg(double d, double r0, double radius, double step);

enum class ClassicalKind { General, BallIntersection };

/// General: 2 h({0}, A) step. BallIntersection: 2 R step^2.
double classical_bounds(double h0_or_radius, double step, ClassicalKind kind);

}  // namespace polyapprox
