#pragma once

#include "polyapprox/vector.hpp"

#include <span>
#include <vector>

namespace polyapprox {

/// The closed halfspace {x : (normal, x) <= offset}.
struct Halfspace {
  Vector normal;
  double offset = 0.0;
};

/// maximize (objective, x) subject to every constraint, x free.
struct LinearProgram {
  Vector objective;
  std::vector<Halfspace> constraints;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpOutcome {
  LpStatus status = LpStatus::Infeasible;
  Vector x;            // meaningful only when Optimal
  double value = 0.0;  // (objective, x) when Optimal
};

/// Dense two-phase simplex with Bland's rule, run on the dual standard form
/// min (b, y) s.t. A^T y = c, y >= 0. The tableau has one row per variable
/// and one column per constraint, so thousands of halfspaces in R^2..R^4 stay
/// cheap. The primal point is recovered from the optimal basis.
///
/// Throws Error(NumericalFailure) when the iteration budget is exhausted or
/// the recovered point violates a constraint beyond 1e-8 * (1 + |b_i|).
LpOutcome solve_max(const LinearProgram& lp);

struct ChebyshevBall {
  Vector center;
  double radius = 0.0;
};

/// Largest ball inside {x : (p_i, x) <= f_i}: maximize R subject to
/// (p_i, b) + R * |p_i| <= f_i. Throws Infeasible when the polyhedron is empty
/// and Unbounded when the LP is unbounded.
ChebyshevBall chebyshev_ball(std::span<const Halfspace> halfspaces);

}  // namespace polyapprox
