#pragma once

#include "polyapprox/body.hpp"
#include "polyapprox/hull.hpp"
#include "polyapprox/modulus.hpp"

#include <optional>
#include <string>
#include <vector>

namespace polyapprox {

/// One CSV row. Optional cells are written empty when a column does not apply
/// to the experiment kind.
struct ExperimentRow {
  int n = 0;
  double delta_step = 0.0;
  double h_measured = 0.0;
  double h_resolution = 0.0;
  std::optional<double> bound_main;
  std::optional<double> bound_classical;
  bool hyp_ok = true;
  double runtime_ms = 0.0;
  std::vector<double> extra;  // values for ExperimentResult::extra_columns
  std::string label;          // `case` column, written last when the kind uses it
};

struct ExperimentResult {
  std::string kind;
  std::vector<std::string> extra_columns;
  bool labeled = false;
  std::vector<ExperimentRow> rows;
  /// Least-squares slope of log h_measured against log delta_step (exactness).
  std::optional<double> slope;
  std::vector<std::string> notes;
};

struct ExperimentOptions {
  std::optional<ConvexBody> body;    // convergence; default unit disc
  std::vector<int> grid_sizes;       // default depends on the kind
  std::optional<int> grid_freq;      // convergence on a 3-D body
  double exponent = 2.0;             // exactness
  std::vector<double> eps_values;    // exactness; default 0.05, 0.10, ..., 0.40
  int dirs = 4096;                   // Hausdorff sampling directions
  bool timing = false;               // runtime_ms stays 0 unless set
  int threads = 1;
};

/// kind: convergence | exactness | geomdiff | intersection | alg | radius.
/// Throws DomainError for an unknown kind.
ExperimentResult run_experiment(const std::string& kind, const ExperimentOptions& options);

/// Header `N,delta_step,h_measured,h_resolution,bound_main,bound_classical,
/// hyp_ok,runtime_ms` plus extra columns and `case`; 12 significant digits.
std::string to_csv(const ExperimentResult& result);

/// Human-readable summary (slope, notes).
std::string summarize(const ExperimentResult& result);

/// Modulus used for bound columns: analytic for balls and ball intersections,
/// a ball lower bound for 3-D ellipsoids, a tabulated numeric modulus for
/// other planar bodies. Throws UnsupportedDimension otherwise.
Modulus modulus_for(const ConvexBody& body);

/// h({0}, A) = sup over x in A of |x|, by support sampling.
double max_norm(const ConvexBody& body);

/// The planar exactness construction for the power cap with exponent s at
/// chord length eps: unit normals p_a, p_b at (-eps/2, (eps/2)^s) and
/// (eps/2, (eps/2)^s), and the augmented symmetric grid angles.
struct ExactnessSetup {
  Vector p_a;
  Vector p_b;
  double gap = 0.0;  // |p_b - p_a|
  std::vector<double> angles;
  double lower_bound = 0.0;  // (s - 1) (eps / 2)^s
};
ExactnessSetup exactness_setup(double s, double eps);

/// Inscribed (Chebyshev) ball of a planar polytope and the largest distance
/// from its center to a vertex.
struct RadiiEstimate {
  Vector center;
  double r0 = 0.0;
  double d = 0.0;
};
RadiiEstimate radii_of_polygon(const HPolytope& poly);

/// Grid size of the reference approximations used by geomdiff, intersection,
/// alg and radius.
inline constexpr int kReferenceGridSize = 4096;

}  // namespace polyapprox
