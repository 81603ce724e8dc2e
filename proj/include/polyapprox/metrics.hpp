#pragma once

#include "polyapprox/body.hpp"
#include "polyapprox/hull.hpp"

#include <functional>

namespace polyapprox {

/// Anything with a support function: a body, an H-polytope, or a V-polytope.
/// `diameter` is an upper bound on the true diameter.
struct SupportView {
  int dim = 2;
  std::function<double(const Vector&)> support;
  double diameter = 0.0;

  static SupportView of(const ConvexBody& body);
  static SupportView of(const HPolytope& poly);
  static SupportView of(const VPolytope& poly);
};

struct HausdorffResult {
  enum class Method { Exact2D, SupportSampled };
  double value = 0.0;
  Method method = Method::SupportSampled;
  int num_directions = 0;
  /// The true distance lies in [value, value + resolution]; 0 when exact.
  double resolution = 0.0;
};

/// sup over unit p of |s(p, A) - s(p, B)| on M deterministic directions
/// (uniform angles in 2-D, the smallest icosphere with >= M points in 3-D),
/// refined locally around the best direction. Requires M >= 64.
HausdorffResult hausdorff_by_support(const SupportView& a, const SupportView& b, int m);

/// Exact distance for A inside the planar polytope P: the largest vertex
/// distance to A. Throws NotOuter when some halfspace cuts into A.
HausdorffResult hausdorff_outer_2d(const HPolytope& p, const ConvexBody& a);

}  // namespace polyapprox
