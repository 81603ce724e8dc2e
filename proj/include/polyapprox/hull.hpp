#pragma once

#include "polyapprox/body.hpp"
#include "polyapprox/grid.hpp"
#include "polyapprox/lp.hpp"

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace polyapprox {

/// Positively homogeneous function of a direction.
using DirectionFunction = std::function<double(const Vector&)>;

enum class Provenance { SupportOf, Diff, Min, Raw };

/// Values of a positively homogeneous function on the grid directions. Off the
/// grid the restricted function is +infinity; only on-grid values are stored.
struct GridFunction {
  Grid grid;
  std::vector<double> values;
  Provenance provenance = Provenance::Raw;
};

/// {x : (p_i, x) <= b_i for all i}, nonempty and bounded.
class HPolytope {
 public:
  /// Validates nonemptiness and boundedness with the inscribed-ball LP.
  explicit HPolytope(std::vector<Halfspace> halfspaces);

  const std::vector<Halfspace>& halfspaces() const { return halfspaces_; }
  int dim() const { return dim_of(halfspaces_.front().normal); }
  const ChebyshevBall& inscribed_ball() const { return ball_; }

 private:
  std::vector<Halfspace> halfspaces_;
  ChebyshevBall ball_;
};

struct VPolytope {
  std::vector<Vector> vertices;
};

GridFunction restrict_to_grid(const ConvexBody& body, const Grid& grid);
GridFunction restrict_to_grid(const DirectionFunction& f, const Grid& grid,
                              Provenance provenance = Provenance::Raw);

/// Positive-combination extension: f(p) on the grid, sum alpha_i f(p_i) off it.
double u_extend(const GridFunction& gf, const Vector& p);

/// Halfspaces (p_i, s(p_i, body)); always contains the body.
HPolytope external_approx(const ConvexBody& body, const Grid& grid);

/// Halfspaces (p_i, f(p_i)) of a grid function.
std::vector<Halfspace> grid_halfspaces(const GridFunction& gf);

/// Support of {x : (p_i, x) <= f(p_i)} at q, i.e. the convex hull of the
/// restricted function, by one LP. Throws Infeasible / Unbounded.
double co_value(const GridFunction& gf, const Vector& q);
double co_value(const HPolytope& poly, const Vector& q);

/// p -> s(p, B) - s(p, A); its convex hull is the support of B (-) A when that
/// difference is nonempty.
DirectionFunction presupport_diff(ConvexBody b, ConvexBody a);

/// p -> min(s(p, A), s(p, B)); its convex hull is the support of A n B.
DirectionFunction presupport_min(ConvexBody a, ConvexBody b);

/// Approximate hull: s0(q) = max_p (p, q) / f(p), vertices z(q) = q / s0(q).
/// Requires f(p_i) > 0 everywhere (origin interior); throws NonpositiveValue.
VPolytope approx_hull(const GridFunction& gf);

struct CenteredHull {
  VPolytope hull;
  ChebyshevBall ball;
};

/// Recenters on the inscribed-ball center b (f(p_i) - (p_i, b)), runs
/// approx_hull, and shifts the vertices back by +b.
CenteredHull approx_hull_recentered(const GridFunction& gf);

/// max over vertices of (p, v).
double approx_co_value(const VPolytope& vp, const Vector& p);

struct Polygon2D {
  std::vector<Vector> vertices;  // counterclockwise
  std::vector<int> active;       // halfspace index of the edge after vertices[k]
};

/// Vertex enumeration of a bounded planar halfspace system. Vertex k is the
/// intersection of active[k-1] and active[k]. Redundant halfspaces are absent
/// from `active`. Throws Degenerate when the interior is empty.
Polygon2D halfplane_intersection_2d(std::span<const Halfspace> halfspaces);
VPolytope vertices_2d(const HPolytope& hp);

/// Text export with 17 significant digits: rows `p... b` or `x...`.
std::string export_hpolytope(const HPolytope& hp);
std::string export_vpolytope(const VPolytope& vp);

}  // namespace polyapprox
