#pragma once

#include "polyapprox/lp.hpp"
#include "polyapprox/vector.hpp"

#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace polyapprox {

class ConvexBody;

struct Ball {
  Vector center;
  double radius = 1.0;
};

/// {center + rotation * diag(semi_axes) * u : |u| <= 1}; the columns of
/// `rotation` are the principal directions.
struct Ellipsoid {
  Vector center;
  Vector semi_axes;
  Matrix rotation;
};

/// The planar set {x2 >= |x1|^s} intersected with the closed unit disc.
struct PowerCap {
  double exponent = 2.0;
};

/// Intersection of equal-radius balls.
struct BallIntersection {
  std::vector<Vector> centers;
  double radius = 1.0;
};

struct MinkowskiSum;
struct Translate;

struct HPolytopeBody {
  std::vector<Halfspace> halfspaces;
};

/// Value and one maximizer of (p, x) over a body.
struct SupportEval {
  double value = 0.0;
  Vector argmax;
};

/// Immutable convex compactum with support and argmax oracles. Copies share
/// the underlying description.
class ConvexBody {
 public:
  struct Node;

  static ConvexBody ball(Vector center, double radius);
  static ConvexBody ellipsoid(Vector center, Vector semi_axes);
  static ConvexBody ellipsoid(Vector center, Vector semi_axes, Matrix rotation);
  static ConvexBody power_cap(double exponent);
  static ConvexBody ball_intersection(std::vector<Vector> centers, double radius);
  static ConvexBody minkowski_sum(ConvexBody left, ConvexBody right);
  static ConvexBody translate(ConvexBody inner, Vector shift);
  static ConvexBody hpolytope(std::vector<Halfspace> halfspaces);

  int dim() const;
  const Node& node() const { return *node_; }
  std::string kind_name() const;

 private:
  explicit ConvexBody(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct MinkowskiSum {
  ConvexBody left;
  ConvexBody right;
};

struct Translate {
  ConvexBody inner;
  Vector shift;
};

struct ConvexBody::Node {
  int dim = 0;
  std::variant<Ball, Ellipsoid, PowerCap, BallIntersection, MinkowskiSum, Translate, HPolytopeBody>
      kind;
  // Precomputed for PowerCap: x1 where the curve meets the unit circle.
  double cap_corner = 0.0;
};

/// sup over the body of (p, x). Returns 0 for p = 0.
double support(const ConvexBody& body, const Vector& p);

/// Support value together with a maximizer. Unique for strictly convex kinds;
/// for polytopes the LP basic optimum is returned.
SupportEval support_argmax(const ConvexBody& body, const Vector& p);

/// Closed form for balls and ellipsoids, otherwise the maximal width over a
/// direction sweep with local refinement.
double diameter(const ConvexBody& body);

/// Euclidean distance from x to the body (0 inside), by a support-mapping
/// distance iteration whose duality gap certifies the result.
double distance_point_to_body(const Vector& x, const ConvexBody& body);

/// Global geometric tolerance, relative to body size.
inline constexpr double kGeomTol = 1e-9;

}  // namespace polyapprox
