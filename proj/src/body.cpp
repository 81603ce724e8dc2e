#include "polyapprox/body.hpp"

#include "polyapprox/error.hpp"

#include <Eigen/LU>
#include <Eigen/QR>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

namespace polyapprox {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_dim(const ConvexBody& body, const Vector& p) {
  if (dim_of(p) != body.dim()) {
    throw Error(ErrorCode::UnsupportedDimension,
                "direction has dimension " + std::to_string(p.size()) + ", body has " +
                    std::to_string(body.dim()));
  }
}

// ---- PowerCap ----------------------------------------------------------------

// Solves t^2 + t^(2s) = 1 on (0, 1) by bisection.
double cap_corner(double s) {
  double lo = 0.0;
  double hi = 1.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid * mid + std::pow(mid, 2.0 * s) < 1.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

struct Candidate {
  double value;
  Vector point;
};

void consider(Candidate& best, const Vector& p, Vector point) {
  const double value = p.dot(point);
  if (value > best.value) {
    best.value = value;
    best.point = std::move(point);
  }
}

// Maximizes p1*x + p2*x^s over x in [0, t] (right branch of the curve).
double curve_maximizer(double p1, double p2, double s, double t) {
  if (p2 >= 0.0) {
    // Convex in x: an endpoint wins.
    return (p1 * t + p2 * std::pow(t, s) > 0.0) ? t : 0.0;
  }
  if (p1 <= 0.0) return 0.0;
  const double x = std::pow(p1 / (-p2 * s), 1.0 / (s - 1.0));
  return std::min(x, t);
}

SupportEval power_cap_support(const PowerCap& cap, double corner, const Vector& p) {
  const double s = cap.exponent;
  const double t = corner;
  const double ts = std::pow(t, s);
  Candidate best{-std::numeric_limits<double>::infinity(), Vector()};

  consider(best, p, make_vector({0.0, 0.0}));
  consider(best, p, make_vector({t, ts}));
  consider(best, p, make_vector({-t, ts}));

  const double xr = curve_maximizer(p[0], p[1], s, t);
  consider(best, p, make_vector({xr, std::pow(xr, s)}));
  const double xl = curve_maximizer(-p[0], p[1], s, t);
  consider(best, p, make_vector({-xl, std::pow(xl, s)}));

  // Upper arc of the unit circle between the two corners.
  const double norm = p.norm();
  if (norm > 0.0) {
    const double phi = std::atan2(p[1], p[0]);
    const double lo = std::atan2(ts, t);
    const double hi = std::numbers::pi - lo;
    if (phi >= lo && phi <= hi) consider(best, p, Vector(p / norm));
  }
  return SupportEval{best.value, best.point};
}

// ---- BallIntersection --------------------------------------------------------

bool inside_all(const BallIntersection& bi, const Vector& x, double tol) {
  for (const auto& c : bi.centers) {
    if ((x - c).norm() > bi.radius + tol) return false;
  }
  return true;
}

// Intersection circle of two equal spheres: center, radius, unit normal.
bool pair_circle(const Vector& a, const Vector& b, double r, Vector& mid, double& rho,
                 Vector& normal) {
  const Vector d = b - a;
  const double len = d.norm();
  if (len == 0.0 || len > 2.0 * r) return false;
  mid = 0.5 * (a + b);
  rho = std::sqrt(std::max(0.0, r * r - 0.25 * len * len));
  normal = d / len;
  return true;
}

Vector cross(const Vector& a, const Vector& b) {
  return make_vector({a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]});
}

Vector any_orthogonal(const Vector& n) {
  Vector e = Vector::Zero(n.size());
  Eigen::Index k = 0;
  n.cwiseAbs().minCoeff(&k);
  e[k] = 1.0;
  Vector w = e - e.dot(n) * n;
  return w / w.norm();
}

SupportEval ball_intersection_support(const BallIntersection& bi, const Vector& p,
                                      bool* found = nullptr) {
  const int n = dim_of(bi.centers.front());
  const double r = bi.radius;
  const double tol = 1e-9 * std::max(1.0, r);
  const double pn = p.norm();
  Candidate best{-std::numeric_limits<double>::infinity(), Vector()};
  const std::size_t m = bi.centers.size();

  for (const auto& c : bi.centers) {
    Vector x = pn > 0.0 ? Vector(c + r * p / pn) : c;
    if (inside_all(bi, x, tol)) consider(best, p, std::move(x));
  }
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      Vector mid;
      Vector normal;
      double rho = 0.0;
      if (!pair_circle(bi.centers[i], bi.centers[j], r, mid, rho, normal)) continue;
      if (n == 2) {
        const Vector perp = make_vector({-normal[1], normal[0]});
        for (double sign : {1.0, -1.0}) {
          Vector x = mid + sign * rho * perp;
          if (inside_all(bi, x, tol)) consider(best, p, std::move(x));
        }
      } else if (n == 3) {
        Vector w = p - p.dot(normal) * normal;
        const double wn = w.norm();
        Vector x = mid + rho * (wn > 1e-14 * std::max(1.0, pn) ? Vector(w / wn)
                                                               : any_orthogonal(normal));
        if (inside_all(bi, x, tol)) consider(best, p, std::move(x));
        for (std::size_t k = j + 1; k < m; ++k) {
          // Points of the circle that also lie on the third sphere.
          const Vector& c3 = bi.centers[k];
          const Vector e1 = any_orthogonal(normal);
          const Vector e2 = cross(normal, e1);
          // |mid + rho(cos t e1 + sin t e2) - c3|^2 = r^2
          const Vector q = mid - c3;
          const double A = 2.0 * rho * q.dot(e1);
          const double B = 2.0 * rho * q.dot(e2);
          const double C = q.squaredNorm() + rho * rho - r * r;
          const double amp = std::hypot(A, B);
          if (amp == 0.0 || std::abs(C) > amp) continue;
          const double base = std::atan2(B, A);
          const double off = std::acos(std::clamp(-C / amp, -1.0, 1.0));
          for (double ang : {base + off, base - off}) {
            Vector y = mid + rho * (std::cos(ang) * e1 + std::sin(ang) * e2);
            if (inside_all(bi, y, tol)) consider(best, p, std::move(y));
          }
        }
      }
    }
  }
  if (found != nullptr) *found = std::isfinite(best.value);
  if (!std::isfinite(best.value)) {
    throw Error(ErrorCode::InvalidBody, "ball intersection is empty");
  }
  return SupportEval{best.value, best.point};
}

// ---- dispatch ----------------------------------------------------------------

SupportEval evaluate(const ConvexBody& body, const Vector& p) {
  const auto& node = body.node();
  return std::visit(
      Overloaded{
          [&](const Ball& b) {
            const double norm = p.norm();
            Vector x = norm > 0.0 ? Vector(b.center + b.radius * p / norm) : b.center;
            return SupportEval{p.dot(b.center) + b.radius * norm, std::move(x)};
          },
          [&](const Ellipsoid& e) {
            const Vector scaled = e.semi_axes.cwiseProduct(e.rotation.transpose() * p);
            const double norm = scaled.norm();
            Vector x = e.center;
            if (norm > 0.0) {
              x += e.rotation * (e.semi_axes.cwiseProduct(scaled) / norm);
            }
            return SupportEval{p.dot(e.center) + norm, std::move(x)};
          },
          [&](const PowerCap& cap) { return power_cap_support(cap, node.cap_corner, p); },
          [&](const BallIntersection& bi) { return ball_intersection_support(bi, p); },
          [&](const MinkowskiSum& sum) {
            SupportEval l = evaluate(sum.left, p);
            SupportEval r = evaluate(sum.right, p);
            return SupportEval{l.value + r.value, l.argmax + r.argmax};
          },
          [&](const Translate& t) {
            SupportEval in = evaluate(t.inner, p);
            return SupportEval{in.value + p.dot(t.shift), in.argmax + t.shift};
          },
          [&](const HPolytopeBody& hp) {
            LinearProgram lp{p, hp.halfspaces};
            const LpOutcome out = solve_max(lp);
            if (out.status != LpStatus::Optimal) {
              throw Error(ErrorCode::EvaluationFailure, "polytope support LP not optimal");
            }
            return SupportEval{out.value, out.x};
          },
      },
      node.kind);
}

std::shared_ptr<ConvexBody::Node> make_node(int dim) {
  auto node = std::make_shared<ConvexBody::Node>();
  node->dim = dim;
  return node;
}

void check_dim(int dim) {
  if (dim < 1 || dim > 4) {
    throw Error(ErrorCode::UnsupportedDimension, "bodies live in R^1..R^4");
  }
}

void check_finite(const Vector& v, const char* what) {
  if (!v.allFinite()) throw Error(ErrorCode::InvalidBody, std::string(what) + " not finite");
}

// ---- distance ---------------------------------------------------------------

struct MinNorm {
  Vector point;
  std::vector<Vector> support;
};

// Minimum-norm point of conv(points) for at most dim + 1 points, by checking
// the affine minimizer of every subset.
MinNorm min_norm_point(const std::vector<Vector>& points) {
  const std::size_t k = points.size();
  MinNorm best;
  double best_norm = std::numeric_limits<double>::infinity();
  for (unsigned mask = 1; mask < (1u << k); ++mask) {
    std::vector<const Vector*> sub;
    for (std::size_t i = 0; i < k; ++i) {
      if (mask & (1u << i)) sub.push_back(&points[i]);
    }
    const auto q = static_cast<Eigen::Index>(sub.size());
    const Vector& base = *sub[0];
    Vector lambda = Vector::Zero(q);
    Vector point = base;
    if (q > 1) {
      Matrix gram(q - 1, q - 1);
      Vector rhs(q - 1);
      for (Eigen::Index a = 1; a < q; ++a) {
        const Vector da = *sub[a] - base;
        rhs[a - 1] = -da.dot(base);
        for (Eigen::Index b = 1; b < q; ++b) gram(a - 1, b - 1) = da.dot(*sub[b] - base);
      }
      Eigen::FullPivLU<Matrix> lu(gram);
      if (!lu.isInvertible()) continue;
      const Vector mu = lu.solve(rhs);
      double first = 1.0;
      for (Eigen::Index a = 1; a < q; ++a) {
        lambda[a] = mu[a - 1];
        first -= mu[a - 1];
        point += mu[a - 1] * (*sub[a] - base);
      }
      lambda[0] = first;
      if (lambda.minCoeff() < -1e-12) continue;
    }
    const double norm = point.norm();
    if (norm < best_norm - 1e-15) {
      best_norm = norm;
      best.point = point;
      best.support.clear();
      for (const Vector* v : sub) best.support.push_back(*v);
    }
  }
  return best;
}

}  // namespace

ConvexBody ConvexBody::ball(Vector center, double radius) {
  check_dim(dim_of(center));
  check_finite(center, "ball center");
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw Error(ErrorCode::InvalidBody, "ball radius must be positive");
  }
  auto node = make_node(dim_of(center));
  node->kind = Ball{std::move(center), radius};
  return ConvexBody(std::move(node));
}

ConvexBody ConvexBody::ellipsoid(Vector center, Vector semi_axes) {
  const auto n = center.size();
  return ellipsoid(std::move(center), std::move(semi_axes), Matrix::Identity(n, n));
}

ConvexBody ConvexBody::ellipsoid(Vector center, Vector semi_axes, Matrix rotation) {
  const int n = dim_of(center);
  check_dim(n);
  check_finite(center, "ellipsoid center");
  if (semi_axes.size() != n || rotation.rows() != n || rotation.cols() != n) {
    throw Error(ErrorCode::InvalidBody, "ellipsoid parameters have mismatched dimensions");
  }
  if (!semi_axes.allFinite() || semi_axes.minCoeff() <= 0.0) {
    throw Error(ErrorCode::InvalidBody, "ellipsoid semi-axes must be positive");
  }
  const Matrix gram = rotation.transpose() * rotation;
  if (!rotation.allFinite() || !gram.isApprox(Matrix::Identity(n, n), 1e-9)) {
    throw Error(ErrorCode::InvalidBody, "ellipsoid rotation must be orthogonal");
  }
  auto node = make_node(n);
  node->kind = Ellipsoid{std::move(center), std::move(semi_axes), std::move(rotation)};
  return ConvexBody(std::move(node));
}

ConvexBody ConvexBody::power_cap(double exponent) {
  if (!(exponent >= 2.0) || !std::isfinite(exponent)) {
    throw Error(ErrorCode::InvalidBody, "power cap exponent must be >= 2");
  }
  auto node = make_node(2);
  node->kind = PowerCap{exponent};
  node->cap_corner = cap_corner(exponent);
  return ConvexBody(std::move(node));
}

ConvexBody ConvexBody::ball_intersection(std::vector<Vector> centers, double radius) {
  if (centers.empty()) throw Error(ErrorCode::InvalidBody, "ball intersection needs centers");
  const int n = dim_of(centers.front());
  if (n != 2 && n != 3) {
    throw Error(ErrorCode::UnsupportedDimension, "ball intersection supports n = 2, 3");
  }
  for (const auto& c : centers) {
    if (dim_of(c) != n) throw Error(ErrorCode::InvalidBody, "center dimension mismatch");
    check_finite(c, "ball intersection center");
  }
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw Error(ErrorCode::InvalidBody, "ball intersection radius must be positive");
  }
  BallIntersection bi{std::move(centers), radius};
  // The e1-maximizer of a nonempty intersection is always one of the
  // enumerated boundary candidates, so an empty candidate set means empty.
  bool found = false;
  try {
    ball_intersection_support(bi, Vector::Unit(n, 0), &found);
  } catch (const Error&) {
    found = false;
  }
  if (!found) throw Error(ErrorCode::InvalidBody, "ball intersection is empty");
  auto node = make_node(n);
  node->kind = std::move(bi);
  return ConvexBody(std::move(node));
}

ConvexBody ConvexBody::minkowski_sum(ConvexBody left, ConvexBody right) {
  if (left.dim() != right.dim()) {
    throw Error(ErrorCode::UnsupportedDimension, "Minkowski sum of different dimensions");
  }
  auto node = make_node(left.dim());
  node->kind = MinkowskiSum{std::move(left), std::move(right)};
  return ConvexBody(std::move(node));
}

ConvexBody ConvexBody::translate(ConvexBody inner, Vector shift) {
  if (dim_of(shift) != inner.dim()) {
    throw Error(ErrorCode::UnsupportedDimension, "translation dimension mismatch");
  }
  check_finite(shift, "translation");
  auto node = make_node(inner.dim());
  node->kind = Translate{std::move(inner), std::move(shift)};
  return ConvexBody(std::move(node));
}

ConvexBody ConvexBody::hpolytope(std::vector<Halfspace> halfspaces) {
  if (halfspaces.empty()) throw Error(ErrorCode::InvalidBody, "polytope needs halfspaces");
  const int n = dim_of(halfspaces.front().normal);
  check_dim(n);
  for (const auto& h : halfspaces) {
    if (dim_of(h.normal) != n) throw Error(ErrorCode::InvalidBody, "halfspace dimension mismatch");
  }
  try {
    chebyshev_ball(halfspaces);
  } catch (const Error& e) {
    throw Error(ErrorCode::InvalidBody, std::string("polytope must be nonempty and bounded (") +
                                            e.what() + ")");
  }
  auto node = make_node(n);
  node->kind = HPolytopeBody{std::move(halfspaces)};
  return ConvexBody(std::move(node));
}

int ConvexBody::dim() const { return node_->dim; }

std::string ConvexBody::kind_name() const {
  return std::visit(Overloaded{
                        [](const Ball&) { return "ball"; },
                        [](const Ellipsoid&) { return "ellipsoid"; },
                        [](const PowerCap&) { return "power_cap"; },
                        [](const BallIntersection&) { return "ball_intersection"; },
                        [](const MinkowskiSum&) { return "minkowski_sum"; },
                        [](const Translate&) { return "translate"; },
                        [](const HPolytopeBody&) { return "hpolytope"; },
                    },
                    node_->kind);
}

double support(const ConvexBody& body, const Vector& p) {
  require_dim(body, p);
  if (p.isZero(0.0)) return 0.0;
  return evaluate(body, p).value;
}

SupportEval support_argmax(const ConvexBody& body, const Vector& p) {
  require_dim(body, p);
  if (p.isZero(0.0)) throw Error(ErrorCode::ZeroDirection, "argmax needs a nonzero direction");
  return evaluate(body, p);
}

double diameter(const ConvexBody& body) {
  const auto& kind = body.node().kind;
  if (const auto* b = std::get_if<Ball>(&kind)) return 2.0 * b->radius;
  if (const auto* e = std::get_if<Ellipsoid>(&kind)) return 2.0 * e->semi_axes.maxCoeff();

  const int n = body.dim();
  auto width = [&](const Vector& u) { return support(body, u) + support(body, Vector(-u)); };
  if (n == 1) return width(make_vector({1.0}));
  if (n == 2) {
    // Width is pi-periodic; sweep half a turn then refine around the best.
    constexpr int kSamples = 2048;
    const double step = std::numbers::pi / kSamples;
    auto at = [&](double th) { return width(make_vector({std::cos(th), std::sin(th)})); };
    double best = -1.0;
    double best_th = 0.0;
    for (int k = 0; k < kSamples; ++k) {
      const double th = k * step;
      const double w = at(th);
      if (w > best) {
        best = w;
        best_th = th;
      }
    }
    double lo = best_th - step;
    double hi = best_th + step;
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = hi - g * (hi - lo);
    double b = lo + g * (hi - lo);
    double fa = at(a);
    double fb = at(b);
    for (int it = 0; it < 80; ++it) {
      if (fa < fb) {
        lo = a;
        a = b;
        fa = fb;
        b = lo + g * (hi - lo);
        fb = at(b);
      } else {
        hi = b;
        b = a;
        fb = fa;
        a = hi - g * (hi - lo);
        fa = at(a);
      }
    }
    return std::max({best, fa, fb});
  }
  // n >= 3: Fibonacci hemisphere sweep then coordinate refinement in angles.
  constexpr int kSamples = 6000;
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  auto dir = [&](double theta, double phi) {
    Vector u = Vector::Zero(n);
    u[0] = std::sin(theta) * std::cos(phi);
    u[1] = std::sin(theta) * std::sin(phi);
    u[2] = std::cos(theta);
    return u;
  };
  double best = -1.0;
  double best_theta = 0.0;
  double best_phi = 0.0;
  for (int k = 0; k < kSamples; ++k) {
    const double z = 1.0 - (k + 0.5) / kSamples;
    const double theta = std::acos(z);
    const double phi = golden * k;
    const double w = width(dir(theta, phi));
    if (w > best) {
      best = w;
      best_theta = theta;
      best_phi = phi;
    }
  }
  double step = 0.05;
  while (step > 1e-10) {
    bool improved = false;
    for (auto [dt, dp] : std::array<std::pair<double, double>, 4>{
             {{step, 0.0}, {-step, 0.0}, {0.0, step}, {0.0, -step}}}) {
      const double w = width(dir(best_theta + dt, best_phi + dp));
      if (w > best) {
        best = w;
        best_theta += dt;
        best_phi += dp;
        improved = true;
      }
    }
    if (!improved) step *= 0.5;
  }
  return best;
}

double distance_point_to_body(const Vector& x, const ConvexBody& body) {
  require_dim(body, x);
  const int n = body.dim();
  const double scale = std::max(1.0, x.norm());
  // Work in K = body - x; seek the point of K nearest the origin.
  std::vector<Vector> simplex{Vector(evaluate(body, Vector::Unit(n, 0)).argmax - x)};
  Vector v = simplex.front();
  for (int iter = 0; iter < 500; ++iter) {
    const double vv = v.squaredNorm();
    if (std::sqrt(vv) <= 1e-14 * scale) return 0.0;
    const Vector w = evaluate(body, Vector(-v)).argmax - x;
    const double gap = vv - v.dot(w);
    if (gap <= 1e-13 * vv || gap <= 1e-28 * scale * scale) break;
    bool duplicate = false;
    for (const auto& s : simplex) duplicate = duplicate || (s - w).norm() <= 1e-15 * scale;
    if (duplicate) break;
    simplex.push_back(w);
    MinNorm mn = min_norm_point(simplex);
    if (mn.support.empty()) break;
    v = mn.point;
    simplex = std::move(mn.support);
    if (static_cast<int>(simplex.size()) == n + 1) return 0.0;
  }
  return v.norm();
}

}  // namespace polyapprox
