#include "polyapprox/hull.hpp"

#include "polyapprox/error.hpp"
#include "polyapprox/format.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace polyapprox {

HPolytope::HPolytope(std::vector<Halfspace> halfspaces) : halfspaces_(std::move(halfspaces)) {
  if (halfspaces_.empty()) throw Error(ErrorCode::InvalidGeometry, "polytope needs halfspaces");
  ball_ = chebyshev_ball(halfspaces_);
}

GridFunction restrict_to_grid(const ConvexBody& body, const Grid& grid) {
  if (body.dim() != grid.dim()) {
    throw Error(ErrorCode::UnsupportedDimension, "body and grid dimensions differ");
  }
  GridFunction gf{grid, {}, Provenance::SupportOf};
  gf.values.reserve(grid.size());
  for (const auto& p : grid.dirs()) gf.values.push_back(support(body, p));
  return gf;
}

GridFunction restrict_to_grid(const DirectionFunction& f, const Grid& grid, Provenance provenance) {
  GridFunction gf{grid, {}, provenance};
  gf.values.reserve(grid.size());
  for (const auto& p : grid.dirs()) {
    const double v = f(p);
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::EvaluationFailure, "function is not finite on a grid direction");
    }
    gf.values.push_back(v);
  }
  return gf;
}

double u_extend(const GridFunction& gf, const Vector& p) {
  const Decomposition d = gf.grid.decompose(p);
  double sum = 0.0;
  for (std::size_t k = 0; k < d.indices.size(); ++k) {
    sum += d.alphas[k] * gf.values[static_cast<std::size_t>(d.indices[k])];
  }
  return sum;
}

std::vector<Halfspace> grid_halfspaces(const GridFunction& gf) {
  std::vector<Halfspace> hs;
  hs.reserve(gf.values.size());
  for (std::size_t i = 0; i < gf.values.size(); ++i) hs.push_back({gf.grid.dir(i), gf.values[i]});
  return hs;
}

HPolytope external_approx(const ConvexBody& body, const Grid& grid) {
  return HPolytope(grid_halfspaces(restrict_to_grid(body, grid)));
}

namespace {

double support_of_halfspaces(std::vector<Halfspace> hs, const Vector& q) {
  if (!hs.empty() && q.size() != hs.front().normal.size()) {
    throw Error(ErrorCode::UnsupportedDimension, "direction dimension mismatch");
  }
  const LpOutcome out = solve_max(LinearProgram{q, std::move(hs)});
  switch (out.status) {
    case LpStatus::Optimal: return out.value;
    case LpStatus::Infeasible: throw Error(ErrorCode::Infeasible, "grid polyhedron is empty");
    case LpStatus::Unbounded: throw Error(ErrorCode::Unbounded, "grid polyhedron is unbounded");
  }
  return 0.0;
}

}  // namespace

double co_value(const GridFunction& gf, const Vector& q) {
  return support_of_halfspaces(grid_halfspaces(gf), q);
}

double co_value(const HPolytope& poly, const Vector& q) {
  return support_of_halfspaces(poly.halfspaces(), q);
}

DirectionFunction presupport_diff(ConvexBody b, ConvexBody a) {
  return [b = std::move(b), a = std::move(a)](const Vector& p) {
    return support(b, p) - support(a, p);
  };
}

DirectionFunction presupport_min(ConvexBody a, ConvexBody b) {
  return [a = std::move(a), b = std::move(b)](const Vector& p) {
    return std::min(support(a, p), support(b, p));
  };
}

VPolytope approx_hull(const GridFunction& gf) {
  const std::size_t n = gf.values.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (!(gf.values[i] > 0.0)) {
      throw Error(ErrorCode::NonpositiveValue,
                  "f(p_i) <= 0 at grid index " + std::to_string(i) + "; recenter first");
    }
  }
  VPolytope vp;
  vp.vertices.reserve(n);
  for (std::size_t qi = 0; qi < n; ++qi) {
    const Vector& q = gf.grid.dir(qi);
    double polar = -std::numeric_limits<double>::infinity();
    for (std::size_t pi = 0; pi < n; ++pi) {
      polar = std::max(polar, gf.grid.dir(pi).dot(q) / gf.values[pi]);
    }
    vp.vertices.push_back(q / polar);
  }
  return vp;
}

CenteredHull approx_hull_recentered(const GridFunction& gf) {
  const auto hs = grid_halfspaces(gf);
  CenteredHull out;
  out.ball = chebyshev_ball(hs);
  GridFunction shifted = gf;
  for (std::size_t i = 0; i < shifted.values.size(); ++i) {
    shifted.values[i] -= gf.grid.dir(i).dot(out.ball.center);
  }
  out.hull = approx_hull(shifted);
  for (auto& v : out.hull.vertices) v += out.ball.center;
  return out;
}

double approx_co_value(const VPolytope& vp, const Vector& p) {
  if (vp.vertices.empty()) throw Error(ErrorCode::InvalidGeometry, "empty vertex set");
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& v : vp.vertices) best = std::max(best, p.dot(v));
  return best;
}

Polygon2D halfplane_intersection_2d(std::span<const Halfspace> halfspaces) {
  if (halfspaces.empty() || halfspaces.front().normal.size() != 2) {
    throw Error(ErrorCode::UnsupportedDimension, "vertex enumeration is planar only");
  }
  // Interior point from the inscribed ball, then polar duality: halfspace
  // (n, x) <= b maps to n / (b - (n, c)); active halfspaces are the vertices
  // of the dual hull.
  const ChebyshevBall ball = chebyshev_ball(halfspaces);
  const double scale = 1.0 + ball.center.norm();
  if (!(ball.radius > 1e-12 * scale)) {
    throw Error(ErrorCode::Degenerate, "polygon has empty interior");
  }
  const Vector& c = ball.center;
  struct Dual {
    double x, y;
    int index;
  };
  std::vector<Dual> pts;
  pts.reserve(halfspaces.size());
  for (std::size_t i = 0; i < halfspaces.size(); ++i) {
    const auto& h = halfspaces[i];
    const double slack = h.offset - h.normal.dot(c);
    pts.push_back({h.normal[0] / slack, h.normal[1] / slack, static_cast<int>(i)});
  }
  std::sort(pts.begin(), pts.end(), [](const Dual& a, const Dual& b) {
    return std::tie(a.x, a.y, a.index) < std::tie(b.x, b.y, b.index);
  });
  // Monotone chain; collinear points are dropped.
  auto cross = [](const Dual& o, const Dual& a, const Dual& b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
  };
  std::vector<Dual> hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0.0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k > 0 ? k - 1 : 0);
  if (hull.size() < 3) throw Error(ErrorCode::Degenerate, "polygon has empty interior");

  Polygon2D poly;
  const std::size_t m = hull.size();
  for (std::size_t i = 0; i < m; ++i) {
    const auto& h1 = halfspaces[static_cast<std::size_t>(hull[i].index)];
    const auto& h2 = halfspaces[static_cast<std::size_t>(hull[(i + 1) % m].index)];
    const double det = h1.normal[0] * h2.normal[1] - h1.normal[1] * h2.normal[0];
    Vector v(2);
    v[0] = (h1.offset * h2.normal[1] - h2.offset * h1.normal[1]) / det;
    v[1] = (h1.normal[0] * h2.offset - h2.normal[0] * h1.offset) / det;
    poly.vertices.push_back(v);
    poly.active.push_back(hull[(i + 1) % m].index);
  }
  // Dual hull order is counterclockwise, and so is the primal vertex order.
  return poly;
}

VPolytope vertices_2d(const HPolytope& hp) {
  return VPolytope{halfplane_intersection_2d(hp.halfspaces()).vertices};
}

std::string export_hpolytope(const HPolytope& hp) {
  std::string out;
  for (const auto& h : hp.halfspaces()) {
    for (Eigen::Index k = 0; k < h.normal.size(); ++k) out += format_g(h.normal[k], 17) + ' ';
    out += format_g(h.offset, 17) + '\n';
  }
  return out;
}

std::string export_vpolytope(const VPolytope& vp) {
  std::string out;
  for (const auto& v : vp.vertices) {
    for (Eigen::Index k = 0; k < v.size(); ++k) {
      if (k > 0) out += ' ';
      out += format_g(v[k], 17);
    }
    out += '\n';
  }
  return out;
}

}  // namespace polyapprox
