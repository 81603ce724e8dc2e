#include "polyapprox/metrics.hpp"

#include "polyapprox/error.hpp"
#include "polyapprox/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace polyapprox {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Vector unit(double theta) { return make_vector({std::cos(theta), std::sin(theta)}); }

double max_pairwise(const std::vector<Vector>& pts) {
  double d = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) d = std::max(d, (pts[i] - pts[j]).norm());
  }
  return d;
}

double lp_support(const std::vector<Halfspace>& hs, const Vector& q) {
  const LpOutcome out = solve_max(LinearProgram{q, hs});
  if (out.status != LpStatus::Optimal) {
    throw Error(ErrorCode::NumericalFailure, "support LP of a validated polytope failed");
  }
  return out.value;
}

Vector tangent(const Vector& n, int which) {
  Vector a = std::abs(n[0]) < 0.9 ? make_vector({1.0, 0.0, 0.0}) : make_vector({0.0, 1.0, 0.0});
  Vector t1 = a - a.dot(n) * n;
  t1.normalize();
  if (which == 0) return t1;
  Vector t2(3);
  t2 << n[1] * t1[2] - n[2] * t1[1], n[2] * t1[0] - n[0] * t1[2], n[0] * t1[1] - n[1] * t1[0];
  return t2;
}

}  // namespace

SupportView SupportView::of(const ConvexBody& body) {
  return {body.dim(), [body](const Vector& p) { return polyapprox::support(body, p); },
          polyapprox::diameter(body)};
}

SupportView SupportView::of(const HPolytope& poly) {
  if (poly.dim() == 2) return of(vertices_2d(poly));
  // Bounding box diagonal bounds the diameter from above.
  const int n = poly.dim();
  double sq = 0.0;
  for (int k = 0; k < n; ++k) {
    Vector e = zero_vector(n);
    e[k] = 1.0;
    const double width = co_value(poly, e) + co_value(poly, -e);
    sq += width * width;
  }
  auto hs = poly.halfspaces();
  return {n, [hs](const Vector& p) { return lp_support(hs, p); }, std::sqrt(sq)};
}

SupportView SupportView::of(const VPolytope& poly) {
  if (poly.vertices.empty()) throw Error(ErrorCode::InvalidGeometry, "empty vertex set");
  return {dim_of(poly.vertices.front()),
          [poly](const Vector& p) { return approx_co_value(poly, p); },
          max_pairwise(poly.vertices)};
}

HausdorffResult hausdorff_by_support(const SupportView& a, const SupportView& b, int m) {
  if (a.dim != b.dim) throw Error(ErrorCode::UnsupportedDimension, "dimension mismatch");
  if (m < 64) throw Error(ErrorCode::DomainError, "need at least 64 directions");
  auto gap_at = [&](const Vector& p) { return std::abs(a.support(p) - b.support(p)); };

  HausdorffResult r;
  r.method = HausdorffResult::Method::SupportSampled;
  double sampling_gap = 0.0;
  if (a.dim == 2) {
    r.num_directions = m;
    int best = 0;
    for (int k = 0; k < m; ++k) {
      const double v = gap_at(unit(kTwoPi * k / m));
      if (v > r.value) {
        r.value = v;
        best = k;
      }
    }
    // Golden-section maximization over the two neighboring sample intervals.
    const double h = kTwoPi / m;
    double lo = kTwoPi * best / m - h;
    double hi = kTwoPi * best / m + h;
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - g * (hi - lo);
    double x2 = lo + g * (hi - lo);
    double f1 = gap_at(unit(x1));
    double f2 = gap_at(unit(x2));
    for (int it = 0; it < 60; ++it) {
      if (f1 < f2) {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + g * (hi - lo);
        f2 = gap_at(unit(x2));
      } else {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - g * (hi - lo);
        f1 = gap_at(unit(x1));
      }
    }
    r.value = std::max({r.value, f1, f2});
    sampling_gap = 2.0 * std::sin(std::numbers::pi / (2.0 * m));
  } else if (a.dim == 3) {
    int freq = 3;
    while (10 * freq * freq + 2 < m) ++freq;
    const Grid grid = grid_icosphere_3d(freq);
    r.num_directions = static_cast<int>(grid.size());
    std::size_t best = 0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double v = gap_at(grid.dir(i));
      if (v > r.value) {
        r.value = v;
        best = i;
      }
    }
    for (const auto& f : grid.faces()) {
      const Vector& v0 = grid.dir(static_cast<std::size_t>(f[0]));
      const Vector e1 = grid.dir(static_cast<std::size_t>(f[1])) - v0;
      const Vector e2 = grid.dir(static_cast<std::size_t>(f[2])) - v0;
      Vector c(3);
      c << e1[1] * e2[2] - e1[2] * e2[1], e1[2] * e2[0] - e1[0] * e2[2],
          e1[0] * e2[1] - e1[1] * e2[0];
      c.normalize();
      if (c.dot(v0) < 0.0) c = -c;
      sampling_gap = std::max(sampling_gap, (c - v0).norm());
    }
    // Pattern search on the sphere around the best sample.
    Vector p = grid.dir(best);
    double step = sampling_gap;
    for (int it = 0; it < 60 && step > 1e-13; ++it) {
      bool moved = false;
      for (int t = 0; t < 2 && !moved; ++t) {
        for (double sign : {1.0, -1.0}) {
          Vector q = p + sign * step * tangent(p, t);
          q.normalize();
          const double v = gap_at(q);
          if (v > r.value) {
            r.value = v;
            p = q;
            moved = true;
            break;
          }
        }
      }
      if (!moved) step *= 0.5;
    }
  } else {
    throw Error(ErrorCode::UnsupportedDimension, "Hausdorff sampling supports n = 2, 3");
  }
  // s(., A) - s(., B) is Lipschitz with constant diam A + diam B + h(A, B).
  const double lipschitz_base = a.diameter + b.diameter;
  r.resolution = sampling_gap * (lipschitz_base + r.value) / (1.0 - sampling_gap);
  return r;
}

HausdorffResult hausdorff_outer_2d(const HPolytope& p, const ConvexBody& a) {
  if (p.dim() != 2 || a.dim() != 2) {
    throw Error(ErrorCode::UnsupportedDimension, "exact Hausdorff distance is planar only");
  }
  for (std::size_t i = 0; i < p.halfspaces().size(); ++i) {
    const auto& h = p.halfspaces()[i];
    const double s = support(a, h.normal);
    if (s > h.offset + kGeomTol * (1.0 + std::abs(h.offset))) {
      throw Error(ErrorCode::NotOuter,
                  "halfspace " + std::to_string(i) + " cuts into the body");
    }
  }
  HausdorffResult r;
  r.method = HausdorffResult::Method::Exact2D;
  for (const auto& v : vertices_2d(p).vertices) {
    r.value = std::max(r.value, distance_point_to_body(v, a));
  }
  return r;
}

}  // namespace polyapprox
