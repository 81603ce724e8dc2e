#include "polyapprox/experiments.hpp"

#include "polyapprox/bounds.hpp"
#include "polyapprox/error.hpp"
#include "polyapprox/format.hpp"
#include "polyapprox/grid.hpp"
#include "polyapprox/lp.hpp"
#include "polyapprox/metrics.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <thread>

namespace polyapprox {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Vector v2(double x, double y) { return make_vector({x, y}); }

// Runs f(i) for i in [0, n) on up to `threads` workers; results are written by
// index, so the outcome does not depend on scheduling.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& f) {
  const std::size_t workers = std::min<std::size_t>(n, static_cast<std::size_t>(std::max(1, threads)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      (void)w;
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          f(i);
        } catch (...) {
          if (!failed.exchange(true)) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

template <class F>
ExperimentRow timed(bool timing, F&& f) {
  const auto start = std::chrono::steady_clock::now();
  ExperimentRow row = f();
  if (timing) {
    row.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
                         .count();
  }
  return row;
}

std::vector<ExperimentRow> run_rows(std::size_t n, const ExperimentOptions& opt,
                                    const std::function<ExperimentRow(std::size_t)>& make) {
  std::vector<ExperimentRow> rows(n);
  parallel_for(n, opt.threads, [&](std::size_t i) { rows[i] = timed(opt.timing, [&] { return make(i); }); });
  return rows;
}

// Unwraps translations: the modulus and the ball radius do not depend on them.
const ConvexBody& untranslated(const ConvexBody& body) {
  if (const auto* t = std::get_if<Translate>(&body.node().kind)) return untranslated(t->inner);
  return body;
}

// Radius R when the body is an intersection of balls of radius R (a ball counts).
std::optional<double> ball_intersection_radius(const ConvexBody& body) {
  const ConvexBody& b = untranslated(body);
  if (const auto* ball = std::get_if<Ball>(&b.node().kind)) return ball->radius;
  if (const auto* bi = std::get_if<BallIntersection>(&b.node().kind)) return bi->radius;
  return std::nullopt;
}

double classical_for(const ConvexBody& body, double step) {
  if (const auto r = ball_intersection_radius(body)) {
    return classical_bounds(*r, step, ClassicalKind::BallIntersection);
  }
  return classical_bounds(max_norm(body), step, ClassicalKind::General);
}

double fit_slope(const std::vector<ExperimentRow>& rows) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(rows.size());
  for (const auto& r : rows) {
    const double x = std::log(r.delta_step);
    const double y = std::log(r.h_measured);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

std::vector<int> sizes_or(const ExperimentOptions& opt, std::vector<int> fallback) {
  return opt.grid_sizes.empty() ? fallback : opt.grid_sizes;
}

ExperimentResult convergence(const ExperimentOptions& opt) {
  const ConvexBody body = opt.body.value_or(ConvexBody::ball(v2(0, 0), 1.0));
  ExperimentResult res;
  res.kind = "convergence";
  const Modulus m = modulus_for(body);
  const double diam = diameter(body);
  if (body.dim() == 2) {
    const auto sizes = sizes_or(opt, {16, 32, 64, 128});
    res.rows = run_rows(sizes.size(), opt, [&](std::size_t i) {
      const Grid g = grid_uniform_2d(sizes[i]);
      ExperimentRow row;
      row.n = sizes[i];
      row.delta_step = g.step();
      row.h_measured = hausdorff_outer_2d(external_approx(body, g), body).value;
      const BoundReport b = bound_main(m, g.step(), diam);
      row.hyp_ok = b.hypotheses_ok;
      if (b.hypotheses_ok) row.bound_main = b.value;
      row.bound_classical = classical_for(body, g.step());
      return row;
    });
    return res;
  }
  std::vector<int> freqs = opt.grid_sizes;
  if (freqs.empty()) freqs = opt.grid_freq ? std::vector<int>{*opt.grid_freq} : std::vector<int>{3, 4, 6, 8};
  res.extra_columns = {"freq"};
  res.rows = run_rows(freqs.size(), opt, [&](std::size_t i) {
    const Grid g = grid_icosphere_3d(freqs[i]);
    ExperimentRow row;
    row.n = static_cast<int>(g.size());
    row.delta_step = g.step();
    const HausdorffResult h = hausdorff_by_support(SupportView::of(body),
                                                   SupportView::of(external_approx(body, g)), opt.dirs);
    row.h_measured = h.value;
    row.h_resolution = h.resolution;
    const BoundReport b = bound_main(m, g.step(), diam);
    row.hyp_ok = b.hypotheses_ok;
    if (b.hypotheses_ok) row.bound_main = b.value;
    row.bound_classical = classical_for(body, g.step());
    row.extra = {static_cast<double>(freqs[i])};
    return row;
  });
  return res;
}

ExperimentResult exactness(const ExperimentOptions& opt) {
  const double s = opt.exponent;
  std::vector<double> eps_values = opt.eps_values;
  if (eps_values.empty()) {
    for (int k = 1; k <= 8; ++k) eps_values.push_back(0.05 * k);
  }
  ExperimentResult res;
  res.kind = "exactness";
  res.extra_columns = {"eps", "h_lower"};
  std::vector<ExactnessSetup> setups;
  std::vector<double> kept;
  for (double e : eps_values) {
    ExactnessSetup setup = exactness_setup(s, e);
    if (!(setup.gap < 0.5)) {
      res.notes.push_back("eps = " + format_g(e, 6) + " skipped: |p_b - p_a| = " +
                          format_g(setup.gap, 6) + " is not below 1/2");
      continue;
    }
    setups.push_back(std::move(setup));
    kept.push_back(e);
  }
  if (setups.size() < 2) throw Error(ErrorCode::DomainError, "exactness needs at least two usable eps values");
  const ConvexBody cap = ConvexBody::power_cap(s);
  const double diam = diameter(cap);
  const Modulus m = Modulus::power_law(s);
  res.rows = run_rows(setups.size(), opt, [&](std::size_t i) {
    const Grid g = grid_from_angles(setups[i].angles);
    ExperimentRow row;
    row.n = static_cast<int>(g.size());
    row.delta_step = g.step();
    row.h_measured = hausdorff_outer_2d(external_approx(cap, g), cap).value;
    const BoundReport b = bound_main(m, g.step(), diam);
    row.hyp_ok = b.hypotheses_ok;
    if (b.hypotheses_ok) row.bound_main = b.value;
    // A lies in the unit disc and contains (0, 1), so h({0}, A) = 1.
    row.bound_classical = classical_bounds(1.0, g.step(), ClassicalKind::General);
    row.extra = {kept[i], setups[i].lower_bound};
    return row;
  });
  res.slope = fit_slope(res.rows);
  res.notes.push_back("expected slope s/(s-1) = " + format_g(s / (s - 1.0), 6));
  return res;
}

struct Reference {
  GridFunction fine;
  HPolytope poly;
  RadiiEstimate radii;
};

Reference reference_for(const DirectionFunction& f) {
  GridFunction fine = restrict_to_grid(f, grid_uniform_2d(kReferenceGridSize));
  HPolytope poly(grid_halfspaces(fine));
  RadiiEstimate radii = radii_of_polygon(poly);
  return {std::move(fine), std::move(poly), std::move(radii)};
}

ExperimentResult geomdiff(const ExperimentOptions& opt) {
  struct Case {
    std::string name;
    ConvexBody b, a;
    std::optional<ConvexBody> exact;
  };
  const std::vector<Case> cases{
      {"ball2-ball0.5", ConvexBody::ball(v2(0, 0), 2.0), ConvexBody::ball(v2(0, 0), 0.5),
       ConvexBody::ball(v2(0, 0), 1.5)},
      {"ellipse2x1-ball0.3", ConvexBody::ellipsoid(v2(0, 0), v2(2, 1)), ConvexBody::ball(v2(0, 0), 0.3),
       std::nullopt}};
  const auto sizes = sizes_or(opt, {32, 64, 128});
  ExperimentResult res;
  res.kind = "geomdiff";
  res.extra_columns = {"d", "r0"};
  res.labeled = true;
  for (const auto& c : cases) {
    const DirectionFunction f = presupport_diff(c.b, c.a);
    SupportView ref_view;
    RadiiEstimate radii;
    if (c.exact) {
      ref_view = SupportView::of(*c.exact);
      const auto& ball = std::get<Ball>(c.exact->node().kind);
      radii = {ball.center, ball.radius, ball.radius};
    } else {
      const Reference ref = reference_for(f);
      ref_view = SupportView::of(ref.poly);
      radii = ref.radii;
    }
    const Modulus mb = modulus_for(c.b);
    const double diam_b = diameter(c.b);
    auto rows = run_rows(sizes.size(), opt, [&](std::size_t i) {
      const Grid g = grid_uniform_2d(sizes[i]);
      const HPolytope approx(grid_halfspaces(restrict_to_grid(f, g, Provenance::Diff)));
      const HausdorffResult h = hausdorff_by_support(SupportView::of(approx), ref_view, opt.dirs);
      ExperimentRow row;
      row.n = sizes[i];
      row.delta_step = g.step();
      row.h_measured = h.value;
      row.h_resolution = h.resolution;
      const BoundReport b = bound_geomdiff(mb, g.step(), radii.d, radii.r0, diam_b);
      row.hyp_ok = b.hypotheses_ok;
      if (b.hypotheses_ok) row.bound_main = b.value;
      row.extra = {radii.d, radii.r0};
      row.label = c.name;
      return row;
    });
    res.rows.insert(res.rows.end(), rows.begin(), rows.end());
  }
  return res;
}

double polygon_diameter(const HPolytope& poly) {
  const auto verts = vertices_2d(poly).vertices;
  double d = 0.0;
  for (std::size_t i = 0; i < verts.size(); ++i) {
    for (std::size_t j = i + 1; j < verts.size(); ++j) d = std::max(d, (verts[i] - verts[j]).norm());
  }
  return d;
}

ExperimentResult intersection(const ExperimentOptions& opt) {
  const ConvexBody a = ConvexBody::ball(v2(-0.25, 0), 1.0);
  const ConvexBody b = ConvexBody::ball(v2(0.25, 0), 1.0);
  const ConvexBody lens = ConvexBody::ball_intersection({v2(-0.25, 0), v2(0.25, 0)}, 1.0);
  const DirectionFunction f = presupport_min(a, b);
  const double r0 = reference_for(f).radii.r0;
  const Modulus ma = modulus_for(a);
  const Modulus mb = modulus_for(b);
  const double diam_a = diameter(a);
  const double diam_b = diameter(b);
  const auto sizes = sizes_or(opt, {32, 64, 128});
  ExperimentResult res;
  res.kind = "intersection";
  res.extra_columns = {"d", "r0"};
  res.rows = run_rows(sizes.size(), opt, [&](std::size_t i) {
    const Grid g = grid_uniform_2d(sizes[i]);
    const HPolytope approx(grid_halfspaces(restrict_to_grid(f, g, Provenance::Min)));
    const double d = std::max(polygon_diameter(external_approx(a, g)), polygon_diameter(external_approx(b, g)));
    const HausdorffResult h = hausdorff_by_support(SupportView::of(approx), SupportView::of(lens), opt.dirs);
    ExperimentRow row;
    row.n = sizes[i];
    row.delta_step = g.step();
    row.h_measured = h.value;
    row.h_resolution = h.resolution;
    const BoundReport rep = bound_intersection(ma, mb, g.step(), d, r0, diam_a, diam_b);
    row.hyp_ok = rep.hypotheses_ok;
    if (rep.hypotheses_ok) row.bound_main = rep.value;
    row.extra = {d, r0};
    return row;
  });
  return res;
}

ExperimentResult alg(const ExperimentOptions& opt) {
  const std::vector<std::pair<std::string, ConvexBody>> cases{
      {"ball", ConvexBody::ball(v2(0, 0), 1.0)},
      {"ellipse2x1", ConvexBody::ellipsoid(v2(0, 0), v2(2, 1))}};
  const auto sizes = sizes_or(opt, {16, 64});
  ExperimentResult res;
  res.kind = "alg";
  res.extra_columns = {"R", "r0", "d", "z_excess"};
  res.labeled = true;
  for (const auto& [name, body] : cases) {
    const RadiiEstimate radii = reference_for([&body](const Vector& p) { return support(body, p); }).radii;
    auto rows = run_rows(sizes.size(), opt, [&](std::size_t i) {
      const Grid g = grid_uniform_2d(sizes[i]);
      const CenteredHull hull = approx_hull_recentered(restrict_to_grid(body, g));
      double excess = 0.0;
      for (const auto& z : hull.hull.vertices) excess = std::max(excess, distance_point_to_body(z, body));
      const HausdorffResult h = hausdorff_by_support(SupportView::of(body), SupportView::of(hull.hull), opt.dirs);
      ExperimentRow row;
      row.n = sizes[i];
      row.delta_step = g.step();
      row.h_measured = h.value;
      row.h_resolution = h.resolution;
      row.bound_main = bound_alg(radii.d, radii.r0, hull.ball.radius, g.step());
      row.extra = {hull.ball.radius, radii.r0, radii.d, excess};
      row.label = name;
      return row;
    });
    res.rows.insert(res.rows.end(), rows.begin(), rows.end());
  }
  return res;
}

ExperimentResult radius(const ExperimentOptions& opt) {
  const std::vector<std::pair<std::string, ConvexBody>> cases{
      {"ball", ConvexBody::ball(v2(0, 0), 1.0)},
      {"ellipse4x1", ConvexBody::ellipsoid(v2(0, 0), v2(4, 1))}};
  ExperimentResult res;
  res.kind = "radius";
  res.extra_columns = {"r0", "d"};
  res.labeled = true;
  res.notes.push_back("h_measured is d = sup |x - a| and bound_main is max(2 r0, r0 + delta^-1(r0/2))");
  res.rows = run_rows(cases.size(), opt, [&](std::size_t i) {
    const ConvexBody& body = cases[i].second;
    const Grid g = grid_uniform_2d(kReferenceGridSize);
    const HPolytope hat = external_approx(body, g);
    const RadiiEstimate radii = radii_of_polygon(hat);
    ExperimentRow row;
    row.n = kReferenceGridSize;
    row.delta_step = g.step();
    row.h_measured = radii.d;
    // The polygon overestimates d by at most h(A, A^).
    row.h_resolution = hausdorff_outer_2d(hat, body).value;
    try {
      row.bound_main = bound_radius_ratio(modulus_for(body), radii.r0);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::OutOfRange) throw;
      row.hyp_ok = false;
    }
    row.extra = {radii.r0, radii.d};
    row.label = cases[i].first;
    return row;
  });
  return res;
}

std::string cell(const std::optional<double>& v) { return v ? format_g(*v, 12) : std::string(); }

}  // namespace

Modulus modulus_for(const ConvexBody& body) {
  const ConvexBody& b = untranslated(body);
  if (const auto r = ball_intersection_radius(b)) return Modulus::analytic_ball(*r);
  if (b.dim() == 2) return Modulus::tabulate(b);
  if (const auto* e = std::get_if<Ellipsoid>(&b.node().kind)) {
    // The ellipsoid lies in a ball of radius a_max^2 / a_min through each of
    // its boundary points, so its modulus dominates that ball's.
    return Modulus::analytic_ball(e->semi_axes.maxCoeff() * e->semi_axes.maxCoeff() /
                                  e->semi_axes.minCoeff());
  }
  throw Error(ErrorCode::UnsupportedDimension, "no modulus available for a 3-D " + b.kind_name());
}

double max_norm(const ConvexBody& body) {
  const SupportView origin{body.dim(), [](const Vector&) { return 0.0; }, 0.0};
  return hausdorff_by_support(SupportView::of(body), origin, 4096).value;
}

ExactnessSetup exactness_setup(double s, double eps) {
  if (!(s >= 2.0) || !(eps > 0.0) || !(eps < 1.0)) {
    throw Error(ErrorCode::DomainError, "exactness needs s >= 2 and eps in (0, 1)");
  }
  ExactnessSetup out;
  const double slope = s * std::pow(eps / 2.0, s - 1.0);
  const double norm = std::sqrt(slope * slope + 1.0);
  out.p_a = v2(-slope / norm, -1.0 / norm);
  out.p_b = v2(slope / norm, -1.0 / norm);
  out.gap = (out.p_b - out.p_a).norm();
  out.lower_bound = (s - 1.0) * std::pow(eps / 2.0, s);
  // Uniform background with chords at most gap/4 and N divisible by 4, which
  // makes it symmetric about the x2 axis; directions strictly between p_a and
  // p_b are removed so that p_a, p_b are adjacent.
  int n = 4;
  while (2.0 * std::sin(std::numbers::pi / n) > out.gap / 4.0) n += 4;
  const double phi = std::atan(slope);
  const double ta = 1.5 * std::numbers::pi - phi;
  const double tb = 1.5 * std::numbers::pi + phi;
  for (int k = 0; k < n; ++k) {
    const double t = kTwoPi * k / n;
    if (t > ta - 1e-12 && t < tb + 1e-12) continue;
    out.angles.push_back(t);
  }
  // The opposite normals -p_b, -p_a keep the set symmetric about the origin.
  for (double t : {ta, tb, ta - std::numbers::pi, tb - std::numbers::pi}) {
    std::erase_if(out.angles, [t](double a) { return std::abs(a - t) < 1e-9; });
    out.angles.push_back(t);
  }
  std::sort(out.angles.begin(), out.angles.end());
  return out;
}

RadiiEstimate radii_of_polygon(const HPolytope& poly) {
  RadiiEstimate r;
  r.r0 = poly.inscribed_ball().radius;
  // Inscribed centers need not be unique (an elongated ellipse admits a whole
  // segment); take the midpoint of the bounding box of the optimal set.
  std::vector<Halfspace> centers;
  for (const auto& h : poly.halfspaces()) centers.push_back({h.normal, h.offset - r.r0 * (1.0 - 1e-9)});
  r.center = zero_vector(2);
  for (int k = 0; k < 2; ++k) {
    Vector e = zero_vector(2);
    e[k] = 1.0;
    const LpOutcome hi = solve_max(LinearProgram{e, centers});
    const LpOutcome lo = solve_max(LinearProgram{-e, centers});
    if (hi.status != LpStatus::Optimal || lo.status != LpStatus::Optimal) {
      throw Error(ErrorCode::NumericalFailure, "inscribed center range LP failed");
    }
    r.center[k] = 0.5 * (hi.value - lo.value);
  }
  for (const auto& v : vertices_2d(poly).vertices) r.d = std::max(r.d, (v - r.center).norm());
  return r;
}

ExperimentResult run_experiment(const std::string& kind, const ExperimentOptions& options) {
  if (kind == "convergence") return convergence(options);
  if (kind == "exactness") return exactness(options);
  if (kind == "geomdiff") return geomdiff(options);
  if (kind == "intersection") return intersection(options);
  if (kind == "alg") return alg(options);
  if (kind == "radius") return radius(options);
  throw Error(ErrorCode::DomainError, "unknown experiment kind '" + kind + "'");
}

std::string to_csv(const ExperimentResult& result) {
  std::string out = "N,delta_step,h_measured,h_resolution,bound_main,bound_classical,hyp_ok,runtime_ms";
  for (const auto& c : result.extra_columns) out += ',' + c;
  if (result.labeled) out += ",case";
  out += '\n';
  for (const auto& r : result.rows) {
    out += std::to_string(r.n) + ',' + format_g(r.delta_step, 12) + ',' + format_g(r.h_measured, 12) + ',' +
           format_g(r.h_resolution, 12) + ',' + cell(r.bound_main) + ',' + cell(r.bound_classical) + ',' +
           (r.hyp_ok ? "true" : "false") + ',' + format_g(r.runtime_ms, 12);
    for (double x : r.extra) out += ',' + format_g(x, 12);
    if (result.labeled) out += ',' + r.label;
    out += '\n';
  }
  return out;
}

std::string summarize(const ExperimentResult& result) {
  std::string out = result.kind + ": " + std::to_string(result.rows.size()) + " rows\n";
  if (result.slope) out += "log-log slope of h vs delta_step: " + format_g(*result.slope, 6) + '\n';
  for (const auto& n : result.notes) out += n + '\n';
  return out;
}

}  // namespace polyapprox
