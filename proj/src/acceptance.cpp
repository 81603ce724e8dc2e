#include "polyapprox/acceptance.hpp"

#include "polyapprox/body.hpp"
#include "polyapprox/bounds.hpp"
#include "polyapprox/error.hpp"
#include "polyapprox/experiments.hpp"
#include "polyapprox/format.hpp"
#include "polyapprox/grid.hpp"
#include "polyapprox/hull.hpp"
#include "polyapprox/lp.hpp"
#include "polyapprox/metrics.hpp"
#include "polyapprox/modulus.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>

namespace polyapprox {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kVerificationDirections = 1000;

Vector v2(double x, double y) { return make_vector({x, y}); }
Vector unit(double t) { return v2(std::cos(t), std::sin(t)); }

// Collects measurements and failed checks of one criterion.
class Recorder {
 public:
  explicit Recorder(CriterionResult& r) : r_(r) {}
  void measure(const std::string& key, double value) { r_.measured.emplace_back(key, value); }
  bool require(bool ok, const std::string& what) {
    if (!ok) {
      r_.passed = false;
      if (r_.failures.size() < 20) r_.failures.push_back(what);
    }
    return ok;
  }
  // Tracks the largest value of a quantity without recording each sample.
  struct Max {
    double value = -std::numeric_limits<double>::infinity();
    void add(double v) { value = std::max(value, v); }
  };

 private:
  CriterionResult& r_;
};

std::string g6(double v) { return format_g(v, 6); }

// --- 1: decomposition suite ---------------------------------------------------

void lemma_suite(const Grid& grid, const std::string& label, std::uint64_t seed, Recorder& rec) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  const double step = grid.step();
  Recorder::Max residual, chord, shortfall, excess;
  for (int t = 0; t < 10000; ++t) {
    Vector p(grid.dim());
    for (int k = 0; k < grid.dim(); ++k) p[k] = gauss(rng);
    p *= std::exp(gauss(rng));
    const Decomposition d = grid.decompose(p);
    Vector sum = zero_vector(grid.dim());
    for (std::size_t k = 0; k < d.indices.size(); ++k) {
      sum += d.alphas[k] * grid.dir(static_cast<std::size_t>(d.indices[k]));
    }
    residual.add((sum - p).norm() / p.norm());
    const double n = d.p_hat.norm();
    shortfall.add((1.0 - step * step / 2.0) - n);
    excess.add(n - 1.0);
    for (int j : d.indices) chord.add((d.p_hat - grid.dir(static_cast<std::size_t>(j))).norm() / step);
  }
  rec.measure(label + "_residual", residual.value);
  rec.measure(label + "_max_chord_over_step", chord.value);
  rec.require(residual.value <= 1e-10, label + ": reconstruction residual " + g6(residual.value));
  rec.require(shortfall.value <= 1e-12, label + ": |p_hat| below 1 - step^2/2 by " + g6(shortfall.value));
  rec.require(excess.value <= 1e-12, label + ": |p_hat| above 1 by " + g6(excess.value));
  rec.require(chord.value < 1.0, label + ": |p_hat - p_j| / step reaches " + g6(chord.value));
}

void criterion_grid(const AcceptanceOptions& opt, Recorder& rec) {
  const std::vector<std::pair<std::string, Grid>> grids{
      {"n16", grid_uniform_2d(16)}, {"n64", grid_uniform_2d(64)}, {"freq3", grid_icosphere_3d(3)}};
  std::uint64_t seed = 1;
  for (const auto& [label, g] : grids) {
    lemma_suite(opt.inject_fault ? g.with_reported_step(0.5 * g.step()) : g, label, seed++, rec);
  }
}

// --- 2, 3: main and classical bounds ----------------------------------------

void criterion_main_bound(const AcceptanceOptions&, Recorder& rec) {
  const std::vector<std::pair<std::string, ConvexBody>> bodies{
      {"ball", ConvexBody::ball(v2(0, 0), 1.0)}, {"ellipse", ConvexBody::ellipsoid(v2(0, 0), v2(2, 1))}};
  for (const auto& [label, body] : bodies) {
    ExperimentOptions eo;
    eo.body = body;
    eo.grid_sizes = {16, 32, 64, 128};
    for (const auto& row : run_experiment("convergence", eo).rows) {
      const std::string tag = label + "_N" + std::to_string(row.n);
      rec.measure(tag + "_h", row.h_measured);
      if (!rec.require(row.hyp_ok && row.bound_main.has_value(), tag + ": bound hypotheses fail")) continue;
      rec.measure(tag + "_bound", *row.bound_main);
      rec.require(row.h_measured <= *row.bound_main,
                  tag + ": h " + g6(row.h_measured) + " exceeds bound " + g6(*row.bound_main));
      if (label == "ball" && row.n == 16) {
        rec.require(std::abs(row.h_measured - 0.019591) <= 1e-6, "ball N=16: h = " + g6(row.h_measured));
        rec.require(std::abs(*row.bound_main - 0.3475) <= 2e-3, "ball N=16: bound = " + g6(*row.bound_main));
      }
    }
  }
}

void criterion_classical(const AcceptanceOptions&, Recorder& rec) {
  const ConvexBody ball = ConvexBody::ball_intersection({v2(0, 0)}, 1.0);
  const double h0 = max_norm(ball);
  rec.measure("h0", h0);
  for (int n : {13, 16, 32, 64, 128, 256}) {
    const Grid g = grid_uniform_2d(n);
    const double h = hausdorff_outer_2d(external_approx(ball, g), ball).value;
    const double quadratic = classical_bounds(1.0, g.step(), ClassicalKind::BallIntersection);
    const double linear = classical_bounds(h0, g.step(), ClassicalKind::General);
    const std::string tag = "N" + std::to_string(n);
    if (n == 16) {
      rec.measure(tag + "_h", h);
      rec.measure(tag + "_2R_step2", quadratic);
    }
    rec.require(h <= quadratic, tag + ": h " + g6(h) + " > 2 R step^2 " + g6(quadratic));
    rec.require(h <= linear, tag + ": h " + g6(h) + " > 2 h0 step " + g6(linear));
  }
}

// --- 4: exactness order -----------------------------------------------------

void criterion_exactness(const AcceptanceOptions&, Recorder& rec) {
  for (double s : {2.0, 3.0}) {
    ExperimentOptions eo;
    eo.exponent = s;
    const ExperimentResult r = run_experiment("exactness", eo);
    const std::string tag = "s" + format_g(s, 2);
    const double expected = s / (s - 1.0);
    rec.measure(tag + "_slope", *r.slope);
    rec.measure(tag + "_rows", static_cast<double>(r.rows.size()));
    rec.require(std::abs(*r.slope - expected) <= 0.15,
                tag + ": slope " + g6(*r.slope) + " vs " + g6(expected));
    for (const auto& row : r.rows) {
      rec.require(row.h_measured >= row.extra[1] - 1e-9,
                  tag + " eps=" + g6(row.extra[0]) + ": h " + g6(row.h_measured) + " below " + g6(row.extra[1]));
    }
  }
}

// --- 5, 6: geometric difference and intersection sandwiches -----------------

struct SandwichStats {
  double low = 0.0;
  double high = 0.0;
};

SandwichStats sandwich(const GridFunction& gf, const std::function<double(const Vector&)>& reference,
                       const std::vector<double>& angles) {
  SandwichStats st{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  for (double t : angles) {
    const Vector p = unit(t);
    const double gap = co_value(gf, p) - reference(p);
    st.low = std::min(st.low, gap);
    st.high = std::max(st.high, gap);
  }
  return st;
}

void criterion_geomdiff(const AcceptanceOptions&, Recorder& rec) {
  struct Case {
    std::string label;
    ConvexBody b, a;
    bool exact;
  };
  const std::vector<Case> cases{
      {"balls", ConvexBody::ball(v2(0, 0), 2.0), ConvexBody::ball(v2(0, 0), 0.5), true},
      {"ellipse", ConvexBody::ellipsoid(v2(0, 0), v2(2, 1)), ConvexBody::ball(v2(0, 0), 0.3), false}};
  const auto angles = golden_angles(kVerificationDirections);
  for (const auto& c : cases) {
    const DirectionFunction f = presupport_diff(c.b, c.a);
    std::function<double(const Vector&)> reference;
    RadiiEstimate radii;
    if (c.exact) {
      reference = [](const Vector& p) { return 1.5 * p.norm(); };
      radii = {zero_vector(2), 1.5, 1.5};
    } else {
      // The reference grid contains every tested grid, so its polygon lies
      // inside each tested one and outside the exact difference.
      const HPolytope fine(grid_halfspaces(restrict_to_grid(f, grid_uniform_2d(kReferenceGridSize))));
      const VPolytope verts = vertices_2d(fine);
      reference = [verts](const Vector& p) { return approx_co_value(verts, p); };
      radii = radii_of_polygon(fine);
    }
    const Modulus mb = modulus_for(c.b);
    for (int n : {32, 64, 128}) {
      const Grid g = grid_uniform_2d(n);
      const BoundReport bound = bound_geomdiff(mb, g.step(), radii.d, radii.r0, diameter(c.b));
      const SandwichStats st = sandwich(restrict_to_grid(f, g, Provenance::Diff), reference, angles);
      const std::string tag = c.label + "_N" + std::to_string(n);
      rec.measure(tag + "_max_gap", st.high);
      if (!rec.require(bound.hypotheses_ok, tag + ": bound hypotheses fail")) continue;
      rec.measure(tag + "_bound", bound.value);
      rec.require(st.low >= -1e-8, tag + ": co_value below the exact support by " + g6(-st.low));
      rec.require(st.high <= bound.value, tag + ": gap " + g6(st.high) + " exceeds " + g6(bound.value));
    }
  }
}

double polygon_diameter(const HPolytope& poly) {
  const auto verts = vertices_2d(poly).vertices;
  double d = 0.0;
  for (std::size_t i = 0; i < verts.size(); ++i) {
    for (std::size_t j = i + 1; j < verts.size(); ++j) d = std::max(d, (verts[i] - verts[j]).norm());
  }
  return d;
}

void criterion_intersection(const AcceptanceOptions&, Recorder& rec) {
  const ConvexBody a = ConvexBody::ball(v2(-0.25, 0), 1.0);
  const ConvexBody b = ConvexBody::ball(v2(0.25, 0), 1.0);
  const ConvexBody lens = ConvexBody::ball_intersection({v2(-0.25, 0), v2(0.25, 0)}, 1.0);
  const DirectionFunction f = presupport_min(a, b);
  const double r0 = 0.75;
  const Modulus ma = modulus_for(a);
  const Modulus mb = modulus_for(b);
  const auto angles = golden_angles(kVerificationDirections);
  auto reference = [&lens](const Vector& p) { return support(lens, p); };
  for (int n : {32, 64, 128}) {
    const Grid g = grid_uniform_2d(n);
    const double d = std::max(polygon_diameter(external_approx(a, g)), polygon_diameter(external_approx(b, g)));
    const BoundReport bound = bound_intersection(ma, mb, g.step(), d, r0, diameter(a), diameter(b));
    const GridFunction gf = restrict_to_grid(f, g, Provenance::Min);
    const SandwichStats st = sandwich(gf, reference, angles);
    const SandwichStats on_grid = sandwich(gf, reference, g.angles());
    const std::string tag = "N" + std::to_string(n);
    rec.measure(tag + "_max_gap", st.high);
    rec.measure(tag + "_grid_gap", on_grid.high);
    if (!rec.require(bound.hypotheses_ok, tag + ": bound hypotheses fail")) continue;
    rec.measure(tag + "_bound", bound.value);
    rec.require(st.low >= -1e-8, tag + ": co_value below the lens support by " + g6(-st.low));
    rec.require(st.high <= bound.value, tag + ": gap " + g6(st.high) + " exceeds " + g6(bound.value));
    rec.require(on_grid.low >= -1e-8 && on_grid.high <= bound.value,
                tag + ": grid-direction gap outside [0, bound]: " + g6(on_grid.low) + ", " + g6(on_grid.high));
  }
}

// --- 7: approximate hull ----------------------------------------------------

void criterion_alg(const AcceptanceOptions&, Recorder& rec) {
  ExperimentOptions eo;
  eo.grid_sizes = {16, 64};
  for (const auto& row : run_experiment("alg", eo).rows) {
    const std::string tag = row.label + "_N" + std::to_string(row.n);
    const double excess = row.extra[3];
    rec.measure(tag + "_z_excess", excess);
    rec.measure(tag + "_h", row.h_measured);
    rec.measure(tag + "_bound", *row.bound_main);
    rec.require(excess <= 1e-8, tag + ": vertex z(q) lies " + g6(excess) + " outside A");
    rec.require(row.h_measured <= *row.bound_main,
                tag + ": h " + g6(row.h_measured) + " exceeds " + g6(*row.bound_main));
    if (row.label == "ball" && row.n == 16) {
      const double expected = 1.0 - std::cos(kPi / 16);
      rec.require(std::abs(row.h_measured - expected) <= 1e-6,
                  "ball N=16: h " + g6(row.h_measured) + " vs " + g6(expected));
    }
  }
}

// --- 8: inscribed ball --------------------------------------------------------

void criterion_chebyshev(const AcceptanceOptions&, Recorder& rec) {
  const ChebyshevBall b = external_approx(ConvexBody::ball(v2(0, 0), 1.0), grid_uniform_2d(16)).inscribed_ball();
  rec.measure("ball_center_norm", b.center.norm());
  rec.measure("ball_radius", b.radius);
  rec.require(b.center.norm() <= 1e-9, "ball: center norm " + g6(b.center.norm()));
  rec.require(std::abs(b.radius - 1.0) <= 1e-9, "ball: radius " + format_g(b.radius, 17));
  const std::vector<Halfspace> sq{{v2(1, 0), 1}, {v2(-1, 0), 1}, {v2(0, 1), 1}, {v2(0, -1), 1}};
  const ChebyshevBall s = chebyshev_ball(sq);
  rec.measure("square_radius", s.radius);
  rec.require(s.center[0] == 0.0 && s.center[1] == 0.0 && s.radius == 1.0,
              "square: center (" + g6(s.center[0]) + ", " + g6(s.center[1]) + "), radius " + g6(s.radius));
}

// --- 9: radius ratio ----------------------------------------------------------

void criterion_radius(const AcceptanceOptions&, Recorder& rec) {
  for (const auto& row : run_experiment("radius", ExperimentOptions{}).rows) {
    const double r0 = row.extra[0];
    const double d = row.extra[1];
    rec.measure(row.label + "_r0", r0);
    rec.measure(row.label + "_d", d);
    if (!rec.require(row.bound_main.has_value(), row.label + ": bound unavailable")) continue;
    rec.measure(row.label + "_bound", *row.bound_main);
    rec.require(d <= *row.bound_main + 1e-6, row.label + ": d " + g6(d) + " > " + g6(*row.bound_main));
    if (row.label == "ball") {
      rec.require(std::abs(d - r0) <= 1e-6 && d <= 2.0 * r0, "ball: d " + g6(d) + ", r0 " + g6(r0));
    } else {
      rec.require(std::abs(r0 - 1.0) <= 1e-6, row.label + ": r0 " + g6(r0));
      rec.require(std::abs(d - 4.0) <= 1e-6 + row.h_resolution, row.label + ": d " + g6(d));
    }
  }
}

// --- 10: sum of approximations ------------------------------------------------

void criterion_inclusion(const AcceptanceOptions&, Recorder& rec) {
  auto check = [&](const std::string& tag, const ConvexBody& a, const ConvexBody& b, const Grid& g,
                   const std::vector<Vector>& dirs) {
    const GridFunction ha = restrict_to_grid(a, g);
    const GridFunction hb = restrict_to_grid(b, g);
    const GridFunction hs = restrict_to_grid(ConvexBody::minkowski_sum(a, b), g);
    Recorder::Max worst;
    for (const auto& p : dirs) worst.add(co_value(ha, p) + co_value(hb, p) - co_value(hs, p));
    rec.measure(tag + "_max_excess", worst.value);
    rec.require(worst.value <= 1e-8, tag + ": sum exceeds the approximation of the sum by " + g6(worst.value));
  };
  std::vector<Vector> planar;
  for (double t : golden_angles(kVerificationDirections)) planar.push_back(unit(t));
  check("2d", ConvexBody::ball(v2(0, 0), 1.0), ConvexBody::ellipsoid(v2(0, 0), v2(2, 1)), grid_uniform_2d(32),
        planar);
  check("3d", ConvexBody::ball(make_vector({0, 0, 0}), 1.0), ConvexBody::ball(make_vector({0.5, 0, 0}), 0.5),
        grid_icosphere_3d(3), fibonacci_sphere(kVerificationDirections));
}

// --- 11: LP oracle ------------------------------------------------------------

double brute_force_max(const LinearProgram& lp) {
  const int n = dim_of(lp.objective);
  const int m = static_cast<int>(lp.constraints.size());
  double best = -std::numeric_limits<double>::infinity();
  std::vector<int> pick(static_cast<std::size_t>(n));
  std::function<void(int, int)> rec = [&](int start, int depth) {
    if (depth == n) {
      Eigen::MatrixXd a(n, n);
      Eigen::VectorXd b(n);
      for (int r = 0; r < n; ++r) {
        const auto& h = lp.constraints[static_cast<std::size_t>(pick[static_cast<std::size_t>(r)])];
        for (int c = 0; c < n; ++c) a(r, c) = h.normal[c];
        b[r] = h.offset;
      }
      Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
      if (!lu.isInvertible()) return;
      const Eigen::VectorXd x = lu.solve(b);
      for (const auto& h : lp.constraints) {
        double v = 0.0;
        for (int c = 0; c < n; ++c) v += h.normal[c] * x[c];
        if (v > h.offset + 1e-9 * (1.0 + std::abs(h.offset))) return;
      }
      double v = 0.0;
      for (int c = 0; c < n; ++c) v += lp.objective[c] * x[c];
      best = std::max(best, v);
      return;
    }
    for (int i = start; i < m; ++i) {
      pick[static_cast<std::size_t>(depth)] = i;
      rec(i + 1, depth + 1);
    }
  };
  rec(0, 0);
  return best;
}

void criterion_lp(const AcceptanceOptions&, Recorder& rec) {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> u(0.5, 3.0);
  Recorder::Max worst;
  int nonoptimal = 0;
  for (int t = 0; t < 200; ++t) {
    const int n = 2 + t % 2;
    LinearProgram lp;
    lp.objective = Vector(n);
    for (int k = 0; k < n; ++k) lp.objective[k] = gauss(rng);
    // A box keeps the instance bounded; the origin keeps it feasible.
    for (int k = 0; k < n; ++k) {
      for (double sign : {1.0, -1.0}) {
        Vector e = zero_vector(n);
        e[k] = sign;
        lp.constraints.push_back({e, u(rng)});
      }
    }
    const int extra = static_cast<int>(rng() % static_cast<std::uint64_t>(12 - 2 * n + 1));
    for (int i = 0; i < extra; ++i) {
      Vector p(n);
      for (int k = 0; k < n; ++k) p[k] = gauss(rng);
      lp.constraints.push_back({p, u(rng) - 0.4});
    }
    const LpOutcome out = solve_max(lp);
    if (out.status != LpStatus::Optimal) {
      ++nonoptimal;
      continue;
    }
    const double ref = brute_force_max(lp);
    worst.add(std::abs(out.value - ref) / (1.0 + std::abs(ref)));
  }
  rec.measure("max_rel_difference", worst.value);
  rec.measure("non_optimal", nonoptimal);
  rec.require(nonoptimal == 0, std::to_string(nonoptimal) + " bounded feasible instances not solved");
  rec.require(worst.value <= 1e-7, "value disagreement " + g6(worst.value));
}

// --- 12: property suites ------------------------------------------------------

std::vector<ConvexBody> planar_bodies() {
  return {ConvexBody::ball(v2(0, 0), 1), ConvexBody::ellipsoid(v2(0.2, -0.1), v2(2, 1)),
          ConvexBody::power_cap(2.0), ConvexBody::power_cap(3.0),
          ConvexBody::ball_intersection({v2(-0.25, 0), v2(0.25, 0)}, 1.0)};
}

void criterion_properties(const AcceptanceOptions&, Recorder& rec) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> ang(0, 2 * kPi);
  std::uniform_real_distribution<double> u01(0, 1);

  // Grid restrictions of support functions.
  Recorder::Max on_grid, below, chain;
  for (int n : {16, 64}) {
    const Grid g = grid_uniform_2d(n);
    for (const auto& body : planar_bodies()) {
      const GridFunction gf = restrict_to_grid(body, g);
      for (std::size_t i = 0; i < g.size(); ++i) on_grid.add(std::abs(co_value(gf, g.dir(i)) - gf.values[i]));
      for (int k = 0; k < 1000; ++k) {
        const Vector p = unit(ang(rng));
        below.add(support(body, p) - co_value(gf, p));
      }
    }
  }
  rec.measure("grid_values_max_diff", on_grid.value);
  rec.measure("support_minus_co_max", below.value);
  rec.require(on_grid.value <= 1e-8, "co_value differs from f on the grid by " + g6(on_grid.value));
  rec.require(below.value <= 1e-8, "support exceeds co_value by " + g6(below.value));

  // Sandwich approx_co_value <= co_value <= u_extend.
  for (const auto& body : planar_bodies()) {
    const GridFunction gf = restrict_to_grid(body, grid_uniform_2d(32));
    const CenteredHull a1 = approx_hull_recentered(gf);
    for (int k = 0; k < 300; ++k) {
      const Vector p = unit(ang(rng));
      const double mid = co_value(gf, p);
      chain.add(std::max(approx_co_value(a1.hull, p) - mid, mid - u_extend(gf, p)));
    }
  }
  rec.measure("sandwich_max_violation", chain.value);
  rec.require(chain.value <= 1e-8, "sandwich violated by " + g6(chain.value));

  // Argmax continuity and the continuous-gradient remainder.
  struct Case {
    std::string label;
    ConvexBody body;
    Modulus modulus;
  };
  const ConvexBody ellipse = ConvexBody::ellipsoid(v2(0, 0), v2(2, 1));
  const std::vector<Case> cases{{"ball", ConvexBody::ball(v2(0.5, -1), 1.0), Modulus::analytic_ball(1.0)},
                                {"ellipse", ellipse, Modulus::tabulate(ellipse)}};
  for (const auto& c : cases) {
    const double diam = diameter(c.body);
    for (int n : {16, 64}) {
      const double step = grid_uniform_2d(n).step();
      const double eps = epsilon_of_step(c.modulus, step, diam);
      Recorder::Max argmax_ratio, remainder_ratio;
      int done = 0;
      while (done < 1000) {
        const double a = ang(rng);
        const Vector p1 = unit(a);
        const Vector p2 = (1.0 - step * step / 2.0 * u01(rng)) * unit(a + (2.0 * u01(rng) - 1.0) * step);
        if (!((p1 - p2).norm() < step)) continue;
        ++done;
        const SupportEval e1 = support_argmax(c.body, p1);
        const SupportEval e2 = support_argmax(c.body, p2);
        argmax_ratio.add((e1.argmax - e2.argmax).norm() / eps);
        remainder_ratio.add(std::abs(e1.value - e2.value - e2.argmax.dot(p1 - p2)) / (eps * step));
      }
      const std::string tag = c.label + "_N" + std::to_string(n);
      rec.measure(tag + "_argmax_over_eps", argmax_ratio.value);
      rec.measure(tag + "_remainder_over_eps_step", remainder_ratio.value);
      rec.require(argmax_ratio.value < 1.0, tag + ": |x1 - x2| / eps reaches " + g6(argmax_ratio.value));
      rec.require(remainder_ratio.value <= 1.0, tag + ": remainder / (eps step) reaches " + g6(remainder_ratio.value));
    }
  }

  // Closed-form exactness normals against numerical tangents.
  Recorder::Max normal_diff;
  for (double s : {2.0, 3.0}) {
    for (double e : {0.05, 0.1, 0.2, 0.3, 0.4}) {
      const ExactnessSetup st = exactness_setup(s, e);
      const double x = e / 2.0;
      const double h = 1e-6;
      const double slope = (std::pow(x + h, s) - std::pow(x - h, s)) / (2.0 * h);
      const Vector nb = v2(slope, -1.0) / std::hypot(slope, 1.0);
      const Vector na = v2(-slope, -1.0) / std::hypot(slope, 1.0);
      normal_diff.add(std::max((nb - st.p_b).norm(), (na - st.p_a).norm()));
      normal_diff.add(std::abs((nb - na).norm() - st.gap));
    }
  }
  rec.measure("exactness_normal_max_diff", normal_diff.value);
  rec.require(normal_diff.value <= 1e-8, "closed-form normals differ by " + g6(normal_diff.value));
}

struct Entry {
  CriterionInfo info;
  void (*run)(const AcceptanceOptions&, Recorder&);
};

const std::vector<Entry>& registry() {
  static const std::vector<Entry> entries{
      {{1, "grid-decomposition", {"grid", "decomposition"}, 5000}, criterion_grid},
      {{2, "main-bound", {"hausdorff", "bounds"}, 10000}, criterion_main_bound},
      {{3, "classical-bounds", {"hausdorff", "bounds"}, 2000}, criterion_classical},
      {{4, "exactness-order", {"hausdorff", "exactness"}, 30000}, criterion_exactness},
      {{5, "geometric-difference", {"support", "bounds"}, 60000}, criterion_geomdiff},
      {{6, "intersection", {"support", "bounds"}, 60000}, criterion_intersection},
      {{7, "approximate-hull", {"hausdorff", "hull"}, 10000}, criterion_alg},
      {{8, "inscribed-ball", {"lp", "chebyshev"}, 1000}, criterion_chebyshev},
      {{9, "radius-ratio", {"bounds", "modulus"}, 60000}, criterion_radius},
      {{10, "sum-inclusion", {"support", "hull"}, 20000}, criterion_inclusion},
      {{11, "lp-oracle", {"lp"}, 5000}, criterion_lp},
      {{12, "property-suites", {"hull", "convexity"}, 30000}, criterion_properties},
  };
  return entries;
}

}  // namespace

std::vector<CriterionInfo> list_criteria() {
  std::vector<CriterionInfo> out;
  for (const auto& e : registry()) out.push_back(e.info);
  return out;
}

bool criterion_selected(const CriterionInfo& info, const std::string& filter) {
  if (filter.empty()) return true;
  std::stringstream ss(filter);
  std::string term;
  while (std::getline(ss, term, ',')) {
    if (term.empty()) continue;
    if (term == std::to_string(info.id)) return true;
    if (info.name.find(term) != std::string::npos) return true;
    if (std::find(info.tags.begin(), info.tags.end(), term) != info.tags.end()) return true;
  }
  return false;
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options) {
  std::vector<CriterionResult> results;
  for (const auto& e : registry()) {
    if (!criterion_selected(e.info, options.filter)) continue;
    CriterionResult r;
    r.info = e.info;
    Recorder rec(r);
    const auto start = std::chrono::steady_clock::now();
    try {
      e.run(options, rec);
    } catch (const std::exception& ex) {
      rec.require(false, std::string("exception: ") + ex.what());
    }
    r.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    if (options.enforce_budget) {
      rec.require(r.runtime_ms < e.info.budget_ms,
                  "runtime " + g6(r.runtime_ms) + " ms exceeds " + g6(e.info.budget_ms) + " ms");
    }
    results.push_back(std::move(r));
  }
  return results;
}

std::string format_report(const std::vector<CriterionResult>& results) {
  std::string out;
  for (const auto& r : results) {
    out += (r.passed ? "PASS " : "FAIL ") + std::to_string(r.info.id) + ' ' + r.info.name;
    for (const auto& [k, v] : r.measured) out += ' ' + k + '=' + format_g(v, 8);
    out += " (" + format_g(r.runtime_ms, 4) + " ms)\n";
    for (const auto& f : r.failures) out += "  - " + f + '\n';
  }
  return out;
}

std::vector<double> golden_angles(int count) {
  const double step = 2.0 * kPi * (2.0 - std::numbers::phi);
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) out.push_back(std::fmod((k + 0.5) * step, 2.0 * kPi));
  return out;
}

std::vector<Vector> fibonacci_sphere(int count) {
  std::vector<Vector> out;
  out.reserve(static_cast<std::size_t>(count));
  const double turn = 2.0 * kPi * (2.0 - std::numbers::phi);
  for (int k = 0; k < count; ++k) {
    const double z = 1.0 - (2.0 * k + 1.0) / count;
    const double r = std::sqrt(1.0 - z * z);
    out.push_back(make_vector({r * std::cos(turn * k), r * std::sin(turn * k), z}));
  }
  return out;
}

}  // namespace polyapprox
