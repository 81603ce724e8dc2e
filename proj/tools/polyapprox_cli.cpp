#include "polyapprox/acceptance.hpp"
#include "polyapprox/bodyspec.hpp"
#include "polyapprox/bounds.hpp"
#include "polyapprox/error.hpp"
#include "polyapprox/experiments.hpp"
#include "polyapprox/format.hpp"
#include "polyapprox/grid.hpp"
#include "polyapprox/hull.hpp"
#include "polyapprox/metrics.hpp"
#include "polyapprox/modulus.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

using namespace polyapprox;

namespace {

enum Exit { kOk = 0, kFailure = 1, kHypothesis = 2, kParse = 3, kNumerical = 4 };

struct Common {
  std::optional<int> grid_n;
  std::optional<int> grid_freq;
  std::string body;
  std::string out;
  int dirs = 4096;
  bool seedless = true;
};

void add_common(CLI::App* app, Common& c, bool grid = true, bool body = true) {
  if (grid) {
    auto* n = app->add_option("--grid-n", c.grid_n, "Planar grid with N uniform directions");
    app->add_option("--grid-freq", c.grid_freq, "Icosphere grid with this frequency")->excludes(n);
  }
  if (body) app->add_option("--body", c.body, "Body specification file (default: unit disc)");
  app->add_option("--out", c.out, "Output file (default: standard output)");
  app->add_option("--dirs", c.dirs, "Directions for support-sampled Hausdorff distances")
      ->check(CLI::Range(64, 1 << 22));
  app->add_flag("--seedless,!--seeded", c.seedless, "Deterministic direction sets (always on)");
}

ConvexBody load_body(const Common& c) {
  if (c.body.empty()) return ConvexBody::ball(make_vector({0.0, 0.0}), 1.0);
  return load_body_spec(c.body);
}

Grid make_grid(const Common& c, int dim) {
  if (c.grid_freq) {
    if (dim != 3) throw Error(ErrorCode::UnsupportedDimension, "--grid-freq needs a 3-D body");
    return grid_icosphere_3d(*c.grid_freq);
  }
  if (dim != 2) throw Error(ErrorCode::UnsupportedDimension, "a 3-D body needs --grid-freq");
  return grid_uniform_2d(c.grid_n.value_or(16));
}

void emit(const Common& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(c.out);
  if (!f) throw Error(ErrorCode::IoError, "cannot write '" + c.out + "'");
  f << text;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw Error(ErrorCode::IoError, "cannot write '" + path + "'");
  f << text;
}

std::string num(double v) { return format_g(v, 12); }

std::string bound_text(const BoundReport& r) {
  if (r.hypotheses_ok) return num(r.value);
  std::string s = "n/a (";
  for (std::size_t i = 0; i < r.reasons.size(); ++i) s += (i ? "; " : "") + r.reasons[i];
  return s + ")";
}

double measured_h(const ConvexBody& body, const HPolytope& hat, int dirs, double* resolution) {
  if (body.dim() == 2) {
    *resolution = 0.0;
    return hausdorff_outer_2d(hat, body).value;
  }
  const HausdorffResult h = hausdorff_by_support(SupportView::of(body), SupportView::of(hat), dirs);
  *resolution = h.resolution;
  return h.value;
}

// --- subcommands ----------------------------------------------------------------

int cmd_grid(const Common& c) {
  emit(c, export_grid(make_grid(c, c.grid_freq ? 3 : 2)));
  return kOk;
}

int cmd_approx(const Common& c) {
  const ConvexBody body = load_body(c);
  const Grid g = make_grid(c, body.dim());
  const HPolytope hat = external_approx(body, g);
  if (!c.out.empty()) {
    write_file(c.out, export_hpolytope(hat));
    if (body.dim() == 2) write_file(c.out + ".vertices", export_vpolytope(vertices_2d(hat)));
  }
  double resolution = 0.0;
  const double h = measured_h(body, hat, c.dirs, &resolution);
  const BoundReport main = bound_main(modulus_for(body), g.step(), diameter(body));
  std::ostringstream s;
  s << "body: " << body.kind_name() << "\n";
  s << "directions: " << g.size() << "\nstep: " << num(g.step()) << "\n";
  s << "h: " << num(h) << "\n";
  if (resolution > 0.0) s << "h_resolution: " << num(resolution) << "\n";
  s << "bound_main: " << bound_text(main) << "\n";
  s << "bound_classical_general: "
    << num(classical_bounds(max_norm(body), g.step(), ClassicalKind::General)) << "\n";
  if (c.out.empty()) {
    s << "halfspaces:\n" << export_hpolytope(hat);
    if (body.dim() == 2) s << "vertices:\n" << export_vpolytope(vertices_2d(hat));
  }
  std::cout << s.str();
  return main.hypotheses_ok ? kOk : kHypothesis;
}

int cmd_hausdorff(const Common& c, const std::string& other) {
  const ConvexBody a = load_body(c);
  const ConvexBody b = other.empty() ? ConvexBody::ball(zero_vector(a.dim()), 0.0) : load_body_spec(other);
  const HausdorffResult h = hausdorff_by_support(SupportView::of(a), SupportView::of(b), c.dirs);
  emit(c, "h: " + num(h.value) + "\nresolution: " + num(h.resolution) +
              "\ndirections: " + std::to_string(h.num_directions) + "\n");
  return kOk;
}

int cmd_modulus(const Common& c, int points, int samples) {
  const ConvexBody body = load_body(c);
  if (body.dim() != 2) throw Error(ErrorCode::UnsupportedDimension, "numeric moduli are planar");
  emit(c, export_modulus_table(Modulus::tabulate(body, points, samples)));
  return kOk;
}

int cmd_epsilon(const Common& c, std::optional<double> step) {
  const ConvexBody body = load_body(c);
  const double delta = step ? *step : make_grid(c, body.dim()).step();
  const EpsilonOfStep e = solve_epsilon_of_step(modulus_for(body), delta, diameter(body));
  std::string text = "step: " + num(delta) + "\n";
  if (e.hypotheses_ok) {
    text += "eps: " + num(e.eps) + "\n";
  } else {
    for (const auto& r : e.reasons) text += "violated: " + r + "\n";
  }
  emit(c, text);
  return e.hypotheses_ok ? kOk : kHypothesis;
}

int cmd_bounds(const Common& c) {
  const ConvexBody body = load_body(c);
  const Grid g = make_grid(c, body.dim());
  const BoundReport main = bound_main(modulus_for(body), g.step(), diameter(body));
  std::string text;
  for (const auto& [k, v] : main.inputs) text += k + ": " + num(v) + "\n";
  text += "bound_main: " + bound_text(main) + "\n";
  text += "bound_classical_general: " +
          num(classical_bounds(max_norm(body), g.step(), ClassicalKind::General)) + "\n";
  emit(c, text);
  return main.hypotheses_ok ? kOk : kHypothesis;
}

int cmd_hull(const Common& c) {
  const ConvexBody body = load_body(c);
  const Grid g = make_grid(c, body.dim());
  const CenteredHull h = approx_hull_recentered(restrict_to_grid(body, g));
  std::ostringstream s;
  s << "# center";
  for (int k = 0; k < dim_of(h.ball.center); ++k) s << ' ' << num(h.ball.center[k]);
  s << " radius " << num(h.ball.radius) << "\n" << export_vpolytope(h.hull);
  emit(c, s.str());
  return kOk;
}

int cmd_chebyshev(const Common& c) {
  const ConvexBody body = load_body(c);
  const ChebyshevBall b = external_approx(body, make_grid(c, body.dim())).inscribed_ball();
  std::string text = "center:";
  for (int k = 0; k < dim_of(b.center); ++k) text += ' ' + num(b.center[k]);
  emit(c, text + "\nradius: " + num(b.radius) + "\n");
  return kOk;
}

int cmd_experiment(const Common& c, const std::string& kind, ExperimentOptions eo,
                   const std::vector<int>& sizes) {
  if (!c.body.empty()) eo.body = load_body_spec(c.body);
  eo.dirs = c.dirs;
  eo.grid_sizes = sizes;
  if (c.grid_n) eo.grid_sizes.push_back(*c.grid_n);
  eo.grid_freq = c.grid_freq;
  if (eo.grid_freq && !eo.body) eo.body = ConvexBody::ball(zero_vector(3), 1.0);
  const ExperimentResult r = run_experiment(kind, eo);
  emit(c, to_csv(r));
  std::cerr << summarize(r);
  return kOk;
}

int cmd_verify(const Common& c, AcceptanceOptions opt) {
  const auto results = run_acceptance(opt);
  std::cout << format_report(results);
  if (!c.out.empty()) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& r : results) {
      nlohmann::json m = nlohmann::json::object();
      for (const auto& [k, v] : r.measured) m[k] = v;
      j.push_back({{"id", r.info.id},
                   {"name", r.info.name},
                   {"passed", r.passed},
                   {"measured", m},
                   {"failures", r.failures},
                   {"runtime_ms", r.runtime_ms}});
    }
    write_file(c.out, j.dump(2) + "\n");
  }
  if (results.empty()) {
    std::cerr << "no criterion matches the filter\n";
    return kFailure;
  }
  for (const auto& r : results) {
    if (!r.passed) return kFailure;
  }
  return kOk;
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::GridTooCoarse:
    case ErrorCode::StepTooLarge:
      return kHypothesis;
    case ErrorCode::ParseError:
      return kParse;
    case ErrorCode::NumericalFailure:
      return kNumerical;
    default:
      return kFailure;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Polyhedral approximation of convex bodies on direction grids"};
  app.require_subcommand(1);
  int threads = 1;

  Common c;
  int result = kOk;
  std::function<int()> action;

  auto* grid = app.add_subcommand("grid", "Export a direction grid");
  add_common(grid, c, true, false);
  grid->callback([&] { action = [&] { return cmd_grid(c); }; });

  auto* approx = app.add_subcommand("approx", "External approximation, measured error and bounds");
  add_common(approx, c);
  approx->callback([&] { action = [&] { return cmd_approx(c); }; });

  std::string other;
  auto* hausdorff = app.add_subcommand("hausdorff", "Hausdorff distance between two bodies");
  add_common(hausdorff, c, false);
  hausdorff->add_option("--other", other, "Second body (default: the origin)");
  hausdorff->callback([&] { action = [&] { return cmd_hausdorff(c, other); }; });

  int points = 200, samples = 720;
  auto* modulus = app.add_subcommand("modulus", "Tabulate the numeric modulus of convexity");
  add_common(modulus, c, false);
  modulus->add_option("--points", points, "Table nodes")->check(CLI::PositiveNumber);
  modulus->add_option("--samples", samples, "Boundary samples per node")->check(CLI::PositiveNumber);
  modulus->callback([&] { action = [&] { return cmd_modulus(c, points, samples); }; });

  std::optional<double> step;
  auto* epsilon = app.add_subcommand("epsilon", "Solve delta(eps)/eps = step/(4-step^2)");
  add_common(epsilon, c);
  epsilon->add_option("--step", step, "Grid step (default: from the grid)");
  epsilon->callback([&] { action = [&] { return cmd_epsilon(c, step); }; });

  auto* bounds = app.add_subcommand("bounds", "Error bounds for a body and grid");
  add_common(bounds, c);
  bounds->callback([&] { action = [&] { return cmd_bounds(c); }; });

  auto* hull = app.add_subcommand("hull", "Approximate hull vertices from the grid restriction");
  add_common(hull, c);
  hull->callback([&] { action = [&] { return cmd_hull(c); }; });

  auto* cheb = app.add_subcommand("chebyshev", "Inscribed ball of the external approximation");
  add_common(cheb, c);
  cheb->callback([&] { action = [&] { return cmd_chebyshev(c); }; });

  std::string kind;
  ExperimentOptions eo;
  std::vector<int> sizes;
  auto* experiment = app.add_subcommand("experiment", "Run an experiment and write CSV");
  add_common(experiment, c, false);
  experiment->add_option("kind", kind, "convergence|exactness|geomdiff|intersection|alg|radius")
      ->required()
      ->check(CLI::IsMember({"convergence", "exactness", "geomdiff", "intersection", "alg", "radius"}));
  experiment->add_option("--grid-n", sizes, "Grid sizes (repeatable)");
  experiment->add_option("--grid-freq", c.grid_freq, "Icosphere frequency (convergence on a 3-D body)");
  experiment->add_option("--exponent", eo.exponent, "Power-cap exponent (exactness)");
  experiment->add_option("--eps", eo.eps_values, "Chord lengths (exactness)");
  experiment->add_flag("--timing", eo.timing, "Fill runtime_ms");
  experiment->add_option("--threads", threads, "Worker threads over rows")->check(CLI::PositiveNumber);
  experiment->callback([&] {
    action = [&] {
      eo.threads = threads;
      return cmd_experiment(c, kind, eo, sizes);
    };
  });

  AcceptanceOptions ao;
  bool no_budget = false;
  auto* verify = app.add_subcommand("verify", "Run the acceptance criteria");
  verify->add_option("--filter", ao.filter, "Criterion ids, tags or name fragments, comma-separated");
  verify->add_flag("--inject-fault", ao.inject_fault, "Corrupt the reported grid step");
  verify->add_flag("--no-budget", no_budget, "Do not enforce runtime budgets");
  verify->add_option("--out", c.out, "JSON report file");
  verify->callback([&] {
    action = [&] {
      ao.enforce_budget = !no_budget;
      return cmd_verify(c, ao);
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kParse;
  }
  try {
    result = action();
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
  return result;
}
