#include "polyapprox/bounds.hpp"

#include "polyapprox/format.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace polyapprox {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void require_step(double step) {
  if (!(step > 0.0) || !(step < 0.5)) {
    throw Error(ErrorCode::InvalidGeometry, "step must lie in (0, 1/2)");
  }
}

void fail(BoundReport& r, const std::vector<std::string>& reasons) {
  r.hypotheses_ok = false;
  r.value = kNaN;
  r.violation = ErrorCode::GridTooCoarse;
  r.reasons.insert(r.reasons.end(), reasons.begin(), reasons.end());
}

}  // namespace

double BoundReport::value_or_throw() const {
  if (hypotheses_ok) return value;
  std::string msg = name + ":";
  for (const auto& r : reasons) msg += " " + r + ";";
  throw Error(violation.value_or(ErrorCode::GridTooCoarse), msg);
}

EpsilonOfStep solve_epsilon_of_step(const Modulus& m, double step, double diam) {
  require_step(step);
  if (!(diam > 0.0)) throw Error(ErrorCode::InvalidGeometry, "diameter must be positive");
  EpsilonOfStep out;
  const double target = step / (4.0 - step * step);
  const double top = std::min(diam, m.domain_max());
  if (!(m.ratio(top) > target)) {
    out.hypotheses_ok = false;
    out.reasons.push_back("delta(diam)/diam = " + format_g(m.ratio(top), 6) +
                          " is not above step/(4-step^2) = " + format_g(target, 6));
    out.eps = kNaN;
    return out;
  }
  double lo = 1e-12 * diam;
  double hi = top - 1e-12 * diam;
  if (m.ratio(lo) >= target) {
    out.eps = lo;
    return out;
  }
  for (int it = 0; it < 200 && hi - lo > 1e-10 * 1e-3; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (m.ratio(mid) < target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  out.eps = hi;
  if (!m.within_validity(out.eps)) {
    out.hypotheses_ok = false;
    out.reasons.push_back("eps(step) = " + format_g(out.eps, 6) +
                          " lies outside the validity range of the modulus");
  }
  return out;
}

double epsilon_of_step(const Modulus& m, double step, double diam) {
  const EpsilonOfStep e = solve_epsilon_of_step(m, step, diam);
  if (!e.hypotheses_ok) {
    std::string msg;
    for (const auto& r : e.reasons) msg += r + "; ";
    throw Error(ErrorCode::GridTooCoarse, msg);
  }
  return e.eps;
}

BoundReport bound_main(const Modulus& m, double step, double diam) {
  BoundReport r;
  r.name = "bound_main";
  r.inputs = {{"step", step}, {"diam", diam}};
  const EpsilonOfStep e = solve_epsilon_of_step(m, step, diam);
  if (!e.hypotheses_ok) {
    fail(r, e.reasons);
    return r;
  }
  r.inputs.emplace_back("eps", e.eps);
  r.value = 8.0 / 7.0 * e.eps * step;
  return r;
}

BoundReport bound_geomdiff(const Modulus& m_b, double step, double d, double r0, double diam_b) {
  if (!(r0 > 0.0) || !(d >= r0)) {
    throw Error(ErrorCode::InvalidGeometry, "need r0 > 0 and d >= r0");
  }
  BoundReport r;
  r.name = "bound_geomdiff";
  r.inputs = {{"step", step}, {"d", d}, {"r0", r0}, {"diam_b", diam_b}};
  const EpsilonOfStep e = solve_epsilon_of_step(m_b, step, diam_b);
  if (!e.hypotheses_ok) {
    fail(r, e.reasons);
    return r;
  }
  r.inputs.emplace_back("eps_b", e.eps);
  r.value = 8.0 * d / (7.0 * r0) * e.eps * step;
  return r;
}

BoundReport bound_intersection(const Modulus& m_a, const Modulus& m_b, double step, double d,
                               double r0, double diam_a, double diam_b) {
  if (!(r0 > 0.0) || !(d >= r0)) {
    throw Error(ErrorCode::InvalidGeometry, "need r0 > 0 and d >= r0");
  }
  BoundReport r;
  r.name = "bound_intersection";
  r.inputs = {{"step", step}, {"d", d}, {"r0", r0}, {"diam_a", diam_a}, {"diam_b", diam_b}};
  const EpsilonOfStep ea = solve_epsilon_of_step(m_a, step, diam_a);
  const EpsilonOfStep eb = solve_epsilon_of_step(m_b, step, diam_b);
  if (!ea.hypotheses_ok || !eb.hypotheses_ok) {
    std::vector<std::string> reasons;
    for (const auto& s : ea.reasons) reasons.push_back("A: " + s);
    for (const auto& s : eb.reasons) reasons.push_back("B: " + s);
    fail(r, reasons);
    return r;
  }
  r.inputs.emplace_back("eps_a", ea.eps);
  r.inputs.emplace_back("eps_b", eb.eps);
  r.value = 8.0 / 7.0 * (std::max(ea.eps, eb.eps) + d / r0 * (ea.eps + eb.eps)) * step;
  return r;
}

double bound_radius_ratio(const Modulus& m, double r0) {
  if (!(r0 > 0.0)) throw Error(ErrorCode::InvalidGeometry, "r0 must be positive");
  return std::max(2.0 * r0, r0 + modulus_inverse(m, r0 / 2.0));
}

double bound_alg(double d, double r0, double radius, double step) {
  if (!(d > 0.0) || !(r0 > 0.0) || !(radius > 0.0)) {
    throw Error(ErrorCode::InvalidGeometry, "d, r0 and R must be positive");
  }
  require_step(step);
  const double outer = d + 4.0 * d * d / r0 * step;
  return 2.0 * outer * outer / radius * step;
}

double classical_bounds(double h0_or_radius, double step, ClassicalKind kind) {
  if (!(h0_or_radius >= 0.0) || !(step >= 0.0)) {
    throw Error(ErrorCode::InvalidGeometry, "classical bounds take nonnegative inputs");
  }
  return kind == ClassicalKind::General ? 2.0 * h0_or_radius * step
                                        : 2.0 * h0_or_radius * step * step;
}

}  // namespace polyapprox
