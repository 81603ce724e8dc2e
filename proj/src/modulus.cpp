#include "polyapprox/modulus.hpp"

#include "polyapprox/error.hpp"
#include "polyapprox/format.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace polyapprox {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Vector unit(double theta) { return make_vector({std::cos(theta), std::sin(theta)}); }

// Pool-adjacent-violators: nondecreasing least-squares fit.
std::vector<double> isotonic(const std::vector<double>& y) {
  std::vector<double> level;
  std::vector<std::size_t> count;
  for (double v : y) {
    level.push_back(v);
    count.push_back(1);
    while (level.size() >= 2 && level[level.size() - 2] > level.back()) {
      const std::size_t n1 = count[count.size() - 2];
      const std::size_t n2 = count.back();
      const double merged = (level[level.size() - 2] * n1 + level.back() * n2) / (n1 + n2);
      level.pop_back();
      count.pop_back();
      level.back() = merged;
      count.back() = n1 + n2;
    }
  }
  std::vector<double> out;
  for (std::size_t i = 0; i < level.size(); ++i) out.insert(out.end(), count[i], level[i]);
  return out;
}

template <class F>
double golden_min(F&& f, double lo, double hi, int iterations) {
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = hi - g * (hi - lo);
  double b = lo + g * (hi - lo);
  double fa = f(a);
  double fb = f(b);
  for (int it = 0; it < iterations; ++it) {
    if (fa > fb) {
      lo = a;
      a = b;
      fa = fb;
      b = lo + g * (hi - lo);
      fb = f(b);
    } else {
      hi = b;
      b = a;
      fb = fa;
      a = hi - g * (hi - lo);
      fa = f(a);
    }
  }
  return std::min(fa, fb);
}

// Boundary of a planar body traced by support maximizers at sample normals.
struct BoundarySamples {
  std::vector<double> theta;
  std::vector<Vector> normal;
  std::vector<Vector> point;
};

BoundarySamples trace_boundary(const ConvexBody& body, int samples) {
  BoundarySamples b;
  for (int k = 0; k < samples; ++k) {
    const double th = kTwoPi * k / samples;
    b.theta.push_back(th);
    b.normal.push_back(unit(th));
    b.point.push_back(support_argmax(body, b.normal.back()).argmax);
  }
  return b;
}

// Distance from an interior point m to the boundary: min_u s(u) - (u, m).
double depth(const ConvexBody& body, const BoundarySamples& b, const Vector& m) {
  const std::size_t n = b.theta.size();
  std::size_t best = 0;
  double best_val = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < n; ++k) {
    const double v = b.normal[k].dot(b.point[k] - m);
    if (v < best_val) {
      best_val = v;
      best = k;
    }
  }
  const double step = kTwoPi / static_cast<double>(n);
  const double refined = golden_min(
      [&](double th) {
        const Vector u = unit(th);
        return support(body, u) - u.dot(m);
      },
      b.theta[best] - step, b.theta[best] + step, 60);
  return std::max(0.0, std::min(best_val, refined));
}

double modulus_from_samples(const ConvexBody& body, const BoundarySamples& b, double eps) {
  const std::size_t n = b.theta.size();
  const double step = kTwoPi / static_cast<double>(n);
  double result = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < n; ++k) {
    const Vector& x1 = b.point[k];
    // First boundary sample (going counterclockwise) at distance >= eps.
    std::size_t j = 1;
    while (j < n && (b.point[(k + j) % n] - x1).norm() < eps) ++j;
    if (j == n) continue;
    double lo = b.theta[k] + (j - 1) * step;
    double hi = b.theta[k] + j * step;
    for (int it = 0; it < 60; ++it) {
      const double mid = 0.5 * (lo + hi);
      if ((support_argmax(body, unit(mid)).argmax - x1).norm() < eps) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    const Vector x2 = support_argmax(body, unit(hi)).argmax;
    if (std::abs((x2 - x1).norm() - eps) > 1e-6 * std::max(1.0, eps)) continue;
    result = std::min(result, depth(body, b, 0.5 * (x1 + x2)));
  }
  return result;
}

void require_planar(const ConvexBody& body) {
  if (body.dim() != 2) {
    throw Error(ErrorCode::UnsupportedDimension, "numeric modulus is implemented for n = 2");
  }
}

}  // namespace

Modulus Modulus::analytic_ball(double radius) {
  if (!(radius > 0.0)) throw Error(ErrorCode::DomainError, "ball radius must be positive");
  Modulus m;
  m.kind_ = Kind::AnalyticBall;
  m.parameter_ = radius;
  m.domain_max_ = 2.0 * radius;
  return m;
}

Modulus Modulus::power_law(double exponent) {
  if (!(exponent >= 2.0)) throw Error(ErrorCode::DomainError, "power-law exponent must be >= 2");
  Modulus m;
  m.kind_ = Kind::PowerLaw;
  m.parameter_ = exponent;
  m.domain_max_ = std::numeric_limits<double>::infinity();
  return m;
}

Modulus Modulus::numeric_table(std::vector<double> eps, std::vector<double> delta) {
  if (eps.empty() || eps.size() != delta.size()) {
    throw Error(ErrorCode::DomainError, "modulus table needs matching nonempty columns");
  }
  std::vector<double> ratio;
  for (std::size_t k = 0; k < eps.size(); ++k) {
    if (!(eps[k] > 0.0) || (k > 0 && !(eps[k] > eps[k - 1])) || !std::isfinite(delta[k]) ||
        delta[k] < 0.0) {
      throw Error(ErrorCode::DomainError,
                  "modulus table needs increasing positive eps and finite delta >= 0");
    }
    ratio.push_back(delta[k] / eps[k]);
  }
  ratio = isotonic(ratio);
  Modulus m;
  m.kind_ = Kind::NumericTable;
  m.parameter_ = 0.0;
  m.domain_max_ = eps.back();
  for (std::size_t k = 0; k < eps.size(); ++k) m.table_.emplace_back(eps[k], ratio[k] * eps[k]);
  return m;
}

Modulus Modulus::tabulate(const ConvexBody& body, int points, int samples) {
  require_planar(body);
  if (points < 2 || samples < 16) throw Error(ErrorCode::DomainError, "table too small");
  const double diam = diameter(body);
  const BoundarySamples b = trace_boundary(body, samples);
  std::vector<double> eps;
  std::vector<double> delta;
  for (int k = 1; k <= points; ++k) {
    const double e = diam * k / (points + 1);
    const double d = modulus_from_samples(body, b, e);
    if (!std::isfinite(d)) continue;
    eps.push_back(e);
    delta.push_back(d);
  }
  return numeric_table(std::move(eps), std::move(delta));
}

double Modulus::ratio(double eps) const {
  if (eps <= 0.0) return 0.0;
  switch (kind_) {
    case Kind::AnalyticBall:
    case Kind::PowerLaw: return (*this)(eps) / eps;
    case Kind::NumericTable: {
      const auto& t = table_;
      const double r0 = t.front().second / t.front().first;
      if (eps <= t.front().first) return r0 * eps / t.front().first;
      if (eps >= t.back().first) return t.back().second / t.back().first;
      const auto it = std::upper_bound(t.begin(), t.end(), eps,
                                       [](double e, const auto& row) { return e < row.first; });
      const auto& hi = *it;
      const auto& lo = *(it - 1);
      const double rl = lo.second / lo.first;
      const double rh = hi.second / hi.first;
      const double w = (eps - lo.first) / (hi.first - lo.first);
      return rl + w * (rh - rl);
    }
  }
  return 0.0;
}

double Modulus::operator()(double eps) const {
  if (eps < 0.0) throw Error(ErrorCode::DomainError, "modulus argument must be >= 0");
  switch (kind_) {
    case Kind::AnalyticBall: return modulus_ball(parameter_, std::min(eps, domain_max_));
    case Kind::PowerLaw: return std::pow(eps / 2.0, parameter_);
    case Kind::NumericTable: return eps * ratio(std::min(eps, domain_max_));
  }
  return 0.0;
}

bool Modulus::within_validity(double eps) const {
  if (kind_ == Kind::PowerLaw) return eps <= 0.5;
  return eps >= 0.0 && eps <= domain_max_;
}

double modulus_ball(double radius, double eps) {
  if (!(radius > 0.0)) throw Error(ErrorCode::DomainError, "radius must be positive");
  if (!(eps >= 0.0) || eps > 2.0 * radius) {
    throw Error(ErrorCode::DomainError, "eps must lie in [0, 2R]");
  }
  // R - sqrt(R^2 - e^2/4), written to avoid cancellation for small eps.
  const double q = eps * eps / 4.0;
  return q / (radius + std::sqrt(std::max(0.0, radius * radius - q)));
}

double modulus_numeric(const ConvexBody& body, double eps, int samples) {
  require_planar(body);
  if (samples < 16) throw Error(ErrorCode::DomainError, "need at least 16 samples");
  const double diam = diameter(body);
  if (!(eps > 0.0) || !(eps < diam)) {
    throw Error(ErrorCode::DomainError, "eps must lie in (0, diam)");
  }
  const double d = modulus_from_samples(body, trace_boundary(body, samples), eps);
  if (!std::isfinite(d)) throw Error(ErrorCode::DomainError, "no chord of the requested length");
  return d;
}

double modulus_inverse(const Modulus& m, double t) {
  if (!(t >= 0.0)) throw Error(ErrorCode::OutOfRange, "modulus value must be >= 0");
  if (t == 0.0) return 0.0;
  double hi = m.domain_max();
  if (!std::isfinite(hi)) {
    hi = 1.0;
    while (m(hi) < t) hi *= 2.0;
  }
  if (m(hi) < t) throw Error(ErrorCode::OutOfRange, "value exceeds the supremum of the modulus");
  double lo = 0.0;
  for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (m(mid) >= t) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

std::string export_modulus_table(const Modulus& m) {
  std::string out;
  for (const auto& [e, d] : m.table()) out += format_g(e, 17) + ' ' + format_g(d, 17) + '\n';
  return out;
}

Modulus import_modulus_table(const std::string& text) {
  std::istringstream in(text);
  std::vector<double> eps;
  std::vector<double> delta;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream row(line);
    double e = 0.0;
    double d = 0.0;
    std::string extra;
    if (!(row >> e >> d) || (row >> extra)) {
      throw Error(ErrorCode::ParseError,
                  "line " + std::to_string(lineno) + ": expected two numbers `eps delta`");
    }
    eps.push_back(e);
    delta.push_back(d);
  }
  return Modulus::numeric_table(std::move(eps), std::move(delta));
}

}  // namespace polyapprox
