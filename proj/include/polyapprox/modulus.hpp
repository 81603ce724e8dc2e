#pragma once

#include "polyapprox/body.hpp"

#include <string>
#include <utility>
#include <vector>

namespace polyapprox {

/// A modulus of convexity delta(eps), with delta(0) = 0, delta nondecreasing
/// and delta(eps) / eps nondecreasing.
class Modulus {
 public:
  enum class Kind { AnalyticBall, PowerLaw, NumericTable };

  /// R - sqrt(R^2 - eps^2 / 4) on [0, 2R].
  static Modulus analytic_ball(double radius);
  /// eps^s / 2^s. Treated as exact for eps in (0, 1/2]; beyond that values
  /// are still returned but `within_validity` reports false.
  static Modulus power_law(double exponent);
  /// Tabulated (eps_k, delta_k) pairs, eps increasing and positive. The ratio
  /// delta_k / eps_k is made nondecreasing by isotonic regression; between
  /// nodes the ratio is interpolated linearly, below the first node it falls
  /// linearly to zero.
  static Modulus numeric_table(std::vector<double> eps, std::vector<double> delta);
  /// Tabulates `modulus_numeric` of a planar body on `points` equally spaced
  /// eps values in (0, diam).
  static Modulus tabulate(const ConvexBody& body, int points = 200, int samples = 720);

  Kind kind() const { return kind_; }
  double operator()(double eps) const;
  double ratio(double eps) const;
  /// Right end of the domain; the modulus is defined on [0, domain_max()].
  double domain_max() const { return domain_max_; }
  bool within_validity(double eps) const;
  double parameter() const { return parameter_; }
  const std::vector<std::pair<double, double>>& table() const { return table_; }

 private:
  Kind kind_ = Kind::AnalyticBall;
  double parameter_ = 1.0;
  double domain_max_ = 2.0;
  std::vector<std::pair<double, double>> table_;  // (eps, delta) after correction
};

/// R - sqrt(R^2 - eps^2 / 4). Throws DomainError for eps outside [0, 2R].
double modulus_ball(double radius, double eps);

/// Brute-force modulus of a planar body: the smallest midpoint depth over
/// boundary chords of length eps whose first endpoint runs over `samples`
/// boundary points. Converges to the true modulus from above.
double modulus_numeric(const ConvexBody& body, double eps, int samples);

/// Smallest eps with delta(eps) >= t, by bisection. Throws OutOfRange when t
/// exceeds delta(domain_max()).
double modulus_inverse(const Modulus& m, double t);

/// Two-column text (eps delta) and its parser.
std::string export_modulus_table(const Modulus& m);
Modulus import_modulus_table(const std::string& text);

}  // namespace polyapprox
