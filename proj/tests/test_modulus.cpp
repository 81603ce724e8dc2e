#include "polyapprox/error.hpp"
#include "polyapprox/modulus.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace polyapprox;

namespace {

Vector v2(double x, double y) { return make_vector({x, y}); }

// Independent brute-force modulus of the parabola cap {x2 >= x1^2} n B_1(0):
// dense boundary polyline, chord partners found by bisection on the polyline
// parameter, midpoint depth = distance to the polyline.
struct Polyline {
  std::vector<Vector> pts;  // closed, counterclockwise
};

Polyline cap_polyline(int per_piece) {
  const double c = std::sqrt((std::sqrt(5.0) - 1.0) / 2.0);
  const double phi = std::atan2(c * c, c);
  Polyline pl;
  for (int k = 0; k < per_piece; ++k) {
    const double t = -c + 2.0 * c * k / per_piece;
    pl.pts.push_back(v2(t, t * t));
  }
  for (int k = 0; k < per_piece; ++k) {
    const double a = phi + (M_PI - 2.0 * phi) * k / per_piece;
    pl.pts.push_back(v2(std::cos(a), std::sin(a)));
  }
  return pl;
}

double segment_distance(const Vector& x, const Vector& a, const Vector& b) {
  const Vector d = b - a;
  const double t = std::clamp((x - a).dot(d) / d.squaredNorm(), 0.0, 1.0);
  return (a + t * d - x).norm();
}

double brute_modulus(const Polyline& pl, double eps, int stride) {
  const std::size_t n = pl.pts.size();
  double best = 1e300;
  for (std::size_t i = 0; i < n; i += static_cast<std::size_t>(stride)) {
    const Vector& x1 = pl.pts[i];
    std::size_t j = 1;
    while (j < n && (pl.pts[(i + j) % n] - x1).norm() < eps) ++j;
    if (j == n) continue;
    // Exact crossing on segment (i+j-1, i+j).
    const Vector a = pl.pts[(i + j - 1) % n];
    const Vector b = pl.pts[(i + j) % n];
    double lo = 0, hi = 1;
    for (int it = 0; it < 80; ++it) {
      const double mid = 0.5 * (lo + hi);
      ((a + mid * (b - a) - x1).norm() < eps ? lo : hi) = mid;
    }
    const Vector x2 = a + hi * (b - a);
    const Vector m = 0.5 * (x1 + x2);
    double depth = 1e300;
    for (std::size_t k = 0; k < n; ++k) {
      depth = std::min(depth, segment_distance(m, pl.pts[k], pl.pts[(k + 1) % n]));
    }
    best = std::min(best, depth);
  }
  return best;
}

}  // namespace

TEST(ModulusBall, Examples) {
  EXPECT_EQ(modulus_ball(1.0, 0.0), 0.0);
  EXPECT_NEAR(modulus_ball(1.0, 1.0), 1.0 - std::sqrt(3.0) / 2.0, 1e-15);
  EXPECT_NEAR(modulus_ball(2.5, 5.0), 2.5, 1e-15);
  EXPECT_THROW(modulus_ball(1.0, 2.1), Error);
  // Small eps without cancellation: eps^2 / (8R) to leading order.
  EXPECT_NEAR(modulus_ball(1.0, 1e-6) / 1.25e-13, 1.0, 1e-9);
}

TEST(ModulusNumeric, BallAgreesWithClosedForm) {
  const auto ball = ConvexBody::ball(v2(0.3, 0.1), 1.0);
  const double d = modulus_numeric(ball, 1.0, 2000);
  EXPECT_NEAR(d, 0.133975, 1e-3);
  EXPECT_GE(d, modulus_ball(1.0, 1.0) - 1e-9);
}

TEST(ModulusNumeric, EllipseOsculatingCircle) {
  const auto ell = ConvexBody::ellipsoid(v2(0, 0), v2(2, 1));
  const double d = modulus_numeric(ell, 0.2, 2000);
  EXPECT_NEAR(d / (0.04 / 32.0), 1.0, 0.3);
}

TEST(ModulusNumeric, PowerCapAgainstBruteForce) {
  // The apex chord of length eps has depth exactly (eps/2)^2, but the flank of
  // the parabola near the corner is flatter, so the global modulus is smaller.
  const double eps = 0.1;
  const double numeric = modulus_numeric(ConvexBody::power_cap(2.0), eps, 2000);
  const Polyline pl = cap_polyline(20000);
  const double brute = brute_modulus(pl, eps, 20);
  EXPECT_NEAR(numeric, brute, 0.05 * brute);
  EXPECT_LT(numeric, eps * eps / 4.0);
  // Flank curvature at the corner bounds it from the osculating-circle side.
  const double c2 = (std::sqrt(5.0) - 1.0) / 2.0;
  const double kappa = 2.0 / std::pow(1.0 + 4.0 * c2, 1.5);
  EXPECT_NEAR(numeric / (kappa * eps * eps / 8.0), 1.0, 0.15);
}

TEST(ModulusNumeric, Errors) {
  EXPECT_THROW(modulus_numeric(ConvexBody::ball(v2(0, 0), 1), 2.5, 100), Error);
  EXPECT_THROW(modulus_numeric(ConvexBody::ball(make_vector({0, 0, 0}), 1), 0.5, 100), Error);
}

TEST(ModulusInverse, Examples) {
  EXPECT_EQ(modulus_inverse(Modulus::analytic_ball(1.0), 0.0), 0.0);
  EXPECT_NEAR(modulus_inverse(Modulus::analytic_ball(1.0), 1.0 - std::sqrt(3.0) / 2.0), 1.0, 1e-8);
  EXPECT_NEAR(modulus_inverse(Modulus::power_law(2.0), 0.01), 0.2, 1e-12);
  try {
    modulus_inverse(Modulus::analytic_ball(1.0), 1.5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::OutOfRange);
  }
}

TEST(ModulusTable, TabulatedBallTracksClosedForm) {
  const Modulus m = Modulus::tabulate(ConvexBody::ball(v2(0, 0), 1.0), 50, 720);
  ASSERT_FALSE(m.table().empty());
  for (const auto& [e, d] : m.table()) EXPECT_NEAR(d, modulus_ball(1.0, e), 2e-3) << e;
}

TEST(ModulusTable, IsotonicCorrectionAndInterpolation) {
  // Ratio column 0.1, 0.05 (violation), 0.3 is pooled to 0.075, 0.075, 0.3.
  const Modulus m = Modulus::numeric_table({1, 2, 3}, {0.1, 0.1, 0.9});
  EXPECT_NEAR(m.ratio(1.0), 0.075, 1e-15);
  EXPECT_NEAR(m.ratio(2.0), 0.075, 1e-15);
  EXPECT_NEAR(m.ratio(2.5), 0.1875, 1e-15);
  EXPECT_NEAR(m.ratio(0.5), 0.0375, 1e-15);
  EXPECT_NEAR(m(2.5), 2.5 * 0.1875, 1e-15);
  EXPECT_THROW(Modulus::numeric_table({1, 1}, {0, 0}), Error);
  EXPECT_THROW(Modulus::numeric_table({1, 2}, {0, NAN}), Error);
}

TEST(ModulusTable, ExportImportRoundTrip) {
  const Modulus m = Modulus::numeric_table({0.5, 1.0, 1.5}, {0.03, 0.13, 0.34});
  const Modulus back = import_modulus_table("# eps delta\n" + export_modulus_table(m));
  ASSERT_EQ(back.table().size(), 3u);
  for (std::size_t k = 0; k < 3; ++k) {
    EXPECT_EQ(back.table()[k].first, m.table()[k].first);
    EXPECT_EQ(back.table()[k].second, m.table()[k].second);
  }
  try {
    import_modulus_table("0.5 0.1\n0.7\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ParseError);
  }
}

TEST(ModulusProperties, RatioMonotoneAndQuadraticCeiling) {
  const std::vector<Modulus> moduli{
      Modulus::analytic_ball(1.0), Modulus::analytic_ball(3.0), Modulus::power_law(2.0),
      Modulus::power_law(3.0), Modulus::tabulate(ConvexBody::ellipsoid(v2(0, 0), v2(2, 1)), 60),
      Modulus::tabulate(ConvexBody::power_cap(3.0), 60)};
  for (const auto& m : moduli) {
    const double top = std::isfinite(m.domain_max()) ? m.domain_max() : 0.5;
    double prev = 0.0;
    double ceiling = 0.0;
    for (int k = 1; k <= 400; ++k) {
      const double e = top * k / 400.0;
      const double r = m.ratio(e);
      EXPECT_GE(r, prev - 1e-9);
      EXPECT_GE(m(e), 0.0);
      prev = r;
      ceiling = std::max(ceiling, m(e) / (e * e));
    }
    EXPECT_TRUE(std::isfinite(ceiling));
    EXPECT_LT(ceiling, 10.0);
  }
}

TEST(PowerLaw, Validity) {
  const Modulus m = Modulus::power_law(2.0);
  EXPECT_TRUE(m.within_validity(0.5));
  EXPECT_FALSE(m.within_validity(0.6));
  EXPECT_NEAR(m(0.3), 0.0225, 1e-15);
  EXPECT_THROW(Modulus::power_law(1.5), Error);
}
