#include "polyapprox/bounds.hpp"
#include "polyapprox/error.hpp"
#include "polyapprox/grid.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace polyapprox;

namespace {

Vector v2(double x, double y) { return make_vector({x, y}); }

const double kStep16 = 2.0 * std::sin(M_PI / 16);

}  // namespace

TEST(EpsilonOfStep, Examples) {
  const Modulus ball = Modulus::analytic_ball(1.0);
  EXPECT_NEAR(kStep16 / (4 - kStep16 * kStep16), 0.101405, 1e-6);
  EXPECT_NEAR(epsilon_of_step(ball, 0.390181, 2.0), 0.7792, 1e-3);
  EXPECT_NEAR(epsilon_of_step(ball, 0.1, 2.0), 0.2005, 1e-3);
  // Solve delta(e)/e = c for the ball directly: e = 4c / (1 + 4c^2) * 2... check residual.
  const double e = epsilon_of_step(ball, kStep16, 2.0);
  EXPECT_NEAR(modulus_ball(1.0, e) / e, kStep16 / (4 - kStep16 * kStep16), 1e-9);

  const Modulus pl = Modulus::power_law(2.0);
  for (double step : {0.05, 0.2, 0.39}) {
    EXPECT_NEAR(epsilon_of_step(pl, step, 2.0), 4 * step / (4 - step * step), 1e-9);
  }
}

TEST(EpsilonOfStep, HypothesisFailure) {
  // delta(diam)/diam for a tiny power-law range is below the step constant.
  const Modulus pl = Modulus::power_law(2.0);
  try {
    epsilon_of_step(pl, 0.45, 0.2);
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), ErrorCode::GridTooCoarse);
  }
  EXPECT_THROW(epsilon_of_step(pl, 0.6, 2.0), Error);
}

TEST(BoundMain, Examples) {
  const Modulus ball = Modulus::analytic_ball(1.0);
  const BoundReport r = bound_main(ball, 0.390181, 2.0);
  ASSERT_TRUE(r.hypotheses_ok);
  EXPECT_NEAR(r.value, 0.3475, 2e-3);
  EXPECT_NEAR(r.value, 8.0 / 7.0 * epsilon_of_step(ball, 0.390181, 2.0) * 0.390181, 1e-15);
  double prev = r.value;
  for (double step = 0.390181 / 2; step > 1e-3; step /= 2) {
    const double v = bound_main(ball, step, 2.0).value;
    EXPECT_LT(v, prev);
    prev = v;
  }
  const Modulus pl = Modulus::power_law(2.0);
  for (double step : {0.1, 0.3}) {
    EXPECT_NEAR(bound_main(pl, step, 2.0).value, 8.0 / 7.0 * 4 * step * step / (4 - step * step),
                1e-9);
  }
  const BoundReport bad = bound_main(pl, 0.45, 0.2);
  EXPECT_FALSE(bad.hypotheses_ok);
  EXPECT_FALSE(bad.reasons.empty());
  EXPECT_TRUE(std::isnan(bad.value));
  EXPECT_THROW(bad.value_or_throw(), Error);
}

TEST(BoundGeomdiff, Examples) {
  const Modulus mb = Modulus::analytic_ball(2.0);
  const BoundReport same = bound_geomdiff(mb, 0.2, 1.5, 1.5, 4.0);
  EXPECT_NEAR(same.value, bound_main(mb, 0.2, 4.0).value, 1e-15);
  const BoundReport twice = bound_geomdiff(mb, 0.2, 3.0, 1.5, 4.0);
  EXPECT_NEAR(twice.value, 2.0 * same.value, 1e-15);
  EXPECT_TRUE(std::isfinite(same.value));
  EXPECT_THROW(bound_geomdiff(mb, 0.2, 1.0, 0.0, 4.0), Error);
  EXPECT_THROW(bound_geomdiff(mb, 0.2, 1.0, 2.0, 4.0), Error);
}

TEST(BoundIntersection, Examples) {
  const Modulus m = Modulus::analytic_ball(1.0);
  const double eps = epsilon_of_step(m, 0.2, 2.0);
  const BoundReport r = bound_intersection(m, m, 0.2, 1.8, 0.75, 2.0, 2.0);
  EXPECT_NEAR(r.value, 8.0 / 7.0 * (eps + 2 * (1.8 / 0.75) * eps) * 0.2, 1e-15);
  EXPECT_LT(bound_intersection(m, m, 0.2, 1.8, 0.9, 2.0, 2.0).value, r.value);
  EXPECT_THROW(bound_intersection(m, m, 0.2, 1.0, -1.0, 2.0, 2.0), Error);
}

TEST(BoundRadiusRatio, Examples) {
  // Ball of radius r0: d = r0 <= 2 r0.
  EXPECT_GE(bound_radius_ratio(Modulus::analytic_ball(1.0), 1.0), 2.0);
  EXPECT_NEAR(bound_radius_ratio(Modulus::power_law(2.0), 0.02), 0.22, 1e-12);
  const Modulus ell =
      Modulus::tabulate(ConvexBody::ellipsoid(v2(0, 0), v2(4, 1)), 200, 720);
  EXPECT_GE(bound_radius_ratio(ell, 1.0), 4.0);
  EXPECT_THROW(bound_radius_ratio(Modulus::analytic_ball(1.0), 5.0), Error);
}

TEST(BoundAlg, Examples) {
  const double v = bound_alg(1, 1, 1, 0.390181);
  const double outer = 1 + 4 * 0.390181;
  EXPECT_NEAR(v, 2 * outer * outer * 0.390181, 1e-12);
  EXPECT_NEAR(v, 5.117, 1e-3);
  EXPECT_GE(v, 0.019215);
  EXPECT_NEAR(bound_alg(1, 1, 1, 1e-8) / 1e-8, 2.0, 1e-6);
  EXPECT_NEAR(bound_alg(1, 1, 2, 0.2), 0.5 * bound_alg(1, 1, 1, 0.2), 1e-15);
  EXPECT_THROW(bound_alg(0, 1, 1, 0.2), Error);
}

TEST(ClassicalBounds, Examples) {
  EXPECT_NEAR(classical_bounds(1.0, 0.39, ClassicalKind::General), 0.78, 1e-15);
  EXPECT_NEAR(classical_bounds(1.0, 0.390181, ClassicalKind::BallIntersection), 0.304483, 1e-6);
  EXPECT_EQ(classical_bounds(1.0, 0.0, ClassicalKind::General), 0.0);
}

namespace {

// Random pairs with |p1| = 1, 1 - step^2/2 <= |p2| <= 1, |p1 - p2| < step.
template <class F>
void for_random_pairs(double step, int count, std::uint64_t seed, F&& f) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ang(0, 2 * M_PI);
  std::uniform_real_distribution<double> u(0, 1);
  int done = 0;
  while (done < count) {
    const double a = ang(rng);
    const Vector p1 = v2(std::cos(a), std::sin(a));
    const double len = 1 - step * step / 2 * u(rng);
    const double b = a + (2 * u(rng) - 1) * step;
    const Vector p2 = len * v2(std::cos(b), std::sin(b));
    if (!((p1 - p2).norm() < step)) continue;
    f(p1, p2);
    ++done;
  }
}

}  // namespace

TEST(Properties, ArgmaxContinuityAndContinuousGradient) {
  struct Case {
    ConvexBody body;
    Modulus modulus;
  };
  const std::vector<Case> cases{
      {ConvexBody::ball(v2(0.5, -1), 1.0), Modulus::analytic_ball(1.0)},
      {ConvexBody::ellipsoid(v2(0, 0), v2(2, 1)),
       Modulus::tabulate(ConvexBody::ellipsoid(v2(0, 0), v2(2, 1)))}};
  for (const auto& c : cases) {
    const double diam = diameter(c.body);
    for (double step : {grid_uniform_2d(16).step(), grid_uniform_2d(64).step()}) {
      const double eps = epsilon_of_step(c.modulus, step, diam);
      for_random_pairs(step, 1000, 99, [&](const Vector& p1, const Vector& p2) {
        const SupportEval e1 = support_argmax(c.body, p1);
        const SupportEval e2 = support_argmax(c.body, p2);
        EXPECT_LT((e1.argmax - e2.argmax).norm(), eps);
        const double rem = e1.value - e2.value - e2.argmax.dot(p1 - p2);
        EXPECT_LE(std::abs(rem), eps * step);
      });
    }
  }
}
