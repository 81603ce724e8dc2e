#include "polyapprox/error.hpp"
#include "polyapprox/metrics.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace polyapprox;

namespace {

Vector v2(double x, double y) { return make_vector({x, y}); }
const double kSec16 = 1.0 / std::cos(M_PI / 16);

}  // namespace

TEST(HausdorffBySupport, Examples) {
  const auto a = ConvexBody::ellipsoid(v2(0.2, 0), v2(2, 1));
  const HausdorffResult zero = hausdorff_by_support(SupportView::of(a), SupportView::of(a), 64);
  EXPECT_EQ(zero.value, 0.0);

  const auto b1 = ConvexBody::ball(v2(0.3, -0.4), 1.0);
  const auto b2 = ConvexBody::ball(v2(-1.0, 0.6), 1.7);
  const double exact = (v2(0.3, -0.4) - v2(-1.0, 0.6)).norm() + 0.7;
  const HausdorffResult r = hausdorff_by_support(SupportView::of(b1), SupportView::of(b2), 256);
  EXPECT_LE(r.value, exact + 1e-12);
  EXPECT_GE(r.value + r.resolution, exact);
  EXPECT_NEAR(r.value, exact, 1e-9);  // refinement finds the exact direction

  const auto ball = ConvexBody::ball(v2(0, 0), 1);
  const HPolytope hat = external_approx(ball, grid_uniform_2d(16));
  const HausdorffResult big = hausdorff_by_support(SupportView::of(ball), SupportView::of(hat), 100000);
  EXPECT_NEAR(big.value, kSec16 - 1.0, 1e-4);
  EXPECT_EQ(big.num_directions, 100000);
  EXPECT_EQ(big.method, HausdorffResult::Method::SupportSampled);
  EXPECT_THROW(hausdorff_by_support(SupportView::of(ball), SupportView::of(ball), 10), Error);
}

TEST(HausdorffBySupport, ThreeDimensional) {
  const auto a = ConvexBody::ball(make_vector({0, 0, 0}), 1.0);
  const auto b = ConvexBody::ball(make_vector({0.1, 0.2, -0.2}), 1.5);
  const HausdorffResult r = hausdorff_by_support(SupportView::of(a), SupportView::of(b), 1000);
  EXPECT_NEAR(r.value, 0.3 + 0.5, 1e-9);
  EXPECT_GE(r.num_directions, 1000);
  // Polytope view in 3-D goes through the LP.
  const HPolytope hat = external_approx(a, grid_icosphere_3d(3));
  const HausdorffResult h = hausdorff_by_support(SupportView::of(a), SupportView::of(hat), 200);
  EXPECT_GT(h.value, 0.0);
  EXPECT_LT(h.value, 0.1);
}

TEST(HausdorffOuter2d, Examples) {
  const auto ball = ConvexBody::ball(v2(0, 0), 1);
  const HausdorffResult r = hausdorff_outer_2d(external_approx(ball, grid_uniform_2d(16)), ball);
  EXPECT_NEAR(r.value, kSec16 - 1.0, 1e-8);
  EXPECT_EQ(r.method, HausdorffResult::Method::Exact2D);
  EXPECT_EQ(r.resolution, 0.0);

  std::vector<Halfspace> sq{{v2(1, 0), 1}, {v2(-1, 0), 1}, {v2(0, 1), 1}, {v2(0, -1), 1}};
  EXPECT_NEAR(hausdorff_outer_2d(HPolytope(sq), ConvexBody::hpolytope(sq)).value, 0.0, 1e-9);

  std::vector<Halfspace> small{{v2(1, 0), 0.5}, {v2(-1, 0), 1}, {v2(0, 1), 1}, {v2(0, -1), 1}};
  try {
    hausdorff_outer_2d(HPolytope(small), ball);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotOuter);
  }
}

TEST(Properties, SymmetryAndTriangle) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(-1, 1);
  std::uniform_real_distribution<double> r(0.3, 2);
  auto random_body = [&](int k) {
    if (k % 2 == 0) return ConvexBody::ball(v2(u(rng), u(rng)), r(rng));
    Matrix rot(2, 2);
    const double t = u(rng) * M_PI;
    rot << std::cos(t), -std::sin(t), std::sin(t), std::cos(t);
    return ConvexBody::ellipsoid(v2(u(rng), u(rng)), v2(r(rng), r(rng)), rot);
  };
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = SupportView::of(random_body(trial));
    const auto b = SupportView::of(random_body(trial + 1));
    const auto c = SupportView::of(random_body(trial + 2));
    const auto ab = hausdorff_by_support(a, b, 512);
    const auto ba = hausdorff_by_support(b, a, 512);
    const auto bc = hausdorff_by_support(b, c, 512);
    const auto ac = hausdorff_by_support(a, c, 512);
    EXPECT_NEAR(ab.value, ba.value, 2 * std::max(ab.resolution, ba.resolution));
    EXPECT_LE(ac.value, ab.value + bc.value + 2 * std::max({ab.resolution, bc.resolution, ac.resolution}));
  }
}

TEST(Properties, ExactAndSampledAgree) {
  for (const auto& body : {ConvexBody::ball(v2(0, 0), 1), ConvexBody::ellipsoid(v2(0, 0), v2(2, 1)),
                           ConvexBody::power_cap(2.0)}) {
    for (int n : {16, 32, 64}) {
      const HPolytope hat = external_approx(body, grid_uniform_2d(n));
      const double exact = hausdorff_outer_2d(hat, body).value;
      const auto sampled = hausdorff_by_support(SupportView::of(body), SupportView::of(hat), 2048);
      EXPECT_LE(sampled.value, exact + 1e-9) << body.kind_name() << " " << n;
      EXPECT_GE(sampled.value + sampled.resolution, exact - 1e-9) << body.kind_name() << " " << n;
    }
  }
}

TEST(Properties, MonotoneRefinement) {
  const auto body = ConvexBody::ellipsoid(v2(0, 0), v2(2, 1));
  const HPolytope hat = external_approx(body, grid_uniform_2d(20));
  HausdorffResult prev = hausdorff_by_support(SupportView::of(body), SupportView::of(hat), 64);
  for (int m : {128, 256, 1024, 4096}) {
    const HausdorffResult cur = hausdorff_by_support(SupportView::of(body), SupportView::of(hat), m);
    EXPECT_GE(cur.value, prev.value - prev.resolution);
    prev = cur;
  }
}
