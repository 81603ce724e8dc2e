#include "polyapprox/experiments.hpp"
#include "polyapprox/error.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace polyapprox;

TEST(ExactnessSetup, NormalsMatchNumericalTangents) {
  for (double s : {2.0, 3.0}) {
    for (double eps : {0.1, 0.2, 0.3}) {
      const ExactnessSetup st = exactness_setup(s, eps);
      const double x = eps / 2.0;
      const double h = 1e-6;
      const double slope = (std::pow(x + h, s) - std::pow(x - h, s)) / (2.0 * h);
      const double n = std::hypot(slope, 1.0);
      EXPECT_NEAR(st.p_b[0], slope / n, 1e-8);
      EXPECT_NEAR(st.p_b[1], -1.0 / n, 1e-8);
      EXPECT_NEAR(st.p_a[0], -slope / n, 1e-8);
      EXPECT_NEAR(st.p_a[1], -1.0 / n, 1e-8);
      EXPECT_NEAR(st.gap, (st.p_b - st.p_a).norm(), 1e-15);
      EXPECT_NEAR(st.lower_bound, (s - 1.0) * std::pow(x, s), 1e-15);

      // The cap attains its support in direction p_b at (eps/2, (eps/2)^s).
      const ConvexBody cap = ConvexBody::power_cap(s);
      EXPECT_NEAR(support(cap, st.p_b), st.p_b[0] * x + st.p_b[1] * std::pow(x, s), 1e-10);
    }
  }
}

TEST(ExactnessSetup, AnglesAreSortedAndPaIsNextToPb) {
  const ExactnessSetup st = exactness_setup(2.0, 0.2);
  ASSERT_GE(st.angles.size(), 8u);
  for (std::size_t i = 1; i < st.angles.size(); ++i) EXPECT_LT(st.angles[i - 1], st.angles[i]);
  const double ta = std::atan2(st.p_a[1], st.p_a[0]) + 2.0 * M_PI;
  const double tb = std::atan2(st.p_b[1], st.p_b[0]) + 2.0 * M_PI;
  std::size_t ia = 0;
  for (std::size_t i = 0; i < st.angles.size(); ++i) {
    if (std::abs(st.angles[i] - ta) < 1e-12) ia = i;
  }
  ASSERT_LT(ia + 1, st.angles.size());
  EXPECT_NEAR(st.angles[ia + 1], tb, 1e-12);
}

TEST(ExactnessSetup, RejectsBadInputs) {
  EXPECT_THROW(exactness_setup(1.5, 0.2), Error);
  EXPECT_THROW(exactness_setup(2.0, 0.0), Error);
}

namespace {

void expect_exactness(double s, double expected_slope) {
  ExperimentOptions opt;
  opt.exponent = s;
  const ExperimentResult r = run_experiment("exactness", opt);
  ASSERT_TRUE(r.slope.has_value());
  EXPECT_NEAR(*r.slope, expected_slope, 0.15);
  for (const auto& row : r.rows) {
    ASSERT_EQ(row.extra.size(), 2u);
    EXPECT_GE(row.h_measured, row.extra[1] - 1e-9) << "eps = " << row.extra[0];
    ASSERT_TRUE(row.bound_classical.has_value());
    EXPECT_GE(*row.bound_classical, row.h_measured);
    if (row.hyp_ok) {
      ASSERT_TRUE(row.bound_main.has_value());
      EXPECT_GE(*row.bound_main, row.h_measured);
    }
  }
}

}  // namespace

TEST(Experiments, ExactnessQuadraticCap) { expect_exactness(2.0, 2.0); }

TEST(Experiments, ExactnessCubicCap) { expect_exactness(3.0, 1.5); }

TEST(Experiments, ExactnessSkipsWideGaps) {
  ExperimentOptions opt;
  const ExperimentResult r = run_experiment("exactness", opt);
  for (const auto& row : r.rows) EXPECT_LT(row.delta_step, 0.5);
  EXPECT_LT(r.rows.size(), 8u);
}

TEST(Experiments, ConvergenceOnDiscIsQuadratic) {
  ExperimentOptions opt;
  const ExperimentResult r = run_experiment("convergence", opt);
  ASSERT_EQ(r.rows.size(), 4u);
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    const auto& row = r.rows[i];
    // Circumscribed regular N-gon: h = 1/cos(pi/N) - 1.
    EXPECT_NEAR(row.h_measured, 1.0 / std::cos(M_PI / row.n) - 1.0, 1e-12);
    ASSERT_TRUE(row.bound_main && row.bound_classical);
    EXPECT_GE(*row.bound_main, row.h_measured);
    EXPECT_GE(*row.bound_classical, row.h_measured);
    if (i > 0) EXPECT_NEAR(r.rows[i - 1].h_measured / row.h_measured, 4.0, 0.1);
  }
}

TEST(Experiments, BoundsDominateMeasurements) {
  for (const char* kind : {"geomdiff", "intersection", "alg"}) {
    ExperimentOptions opt;
    opt.dirs = 1024;
    const ExperimentResult r = run_experiment(kind, opt);
    ASSERT_FALSE(r.rows.empty()) << kind;
    for (const auto& row : r.rows) {
      if (!row.hyp_ok || !row.bound_main) continue;
      EXPECT_GE(*row.bound_main, row.h_measured) << kind << " " << row.label << " N=" << row.n;
    }
  }
}

TEST(Experiments, RadiusRatio) {
  const ExperimentResult r = run_experiment("radius", ExperimentOptions{});
  ASSERT_EQ(r.rows.size(), 2u);
  EXPECT_NEAR(r.rows[0].extra[0], 1.0, 1e-6);
  EXPECT_NEAR(r.rows[0].extra[1], 1.0, 1e-6);
  EXPECT_NEAR(r.rows[1].extra[0], 1.0, 1e-6);
  // The polygon overestimates d by at most its Hausdorff distance to the body.
  EXPECT_GE(r.rows[1].extra[1], 4.0 - 1e-9);
  EXPECT_LE(r.rows[1].extra[1], 4.0 + r.rows[1].h_resolution + 1e-9);
  for (const auto& row : r.rows) {
    ASSERT_TRUE(row.bound_main);
    EXPECT_LE(row.h_measured, *row.bound_main + 1e-6) << row.label;
  }
}

TEST(Experiments, CsvIsIndependentOfThreadCount) {
  ExperimentOptions one;
  ExperimentOptions four;
  four.threads = 4;
  for (const char* kind : {"convergence", "exactness", "geomdiff"}) {
    one.dirs = four.dirs = 512;
    EXPECT_EQ(to_csv(run_experiment(kind, one)), to_csv(run_experiment(kind, four))) << kind;
  }
}

TEST(Experiments, CsvLayout) {
  const ExperimentResult r = run_experiment("geomdiff", ExperimentOptions{});
  const std::string csv = to_csv(r);
  EXPECT_EQ(csv.substr(0, csv.find('\n')),
            "N,delta_step,h_measured,h_resolution,bound_main,bound_classical,hyp_ok,runtime_ms,d,r0,case");
  // geomdiff has no classical bound: its cell stays empty.
  const std::string first = csv.substr(csv.find('\n') + 1);
  EXPECT_NE(first.find(",,"), std::string::npos);
}

TEST(Experiments, UnknownKind) { EXPECT_THROW(run_experiment("nope", ExperimentOptions{}), Error); }
