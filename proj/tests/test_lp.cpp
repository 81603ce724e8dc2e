#include "polyapprox/error.hpp"
#include "polyapprox/lp.hpp"

#include <gtest/gtest.h>

#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

using namespace polyapprox;

namespace {

Halfspace hs(std::initializer_list<double> n, double b) { return {make_vector(n), b}; }

// Maximum over every vertex obtained by intersecting n constraints.
double brute_force_max(const LinearProgram& lp) {
  const int n = static_cast<int>(lp.objective.size());
  const int m = static_cast<int>(lp.constraints.size());
  double best = -std::numeric_limits<double>::infinity();
  std::vector<int> pick(static_cast<std::size_t>(n));
  auto visit = [&](auto&& self, int start, int depth) -> void {
    if (depth == n) {
      Matrix a(n, n);
      Vector b(n);
      for (int r = 0; r < n; ++r) {
        a.row(r) = lp.constraints[static_cast<std::size_t>(pick[static_cast<std::size_t>(r)])]
                       .normal.transpose();
        b[r] = lp.constraints[static_cast<std::size_t>(pick[static_cast<std::size_t>(r)])].offset;
      }
      Eigen::FullPivLU<Matrix> lu(a);
      if (lu.rank() < n) return;
      const Vector x = lu.solve(b);
      for (const auto& h : lp.constraints) {
        if (h.normal.dot(x) > h.offset + 1e-9) return;
      }
      best = std::max(best, lp.objective.dot(x));
      return;
    }
    for (int i = start; i < m; ++i) {
      pick[static_cast<std::size_t>(depth)] = i;
      self(self, i + 1, depth + 1);
    }
  };
  visit(visit, 0, 0);
  return best;
}

}  // namespace

TEST(Lp, UnitSquare) {
  LinearProgram lp{make_vector({1, 1}),
                   {hs({1, 0}, 1), hs({-1, 0}, 1), hs({0, 1}, 1), hs({0, -1}, 1)}};
  const LpOutcome out = solve_max(lp);
  ASSERT_EQ(out.status, LpStatus::Optimal);
  EXPECT_NEAR(out.value, 2.0, 1e-12);
  EXPECT_NEAR(out.x[0], 1.0, 1e-12);
  EXPECT_NEAR(out.x[1], 1.0, 1e-12);
}

TEST(Lp, InfeasibleAndUnbounded) {
  LinearProgram infeasible{make_vector({1, 0}), {hs({1, 0}, -1), hs({-1, 0}, -1)}};
  EXPECT_EQ(solve_max(infeasible).status, LpStatus::Infeasible);
  LinearProgram unbounded{make_vector({1, 0}), {hs({-1, 0}, 0), hs({0, 1}, 1), hs({0, -1}, 1)}};
  EXPECT_EQ(solve_max(unbounded).status, LpStatus::Unbounded);
}

TEST(Lp, DegenerateVertexTerminates) {
  // Many constraints through the same optimal vertex (1, 1).
  LinearProgram lp{make_vector({1, 1}), {hs({1, 0}, 1), hs({0, 1}, 1), hs({-1, 0}, 1),
                                         hs({0, -1}, 1)}};
  for (int k = 1; k <= 8; ++k) {
    const double t = 0.1 * k;
    lp.constraints.push_back(hs({t, 1 - t}, 1.0));
  }
  const LpOutcome out = solve_max(lp);
  ASSERT_EQ(out.status, LpStatus::Optimal);
  EXPECT_NEAR(out.value, 2.0, 1e-12);
}

TEST(Lp, OracleEquivalenceAndFeasibility) {
  std::mt19937_64 rng(12345);
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> unif(0.2, 2.0);
  std::uniform_int_distribution<int> count(6, 12);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = trial % 2 == 0 ? 2 : 3;
    LinearProgram lp;
    lp.objective = Vector(n);
    for (int k = 0; k < n; ++k) lp.objective[k] = gauss(rng);
    // Box keeps the instance bounded; random cuts shape it.
    for (int k = 0; k < n; ++k) {
      Vector e = zero_vector(n);
      e[k] = 1.0;
      lp.constraints.push_back({e, 3.0});
      lp.constraints.push_back({-e, 3.0});
    }
    const int extra = count(rng) - 2 * n;
    for (int c = 0; c < extra; ++c) {
      Vector p(n);
      for (int k = 0; k < n; ++k) p[k] = gauss(rng);
      lp.constraints.push_back({p, unif(rng)});
    }
    const LpOutcome out = solve_max(lp);
    ASSERT_EQ(out.status, LpStatus::Optimal);
    EXPECT_NEAR(out.value, brute_force_max(lp), 1e-7) << "trial " << trial;
    for (const auto& h : lp.constraints) {
      EXPECT_LE(h.normal.dot(out.x), h.offset + 1e-8 * (1 + std::abs(h.offset)));
    }
    const LpOutcome again = solve_max(lp);
    EXPECT_EQ(again.value, out.value);
    EXPECT_TRUE((again.x.array() == out.x.array()).all());
  }
}

TEST(Lp, ManyConstraints) {
  LinearProgram lp{make_vector({0.3, 0.7}), {}};
  const int n = 4096;
  for (int k = 0; k < n; ++k) {
    const double t = 2.0 * M_PI * k / n;
    lp.constraints.push_back(hs({std::cos(t), std::sin(t)}, 1.0));
  }
  const LpOutcome out = solve_max(lp);
  ASSERT_EQ(out.status, LpStatus::Optimal);
  EXPECT_NEAR(out.value, std::hypot(0.3, 0.7), 1e-6);
}

TEST(Chebyshev, Square) {
  std::vector<Halfspace> sq{hs({1, 0}, 1), hs({-1, 0}, 1), hs({0, 1}, 1), hs({0, -1}, 1)};
  const ChebyshevBall b = chebyshev_ball(sq);
  EXPECT_EQ(b.radius, 1.0);
  EXPECT_EQ(b.center[0], 0.0);
  EXPECT_EQ(b.center[1], 0.0);
}

TEST(Chebyshev, TriangleAndErrors) {
  // Right triangle with legs 1: inradius (2 - sqrt 2) / 2.
  std::vector<Halfspace> tri{hs({-1, 0}, 0), hs({0, -1}, 0), hs({1, 1}, 1)};
  const ChebyshevBall b = chebyshev_ball(tri);
  const double r = (2.0 - std::sqrt(2.0)) / 2.0;
  EXPECT_NEAR(b.radius, r, 1e-12);
  EXPECT_NEAR(b.center[0], r, 1e-12);
  EXPECT_NEAR(b.center[1], r, 1e-12);

  std::vector<Halfspace> empty{hs({1, 0}, -1), hs({-1, 0}, -1), hs({0, 1}, 1), hs({0, -1}, 1)};
  try {
    chebyshev_ball(empty);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Infeasible);
  }
  std::vector<Halfspace> strip{hs({0, 1}, 1), hs({0, -1}, 1)};
  try {
    chebyshev_ball(strip);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Unbounded);
  }
}

TEST(Chebyshev, RandomPlanarAgainstTripleEnumeration) {
  std::mt19937_64 rng(777);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
  std::uniform_real_distribution<double> offset(0.3, 1.5);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Halfspace> h;
    for (int k = 0; k < 8; ++k) {
      const double t = angle(rng);
      h.push_back(hs({std::cos(t), std::sin(t)}, offset(rng)));
    }
    // Keep the region bounded.
    for (int k = 0; k < 4; ++k) {
      const double t = M_PI / 2 * k + 0.1;
      h.push_back(hs({std::cos(t), std::sin(t)}, 2.0));
    }
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < h.size(); ++i) {
      for (std::size_t j = i + 1; j < h.size(); ++j) {
        for (std::size_t k = j + 1; k < h.size(); ++k) {
          Matrix a(3, 3);
          Vector b(3);
          std::size_t idx[3] = {i, j, k};
          for (int r = 0; r < 3; ++r) {
            a(r, 0) = h[idx[r]].normal[0];
            a(r, 1) = h[idx[r]].normal[1];
            a(r, 2) = 1.0;
            b[r] = h[idx[r]].offset;
          }
          Eigen::FullPivLU<Matrix> lu(a);
          if (lu.rank() < 3) continue;
          const Vector z = lu.solve(b);
          bool ok = true;
          for (const auto& c : h) {
            if (c.normal[0] * z[0] + c.normal[1] * z[1] + z[2] > c.offset + 1e-9) ok = false;
          }
          if (ok) best = std::max(best, z[2]);
        }
      }
    }
    EXPECT_NEAR(chebyshev_ball(h).radius, best, 1e-7);
  }
}
