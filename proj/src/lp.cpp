#include "polyapprox/lp.hpp"

#include "polyapprox/error.hpp"

#include <Eigen/LU>

#include <cmath>
#include <cstddef>
#include <string>

namespace polyapprox {
namespace {

constexpr double kPivotTol = 1e-9;
constexpr double kCostTol = 1e-9;

using SmallMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, 4, 4>;

enum class DualStatus { Optimal, Infeasible, Unbounded };

// Tableau for  min (b, y)  s.t.  A^T y = c,  y >= 0.
// Rows 0..n-1 are the equality rows, row n holds reduced costs; columns
// 0..m-1 are the y variables, m..m+n-1 the artificials, m+n the right side.
class DualTableau {
 public:
  DualTableau(std::span<const Halfspace> rows, const Vector& c)
      : m_(rows.size()),
        n_(static_cast<std::size_t>(c.size())),
        width_(m_ + n_ + 1),
        data_((n_ + 1) * width_, 0.0),
        basis_(n_),
        sign_(n_, 1.0) {
    for (std::size_t i = 0; i < n_; ++i) {
      sign_[i] = c[static_cast<Eigen::Index>(i)] < 0.0 ? -1.0 : 1.0;
      for (std::size_t j = 0; j < m_; ++j) {
        at(i, j) = sign_[i] * rows[j].normal[static_cast<Eigen::Index>(i)];
      }
      at(i, m_ + i) = 1.0;
      at(i, rhs()) = sign_[i] * c[static_cast<Eigen::Index>(i)];
      basis_[i] = m_ + i;
    }
    iteration_budget_ = 50 * (m_ + n_) + 1000;
  }

  // Phase 1: drive the artificials to zero. Returns false when A^T y = c has
  // no nonnegative solution.
  bool phase_one(double tolerance) {
    for (std::size_t j = 0; j <= rhs(); ++j) {
      double reduced = (j >= m_ && j < m_ + n_) ? 1.0 : 0.0;
      for (std::size_t i = 0; i < n_; ++i) reduced -= at(i, j);
      at(n_, j) = reduced;
    }
    if (iterate(m_ + n_) == DualStatus::Unbounded) {
      throw Error(ErrorCode::NumericalFailure, "phase-one objective unbounded");
    }
    if (-at(n_, rhs()) > tolerance) return false;
    evict_artificials();
    return true;
  }

  // Phase 2 with costs b_j on y and zero on artificials; artificials never
  // re-enter.
  DualStatus phase_two(std::span<const Halfspace> rows) {
    for (std::size_t j = 0; j <= rhs(); ++j) {
      double reduced = (j < m_) ? rows[j].offset : 0.0;
      for (std::size_t i = 0; i < n_; ++i) reduced -= cost_of(rows, basis_[i]) * at(i, j);
      at(n_, j) = reduced;
    }
    return iterate(m_);
  }

  // Simplex multipliers pi with (col_k, pi) = cost_k for every basic column k.
  Vector multipliers(std::span<const Halfspace> rows) const {
    const auto n = static_cast<Eigen::Index>(n_);
    SmallMatrix basis_rows(n, n);
    Vector rhs_costs(n);
    for (std::size_t i = 0; i < n_; ++i) {
      const auto r = static_cast<Eigen::Index>(i);
      const std::size_t col = basis_[i];
      if (col < m_) {
        basis_rows.row(r) = rows[col].normal.transpose();
        rhs_costs[r] = rows[col].offset;
      } else {
        basis_rows.row(r).setZero();
        basis_rows(r, static_cast<Eigen::Index>(col - m_)) = sign_[col - m_];
        rhs_costs[r] = 0.0;
      }
    }
    Eigen::FullPivLU<SmallMatrix> lu(basis_rows);
    if (!lu.isInvertible()) {
      throw Error(ErrorCode::NumericalFailure, "singular optimal basis");
    }
    Vector pi = lu.solve(rhs_costs);
    return pi;
  }

 private:
  double& at(std::size_t r, std::size_t c) { return data_[r * width_ + c]; }
  double at(std::size_t r, std::size_t c) const { return data_[r * width_ + c]; }
  std::size_t rhs() const { return width_ - 1; }

  double cost_of(std::span<const Halfspace> rows, std::size_t col) const {
    return col < m_ ? rows[col].offset : 0.0;
  }

  // Bland: lowest-index improving column enters; ratio ties go to the row
  // whose basic variable has the lowest index.
  DualStatus iterate(std::size_t entering_limit) {
    while (true) {
      std::size_t entering = entering_limit;
      for (std::size_t j = 0; j < entering_limit; ++j) {
        if (at(n_, j) < -kCostTol) {
          entering = j;
          break;
        }
      }
      if (entering == entering_limit) return DualStatus::Optimal;

      std::size_t leaving = n_;
      double best_ratio = 0.0;
      for (std::size_t i = 0; i < n_; ++i) {
        const double a = at(i, entering);
        if (a <= kPivotTol) continue;
        const double ratio = at(i, rhs()) / a;
        if (leaving == n_ || ratio < best_ratio - 1e-14 ||
            (ratio <= best_ratio + 1e-14 && basis_[i] < basis_[leaving])) {
          leaving = i;
          best_ratio = ratio;
        }
      }
      if (leaving == n_) return DualStatus::Unbounded;
      if (iterations_++ >= iteration_budget_) {
        throw Error(ErrorCode::NumericalFailure,
                    "simplex iteration budget exhausted after " + std::to_string(iterations_));
      }
      pivot(leaving, entering);
    }
  }

  void evict_artificials() {
    for (std::size_t i = 0; i < n_; ++i) {
      if (basis_[i] < m_) continue;
      for (std::size_t j = 0; j < m_; ++j) {
        if (std::abs(at(i, j)) > kPivotTol) {
          pivot(i, j);
          break;
        }
      }
      // A row with no usable entry is redundant; its artificial stays basic at 0.
    }
  }

  void pivot(std::size_t r, std::size_t c) {
    const double inv = 1.0 / at(r, c);
    for (std::size_t j = 0; j < width_; ++j) at(r, j) *= inv;
    at(r, c) = 1.0;
    for (std::size_t i = 0; i <= n_; ++i) {
      if (i == r) continue;
      const double factor = at(i, c);
      if (factor == 0.0) continue;
      for (std::size_t j = 0; j < width_; ++j) at(i, j) -= factor * at(r, j);
      at(i, c) = 0.0;
    }
    basis_[r] = c;
  }

  std::size_t m_;
  std::size_t n_;
  std::size_t width_;
  std::vector<double> data_;
  std::vector<std::size_t> basis_;
  std::vector<double> sign_;
  std::size_t iterations_ = 0;
  std::size_t iteration_budget_ = 0;
};

void validate(const LinearProgram& lp) {
  if (lp.constraints.empty()) {
    throw Error(ErrorCode::InvalidGeometry, "linear program needs at least one constraint");
  }
  const auto n = lp.objective.size();
  if (n < 1 || n > 4) {
    throw Error(ErrorCode::UnsupportedDimension, "LP supports 1..4 variables");
  }
  if (!lp.objective.allFinite()) {
    throw Error(ErrorCode::InvalidGeometry, "objective has non-finite entries");
  }
  for (const auto& h : lp.constraints) {
    if (h.normal.size() != n) {
      throw Error(ErrorCode::UnsupportedDimension, "constraint dimension mismatch");
    }
    if (!h.normal.allFinite() || !std::isfinite(h.offset)) {
      throw Error(ErrorCode::InvalidGeometry, "constraint has non-finite entries");
    }
  }
}

bool primal_feasible(std::span<const Halfspace> rows, int dim) {
  DualTableau tableau(rows, Vector::Zero(dim));
  tableau.phase_one(1e-12);
  return tableau.phase_two(rows) == DualStatus::Optimal;
}

}  // namespace

LpOutcome solve_max(const LinearProgram& lp) {
  validate(lp);
  const std::span<const Halfspace> rows(lp.constraints);
  const int dim = static_cast<int>(lp.objective.size());

  DualTableau tableau(rows, lp.objective);
  const double feas_tol = 1e-9 * (1.0 + lp.objective.lpNorm<Eigen::Infinity>());
  if (!tableau.phase_one(feas_tol)) {
    // The objective is not a nonnegative combination of constraint normals:
    // the primal is unbounded if feasible at all.
    LpOutcome out;
    out.status = primal_feasible(rows, dim) ? LpStatus::Unbounded : LpStatus::Infeasible;
    return out;
  }
  if (tableau.phase_two(rows) == DualStatus::Unbounded) {
    return LpOutcome{LpStatus::Infeasible, {}, 0.0};
  }

  LpOutcome out;
  out.status = LpStatus::Optimal;
  out.x = tableau.multipliers(rows);
  out.value = lp.objective.dot(out.x);
  for (const auto& h : rows) {
    const double slack = h.normal.dot(out.x) - h.offset;
    if (slack > 1e-8 * (1.0 + std::abs(h.offset))) {
      throw Error(ErrorCode::NumericalFailure,
                  "recovered optimum violates a constraint by " + std::to_string(slack));
    }
  }
  return out;
}

ChebyshevBall chebyshev_ball(std::span<const Halfspace> halfspaces) {
  if (halfspaces.empty()) {
    throw Error(ErrorCode::InvalidGeometry, "no halfspaces");
  }
  const auto n = halfspaces.front().normal.size();
  if (n < 1 || n > 3) {
    throw Error(ErrorCode::UnsupportedDimension, "inscribed ball supports dimensions 1..3");
  }
  LinearProgram lp;
  lp.objective = Vector::Zero(n + 1);
  lp.objective[n] = 1.0;
  lp.constraints.reserve(halfspaces.size());
  for (const auto& h : halfspaces) {
    if (h.normal.size() != n) {
      throw Error(ErrorCode::UnsupportedDimension, "halfspace dimension mismatch");
    }
    Halfspace row;
    row.normal = Vector(n + 1);
    row.normal.head(n) = h.normal;
    row.normal[n] = h.normal.norm();
    row.offset = h.offset;
    lp.constraints.push_back(std::move(row));
  }
  const LpOutcome out = solve_max(lp);
  if (out.status == LpStatus::Unbounded) {
    throw Error(ErrorCode::Unbounded, "polyhedron is unbounded");
  }
  if (out.status == LpStatus::Infeasible || out.x[n] < -1e-12) {
    throw Error(ErrorCode::Infeasible, "polyhedron is empty");
  }
  // A finite radius does not rule out an unbounded slab or cylinder.
  LinearProgram probe;
  probe.constraints.assign(halfspaces.begin(), halfspaces.end());
  for (Eigen::Index k = 0; k < n; ++k) {
    for (double sign : {1.0, -1.0}) {
      probe.objective = Vector::Zero(n);
      probe.objective[k] = sign;
      if (solve_max(probe).status != LpStatus::Optimal) {
        throw Error(ErrorCode::Unbounded, "polyhedron is unbounded");
      }
    }
  }
  return ChebyshevBall{out.x.head(n), out.x[n]};
}

}  // namespace polyapprox
