// Copyright 2026 The tomoray Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "tomo/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "tomo/log.hpp"

namespace tomo {

const char* to_string(LpStatus s) {
  switch (s) {
    case LpStatus::kOptimal: return "optimal";
    case LpStatus::kInfeasible: return "infeasible";
    case LpStatus::kUnbounded: return "unbounded";
    case LpStatus::kIterationLimit: return "iteration_limit";
  }
  return "?";
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Consecutive degenerate pivots tolerated before switching from Dantzig
// pricing to Bland's rule (which cannot cycle).
constexpr int kDegenerateRun = 50;

// Smallest element worth dividing by.  Entries between the zero tolerance
// and this floor are almost always accumulated roundoff; putting one in a
// pivot denominator scales its row by up to 1e7 and wrecks the tableau.
constexpr double kPivotFloor = 1e-7;

struct Tableau {
  // Layout: vars [0, nvars) are shifted problem variables and bound slacks,
  // [nvars, nvars + nrows) are artificials; the last column is the rhs and
  // the last row holds reduced costs with -objective in its rhs cell.
  Eigen::MatrixXd t;
  std::vector<int> basis;
  int nrows = 0;
  int nvars = 0;

  double& rc(int j) { return t(nrows, j); }
  int rhs() const { return nvars + nrows; }

  void pivot(int leave_row, int enter_col) {
    t.row(leave_row) /= t(leave_row, enter_col);
    Eigen::VectorXd factor = t.col(enter_col);
    factor[leave_row] = 0.0;
    t.noalias() -= factor * t.row(leave_row);
    t.col(enter_col).setZero();
    t(leave_row, enter_col) = 1.0;
    basis[static_cast<std::size_t>(leave_row)] = enter_col;
  }

  // Rebuilds the reduced-cost row from the phase cost vector.  Pivot error
  // accumulates fastest in the objective row, where it can hide descent
  // directions and stop a phase early; a periodic rebuild keeps it honest.
  void refresh_costs(const Eigen::VectorXd& cost) {
    t.row(nrows).setZero();
    t.row(nrows).head(cost.size()) = cost;
    for (int i = 0; i < nrows; ++i) {
      const double cb = cost[basis[static_cast<std::size_t>(i)]];
      if (cb != 0.0) t.row(nrows) -= cb * t.row(i);
    }
  }
};

// Iterations between reduced-cost rebuilds.
constexpr int kRefreshEvery = 128;

// One simplex phase: price, ratio test, pivot.  `limit_col` bars columns
// from entering (artificials in phase 2).  Returns kOptimal when no
// reduced cost is negative, kUnbounded on an uncapped entering column.
LpStatus run_phase(Tableau& tab, const Eigen::VectorXd& cost, int limit_col,
                   double tol, int cap, int& iterations) {
  int degenerate_run = 0;
  int since_refresh = 0;
  while (true) {
    if (iterations >= cap) return LpStatus::kIterationLimit;
    if (++since_refresh >= kRefreshEvery) {
      tab.refresh_costs(cost);
      since_refresh = 0;
    }
    const bool bland = degenerate_run > kDegenerateRun;
    int enter = -1;
    double best = -tol;
    for (int j = 0; j < limit_col; ++j) {
      const double r = tab.rc(j);
      if (r < best) {
        enter = j;
        if (bland) break;
        best = r;
      }
    }
    if (enter < 0) {
      // Confirm optimality against freshly rebuilt reduced costs before
      // declaring it; resume if drift was hiding a direction.
      tab.refresh_costs(cost);
      since_refresh = 0;
      enter = -1;
      best = -tol;
      for (int j = 0; j < limit_col; ++j) {
        const double r = tab.rc(j);
        if (r < best) {
          enter = j;
          if (bland) break;
          best = r;
        }
      }
      if (enter < 0) return LpStatus::kOptimal;
    }

    // Ratio test, preferring rows whose pivot element clears the floor; a
    // second pass over the tol..floor band only runs when no safe row
    // exists, so a noisy tiny pivot beats a false unbounded verdict.
    int leave = -1;
    double best_ratio = kInf;
    for (const double min_a : {std::max(kPivotFloor, tol), tol}) {
      for (int i = 0; i < tab.nrows; ++i) {
        const double a = tab.t(i, enter);
        if (a <= min_a) continue;
        const double ratio = tab.t(i, tab.rhs()) / a;
        if (ratio < best_ratio - 1e-15 ||
            (ratio <= best_ratio + 1e-15 && leave >= 0 &&
             tab.basis[static_cast<std::size_t>(i)] <
                 tab.basis[static_cast<std::size_t>(leave)])) {
          best_ratio = ratio;
          leave = i;
        }
      }
      if (leave >= 0 || min_a == tol) break;
    }
    if (leave < 0) return LpStatus::kUnbounded;
    degenerate_run = best_ratio <= tol ? degenerate_run + 1 : 0;
    tab.pivot(leave, enter);
    ++iterations;
  }
}

}  // namespace

LpSolution lp_solve(const LpProblem& p, const LpOptions& options) {
  const int m = static_cast<int>(p.a.rows());
  const int n = static_cast<int>(p.a.cols());
  if (p.b.size() != m || p.c.size() != n)
    throw std::invalid_argument("lp_solve: inconsistent dimensions");
  Eigen::VectorXd lower =
      p.lower.size() ? p.lower : Eigen::VectorXd::Zero(n);
  Eigen::VectorXd upper =
      p.upper.size() ? p.upper : Eigen::VectorXd::Constant(n, kInf);
  if (lower.size() != n || upper.size() != n)
    throw std::invalid_argument("lp_solve: bound vector length mismatch");
  for (int j = 0; j < n; ++j) {
    if (!std::isfinite(lower[j]))
      throw std::invalid_argument("lp_solve: lower bounds must be finite");
    if (upper[j] < lower[j])
      throw std::invalid_argument("lp_solve: upper < lower");
  }
  const double tol = options.tol;

  // Shift x = lower + y (y >= 0) and turn finite upper bounds into extra
  // rows y_j + s = upper_j - lower_j, so everything below is the plain
  // standard form  A y = b, y >= 0.
  std::vector<int> bounded;
  for (int j = 0; j < n; ++j)
    if (std::isfinite(upper[j])) bounded.push_back(j);
  const int nb = static_cast<int>(bounded.size());
  const int rows = m + nb;
  const int nvars = n + nb;

  Eigen::MatrixXd a0 = Eigen::MatrixXd::Zero(rows, nvars);
  Eigen::VectorXd b0 = Eigen::VectorXd::Zero(rows);
  a0.topLeftCorner(m, n) = p.a;
  b0.head(m) = p.b - p.a * lower;
  for (int i = 0; i < nb; ++i) {
    const int j = bounded[static_cast<std::size_t>(i)];
    a0(m + i, j) = 1.0;
    a0(m + i, n + i) = 1.0;
    b0[m + i] = upper[j] - lower[j];
  }
  for (int i = 0; i < rows; ++i) {
    if (b0[i] < 0.0) {
      a0.row(i) = -a0.row(i);
      b0[i] = -b0[i];
    }
  }
  Eigen::VectorXd c0 = Eigen::VectorXd::Zero(nvars);
  c0.head(n) = p.maximize ? (-p.c).eval() : p.c;

  Tableau tab;
  tab.nrows = rows;
  tab.nvars = nvars;
  tab.t = Eigen::MatrixXd::Zero(rows + 1, nvars + rows + 1);
  tab.t.topLeftCorner(rows, nvars) = a0;
  tab.t.block(0, nvars, rows, rows).setIdentity();
  tab.t.col(tab.rhs()).head(rows) = b0;
  tab.basis.resize(static_cast<std::size_t>(rows));
  for (int i = 0; i < rows; ++i)
    tab.basis[static_cast<std::size_t>(i)] = nvars + i;

  LpSolution sol;
  const int cap = options.max_iterations > 0 ? options.max_iterations
                                             : 50 * (rows + nvars);

  // Phase 1: minimize the artificial sum.
  Eigen::VectorXd cost1 = Eigen::VectorXd::Zero(nvars + rows);
  cost1.tail(rows).setOnes();
  tab.refresh_costs(cost1);
  const LpStatus phase1 =
      run_phase(tab, cost1, nvars, tol, cap, sol.iterations);
  if (phase1 == LpStatus::kIterationLimit) {
    sol.status = phase1;
    return sol;
  }
  // Degenerate instances stall with an artificial sum at roundoff level, a
  // couple of orders above tol once pivots are floored at kPivotFloor, so
  // the feasibility call uses the floor as its yardstick.
  const double infeasibility = -tab.t(rows, tab.rhs());
  const double inf_tol =
      std::max(tol, kPivotFloor) * (1.0 + b0.lpNorm<Eigen::Infinity>());
  if (phase1 == LpStatus::kUnbounded || infeasibility > inf_tol) {
    log_debug("phase 1 optimum %.3e (threshold %.3e, %d iterations)",
              infeasibility, inf_tol, sol.iterations);
    sol.status = phase1 == LpStatus::kUnbounded ? LpStatus::kIterationLimit
                                                : LpStatus::kInfeasible;
    return sol;
  }

  // Drive leftover artificials out of the basis, pivoting on the row's
  // largest real-column entry: accepting the first entry above tol can put
  // pivot-scale noise in the denominator and corrupt the whole tableau.
  // Rows with no usable entry are redundant (phase 1 proved the system
  // consistent), so zero them outright; an all-zero row can never be picked
  // by, nor be updated by, any later pivot, which keeps its artificial
  // parked at exactly zero through phase 2.
  for (int i = 0; i < rows; ++i) {
    if (tab.basis[static_cast<std::size_t>(i)] < nvars) continue;
    int piv = -1;
    double best = 1e3 * tol;
    for (int j = 0; j < nvars; ++j) {
      const double a = std::abs(tab.t(i, j));
      if (a > best) {
        best = a;
        piv = j;
      }
    }
    if (piv >= 0)
      tab.pivot(i, piv);
    else
      tab.t.row(i).setZero();
  }

  // Phase 2 over the real costs, artificial columns barred from entering.
  Eigen::VectorXd cost2 = Eigen::VectorXd::Zero(nvars + rows);
  cost2.head(nvars) = c0;
  tab.refresh_costs(cost2);
  const LpStatus phase2 =
      run_phase(tab, cost2, nvars, tol, cap, sol.iterations);
  if (phase2 != LpStatus::kOptimal) {
    sol.status = phase2;
    return sol;
  }

  Eigen::VectorXd y_int = Eigen::VectorXd::Zero(nvars);
  for (int i = 0; i < rows; ++i) {
    const int bj = tab.basis[static_cast<std::size_t>(i)];
    if (bj < nvars) y_int[bj] = tab.t(i, tab.rhs());
  }
  sol.status = LpStatus::kOptimal;
  sol.x = lower + y_int.head(n);
  sol.objective = p.c.dot(sol.x);

  if (options.check_duality) {
    // Recompute both duality quantities from the untouched standard-form
    // copies, so accumulated pivot error shows up rather than cancelling.
    Eigen::VectorXd y(rows);
    for (int i = 0; i < rows; ++i) y[i] = -tab.t(rows, nvars + i);
    sol.duality_gap = std::abs(c0.dot(y_int) - y.dot(b0));
    const Eigen::VectorXd slack = c0 - a0.transpose() * y;
    sol.dual_infeasibility = std::max(0.0, -slack.minCoeff());
  }
  return sol;
}

}  // namespace tomo
