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

#ifndef TOMO_SIMPLEX_HPP_
#define TOMO_SIMPLEX_HPP_

#include <Eigen/Dense>
#include <limits>

namespace tomo {

// Linear program
//   optimize c^T x  subject to  a x = b,  lower <= x <= upper.
// Lower bounds must be finite (0 when the vectors are left empty); upper
// bounds may be +inf.  The systems solved here are small and dense, so the
// solver is a plain two-phase tableau simplex: Dantzig pricing, switching
// to Bland's rule after a run of degenerate pivots so it cannot cycle.
struct LpProblem {
  Eigen::MatrixXd a;
  Eigen::VectorXd b;
  Eigen::VectorXd c;
  Eigen::VectorXd lower;  // empty = all zero
  Eigen::VectorXd upper;  // empty = all +inf
  bool maximize = false;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

const char* to_string(LpStatus s);

struct LpOptions {
  double tol = 1e-9;       // feasibility / pivot tolerance
  int max_iterations = 0;  // 0: 50 * (rows + cols) of the internal tableau
  bool check_duality = false;
};

struct LpSolution {
  LpStatus status = LpStatus::kIterationLimit;
  Eigen::VectorXd x;
  double objective = 0.0;
  int iterations = 0;
  // Filled when check_duality and optimal: |c^T x - y^T b| and the largest
  // dual-feasibility violation, both for the internal standard form.
  double duality_gap = std::numeric_limits<double>::quiet_NaN();
  double dual_infeasibility = std::numeric_limits<double>::quiet_NaN();
};

LpSolution lp_solve(const LpProblem& p, const LpOptions& options = {});

}  // namespace tomo

#endif  // TOMO_SIMPLEX_HPP_
