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

#include "tomo/uniqueness.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "tomo/log.hpp"
#include "tomo/rank.hpp"
#include "tomo/reduction.hpp"
#include "tomo/simplex.hpp"

namespace tomo {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::kUnique: return "unique";
    case Verdict::kNotUnique: return "not_unique";
    case Verdict::kInconclusive: return "inconclusive";
  }
  return "?";
}

namespace {

double open_uniform(std::mt19937_64& rng) {
  return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

// Probes the solution set of the reduced system by minimizing and
// maximizing random objectives and comparing every optimum against the
// planted reduced vector.  `box` adds the upper bound x <= 1.
UniquenessResult probe_reduced(const ReducedSystem& r,
                               const Eigen::VectorXd& x_star_full,
                               const SparseMatrix& a, bool box,
                               const VerifyOptions& options) {
  UniquenessResult res;
  Eigen::VectorXd x_red(r.cell_count());
  for (int j = 0; j < r.cell_count(); ++j)
    x_red[j] = x_star_full[r.cells[static_cast<std::size_t>(j)]];

  if (r.cell_count() == 0) {
    // Nothing survives the reduction: the zero vector is the only solution.
    res.verdict = Verdict::kUnique;
    res.fast_path = true;
    return res;
  }

  if (!options.force_probing && r.ray_count() >= r.cell_count() &&
      numeric_rank(r.a) == r.cell_count()) {
    // Injective on the surviving cells: the solution is unique regardless
    // of the sign or box constraints.
    res.verdict = Verdict::kUnique;
    res.fast_path = true;
    return res;
  }

  // A probe that fails numerically (solver stall, or an "optimum" that does
  // not replay against the constraints) is a non-answer and is skipped; the
  // result is inconclusive only when no probe at all could be scored.
  // Failures on these systems are a property of the instance, not of the
  // objective (they happen while establishing feasibility), so when a whole
  // pass scores nothing the constraint rows are rotated, which sends the
  // solver down a different pivot path, and the pass is repeated.
  const Eigen::MatrixXd a_red = r.a.dense();
  const int nrows = r.ray_count();
  std::mt19937_64 rng(options.seed);
  int scored = 0;
  for (int rotation = 0; rotation < 3 && scored == 0; ++rotation) {
    LpProblem lp;
    lp.a.resize(nrows, r.cell_count());
    lp.b.resize(nrows);
    const int shift = rotation * (nrows / 3);
    for (int i = 0; i < nrows; ++i) {
      lp.a.row(i) = a_red.row((i + shift) % nrows);
      lp.b[i] = r.b[(i + shift) % nrows];
    }
    if (box) lp.upper = Eigen::VectorXd::Ones(r.cell_count());
    for (int probe = 0; probe < options.probes; ++probe) {
      Eigen::VectorXd f(r.cell_count());
      for (int j = 0; j < r.cell_count(); ++j)
        f[j] = 2.0 * open_uniform(rng) - 1.0;
      ++res.probes_used;
      bool pair_ok = true;
      for (const bool maximize : {false, true}) {
        lp.c = f;
        lp.maximize = maximize;
        const LpSolution sol = lp_solve(lp);
        if (sol.status != LpStatus::kOptimal) {
          log_info("probe LP %s: %s", maximize ? "max" : "min",
                   to_string(sol.status));
          pair_ok = false;
          break;
        }
        const double vtol = options.feasibility_tol *
                            (1.0 + r.b.cwiseAbs().maxCoeff());
        if (sol.x.minCoeff() < -vtol ||
            (box && sol.x.maxCoeff() > 1.0 + vtol) ||
            (lp.a * sol.x - lp.b).cwiseAbs().maxCoeff() > vtol) {
          log_info("probe LP %s: optimum fails feasibility replay",
                   maximize ? "max" : "min");
          pair_ok = false;
          break;
        }
        const double dist = (sol.x - x_red).cwiseAbs().maxCoeff();
        if (dist > options.coincide_tol) {
          res.verdict = Verdict::kNotUnique;
          res.witness = zero_pad(r, sol.x, a.cols());
          res.witness_distance = dist;
          return res;
        }
      }
      if (pair_ok) ++scored;
    }
  }
  res.verdict = scored > 0 ? Verdict::kUnique : Verdict::kInconclusive;
  return res;
}

void require_binary(const Eigen::VectorXd& x, double tol) {
  for (int j = 0; j < x.size(); ++j)
    if (std::abs(x[j]) > tol && std::abs(x[j] - 1.0) > tol)
      throw std::invalid_argument("expected a binary vector");
}

}  // namespace

UniquenessResult verify_unique_nonneg(const SparseMatrix& a,
                                      const Eigen::VectorXd& b,
                                      const Eigen::VectorXd& x_star,
                                      const VerifyOptions& options) {
  if (x_star.size() != a.cols())
    throw std::invalid_argument("verify: planted vector length mismatch");
  if (x_star.size() > 0 && x_star.minCoeff() < -options.feasibility_tol)
    throw std::invalid_argument("verify: planted vector must be nonnegative");
  const Eigen::VectorXd residual = a * x_star - b;
  if (b.size() > 0 &&
      residual.cwiseAbs().maxCoeff() > options.feasibility_tol)
    throw std::invalid_argument("verify: planted vector does not fit b");
  const ReducedSystem r = reduce(a, b);
  return probe_reduced(r, x_star, a, /*box=*/false, options);
}

UniquenessResult verify_unique_box(const SparseMatrix& a,
                                   const Eigen::VectorXd& x_star,
                                   const VerifyOptions& options) {
  if (x_star.size() != a.cols())
    throw std::invalid_argument("verify: planted vector length mismatch");
  require_binary(x_star, 1e-9);
  const Eigen::VectorXd b = a * x_star;
  const ReducedSystem r = reduce(a, b);
  return probe_reduced(r, x_star, a, /*box=*/true, options);
}

Certificate separating_certificate(const SparseMatrix& a,
                                   const Eigen::VectorXd& x_star,
                                   double tol) {
  if (x_star.size() != a.cols())
    throw std::invalid_argument("certificate: planted vector length mismatch");
  require_binary(x_star, 1e-9);
  const int m = a.rows();
  const int n = a.cols();

  // max t  s.t.  z_j a_j^T r - t - s_j = 0,  r in [-1,1]^m,  s >= 0,
  // with z = 1 - 2 x_star.  |t*| never exceeds the largest column sum, so
  // boxing t keeps the problem bounded without cutting off the optimum.
  double max_colsum = 0.0;
  for (int j = 0; j < n; ++j) {
    double s = 0.0;
    for (SparseMatrix::ColMajor::InnerIterator it(a.col_major(), j); it; ++it)
      s += std::abs(it.value());
    max_colsum = std::max(max_colsum, s);
  }
  const double t_box = max_colsum + 1.0;

  LpProblem lp;
  lp.a = Eigen::MatrixXd::Zero(n, m + 1 + n);
  lp.b = Eigen::VectorXd::Zero(n);
  for (int j = 0; j < n; ++j) {
    const double z = 1.0 - 2.0 * x_star[j];
    for (SparseMatrix::ColMajor::InnerIterator it(a.col_major(), j); it; ++it)
      lp.a(j, it.row()) = z * it.value();
    lp.a(j, m) = -1.0;
    lp.a(j, m + 1 + j) = -1.0;
  }
  lp.c = Eigen::VectorXd::Zero(m + 1 + n);
  lp.c[m] = 1.0;
  lp.maximize = true;
  lp.lower = Eigen::VectorXd::Zero(m + 1 + n);
  lp.lower.head(m).setConstant(-1.0);
  lp.lower[m] = -t_box;
  lp.upper = Eigen::VectorXd::Constant(m + 1 + n,
                                       std::numeric_limits<double>::infinity());
  lp.upper.head(m).setOnes();
  lp.upper[m] = t_box;

  const LpSolution sol = lp_solve(lp);
  Certificate cert;
  cert.solved = sol.status == LpStatus::kOptimal;
  if (cert.solved) {
    // Same replay guard as the probes: an out-of-box or equation-violating
    // point must not be reported as a certificate.
    const double vtol = 1e-6 * t_box;
    if ((lp.a * sol.x).cwiseAbs().maxCoeff() > vtol ||
        sol.x.head(m).cwiseAbs().maxCoeff() > 1.0 + 1e-6 ||
        sol.x.tail(n).minCoeff() < -vtol) {
      log_info("certificate LP: optimum fails feasibility replay");
      cert.solved = false;
      return cert;
    }
    cert.margin = sol.x[m];
    cert.r = sol.x.head(m);
    cert.found = cert.margin > tol;
  } else {
    log_info("certificate LP: %s", to_string(sol.status));
  }
  return cert;
}

}  // namespace tomo
