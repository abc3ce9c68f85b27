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

#ifndef TOMO_UNIQUENESS_HPP_
#define TOMO_UNIQUENESS_HPP_

#include <Eigen/Dense>
#include <cstdint>

#include "tomo/sparse_matrix.hpp"

// Empirical uniqueness tests.  All solution-set probing happens on the
// reduced system, whose solutions zero-pad to full ones, and follows the
// two-step strategy: declare unique outright when the reduced system is
// overdetermined with full column rank, otherwise minimize and maximize a
// handful of random objectives over the feasible set and compare the
// optima against the planted vector.  Optima are replayed against the
// constraints before they are trusted; probes whose solve stalls or fails
// the replay are skipped, and the verdict is inconclusive only when no
// probe could be scored.

namespace tomo {

enum class Verdict { kUnique, kNotUnique, kInconclusive };

const char* to_string(Verdict v);

struct VerifyOptions {
  int probes = 5;               // random objectives; each is minimized and maximized
  std::uint64_t seed = 0;       // probe objective stream
  double coincide_tol = 1e-6;   // max-norm tolerance when comparing optima
  double feasibility_tol = 1e-6;  // planted-vector feasibility check
  bool force_probing = false;   // skip the rank fast path (testing hook)
};

struct UniquenessResult {
  Verdict verdict = Verdict::kInconclusive;
  bool fast_path = false;  // settled by overdetermined + full column rank
  int probes_used = 0;
  // For kNotUnique: a feasible point differing from the planted vector,
  // zero-padded to full length, and its max-norm distance.
  Eigen::VectorXd witness;
  double witness_distance = 0.0;
};

// Is x_star the only solution of { a x = b, x >= 0 }?
UniquenessResult verify_unique_nonneg(const SparseMatrix& a,
                                      const Eigen::VectorXd& b,
                                      const Eigen::VectorXd& x_star,
                                      const VerifyOptions& options = {});

// Is the binary x_star the only solution of { a x = a x_star, 0 <= x <= 1 }?
UniquenessResult verify_unique_box(const SparseMatrix& a,
                                   const Eigen::VectorXd& x_star,
                                   const VerifyOptions& options = {});

// Searches for a hyperplane strictly separating the sign pattern of the
// binary x_star:  max t  s.t.  Diag(1 - 2 x_star) a^T r >= t 1,
// -1 <= r <= 1.  A strictly positive optimum certifies box uniqueness.
struct Certificate {
  bool found = false;
  double margin = 0.0;  // optimal t
  Eigen::VectorXd r;
  bool solved = true;  // false when the LP hit the iteration cap
};
Certificate separating_certificate(const SparseMatrix& a,
                                   const Eigen::VectorXd& x_star,
                                   double tol = 1e-9);

}  // namespace tomo

#endif  // TOMO_UNIQUENESS_HPP_
