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

#ifndef TOMO_RANK_HPP_
#define TOMO_RANK_HPP_

#include "tomo/sparse_matrix.hpp"

namespace tomo {

// Rank over the rationals by fraction-free (Bareiss) elimination in 64-bit
// integers with overflow checks.  Requires integral entries.
int exact_rank(const SparseMatrix& a);

// Rank by singular values, counting sigma > rel_tol * sigma_max.
int numeric_rank(const SparseMatrix& a, double rel_tol = 1e-9);

// Exact rank when entries are integral, numeric rank otherwise, labeled.
struct RankResult {
  int rank;
  bool exact;
};
RankResult matrix_rank(const SparseMatrix& a);

// Largest r <= limit such that every r-subset of columns is linearly
// independent, by exhaustive enumeration (exact elimination for integral
// matrices, thresholded elimination otherwise).  Guarded: throws when
// C(cols, limit) exceeds 10^7 subsets.
int kruskal_rank_bruteforce(const SparseMatrix& a, int limit);

}  // namespace tomo

#endif  // TOMO_RANK_HPP_
