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

#include "tomo/rank.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace tomo {
namespace {

using Int = std::int64_t;

// Fraction-free elimination on a dense integer matrix; the working entries
// are minors of the input, which stay tiny for 0/1 incidence matrices, but
// products are still taken in 128 bits and checked.
int bareiss_rank(std::vector<std::vector<Int>>& m) {
  const int rows = static_cast<int>(m.size());
  const int cols = rows ? static_cast<int>(m[0].size()) : 0;
  Int prev = 1;
  int rank = 0;
  for (int col = 0; rank < rows && col < cols; ++col) {
    int pivot = -1;
    for (int i = rank; i < rows; ++i) {
      if (m[static_cast<std::size_t>(i)][static_cast<std::size_t>(col)] != 0) {
        pivot = i;
        break;
      }
    }
    if (pivot < 0) continue;
    std::swap(m[static_cast<std::size_t>(rank)],
              m[static_cast<std::size_t>(pivot)]);
    const auto& prow = m[static_cast<std::size_t>(rank)];
    const Int p = prow[static_cast<std::size_t>(col)];
    for (int i = rank + 1; i < rows; ++i) {
      auto& row = m[static_cast<std::size_t>(i)];
      const Int f = row[static_cast<std::size_t>(col)];
      for (int j = col; j < cols; ++j) {
        const __int128 v =
            static_cast<__int128>(p) * row[static_cast<std::size_t>(j)] -
            static_cast<__int128>(f) * prow[static_cast<std::size_t>(j)];
        const __int128 q = v / prev;  // exact by the Bareiss identity
        if (q > INT64_MAX || q < INT64_MIN)
          throw std::overflow_error("exact_rank: 64-bit minor overflow");
        row[static_cast<std::size_t>(j)] = static_cast<Int>(q);
      }
    }
    prev = p;
    ++rank;
  }
  return rank;
}

std::vector<std::vector<Int>> dense_int(const SparseMatrix& a) {
  std::vector<std::vector<Int>> m(
      static_cast<std::size_t>(a.rows()),
      std::vector<Int>(static_cast<std::size_t>(a.cols()), 0));
  const auto& rm = a.row_major();
  for (int i = 0; i < a.rows(); ++i)
    for (SparseMatrix::RowMajor::InnerIterator it(rm, i); it; ++it)
      m[static_cast<std::size_t>(i)][static_cast<std::size_t>(it.col())] =
          static_cast<Int>(std::llround(it.value()));
  return m;
}

// Column-subset independence tests used by the Kruskal scan; `idx` selects
// columns of the dense copies prepared once up front.
bool independent_exact(const std::vector<std::vector<Int>>& cols_by_col,
                       int rows, const std::vector<int>& idx) {
  std::vector<std::vector<Int>> m(
      static_cast<std::size_t>(rows),
      std::vector<Int>(idx.size(), 0));
  for (std::size_t j = 0; j < idx.size(); ++j) {
    const auto& c = cols_by_col[static_cast<std::size_t>(idx[j])];
    for (int i = 0; i < rows; ++i)
      m[static_cast<std::size_t>(i)][j] = c[static_cast<std::size_t>(i)];
  }
  return bareiss_rank(m) == static_cast<int>(idx.size());
}

bool independent_numeric(const Eigen::MatrixXd& dense,
                         const std::vector<int>& idx, double threshold) {
  Eigen::MatrixXd sub(dense.rows(), static_cast<Eigen::Index>(idx.size()));
  for (std::size_t j = 0; j < idx.size(); ++j)
    sub.col(static_cast<Eigen::Index>(j)) = dense.col(idx[j]);
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(sub);
  qr.setThreshold(threshold);
  return qr.rank() == static_cast<Eigen::Index>(idx.size());
}

}  // namespace

int exact_rank(const SparseMatrix& a) {
  if (!a.integral())
    throw std::invalid_argument("exact_rank: entries must be integers");
  auto m = dense_int(a);
  return bareiss_rank(m);
}

int numeric_rank(const SparseMatrix& a, double rel_tol) {
  if (a.rows() == 0 || a.cols() == 0) return 0;
  const Eigen::MatrixXd dense = a.dense();
  Eigen::BDCSVD<Eigen::MatrixXd> svd(dense);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv[0] <= 0.0) return 0;
  const double cutoff = rel_tol * sv[0];
  int r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv[i] > cutoff) ++r;
  return r;
}

RankResult matrix_rank(const SparseMatrix& a) {
  if (a.integral()) return {exact_rank(a), true};
  return {numeric_rank(a), false};
}

int kruskal_rank_bruteforce(const SparseMatrix& a, int limit) {
  const int n = a.cols();
  if (limit < 1 || limit > n)
    throw std::invalid_argument("kruskal: limit must be in [1, cols]");
  double subsets = 1.0;
  for (int i = 0; i < limit; ++i) subsets *= static_cast<double>(n - i) / (i + 1);
  if (subsets > 1e7)
    throw std::invalid_argument("kruskal: C(cols, limit) exceeds 10^7");

  const bool exact = a.integral();
  std::vector<std::vector<Int>> cols_by_col;
  Eigen::MatrixXd dense;
  double threshold = 0.0;
  if (exact) {
    cols_by_col.assign(static_cast<std::size_t>(n),
                       std::vector<Int>(static_cast<std::size_t>(a.rows()), 0));
    const auto& cm = a.col_major();
    for (int j = 0; j < n; ++j)
      for (SparseMatrix::ColMajor::InnerIterator it(cm, j); it; ++it)
        cols_by_col[static_cast<std::size_t>(j)]
                   [static_cast<std::size_t>(it.row())] =
                       static_cast<Int>(std::llround(it.value()));
  } else {
    dense = a.dense();
    threshold = 1e-9;
  }

  // A dependent set stays dependent under supersets, so the answer is one
  // less than the first size at which some subset is dependent.
  std::vector<int> idx;
  for (int r = 1; r <= limit; ++r) {
    idx.assign(static_cast<std::size_t>(r), 0);
    for (int i = 0; i < r; ++i) idx[static_cast<std::size_t>(i)] = i;
    while (true) {
      const bool ok = exact ? independent_exact(cols_by_col, a.rows(), idx)
                            : independent_numeric(dense, idx, threshold);
      if (!ok) return r - 1;
      // next lexicographic r-subset of {0..n-1}
      int i = r - 1;
      while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - r + i) --i;
      if (i < 0) break;
      ++idx[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < r; ++j)
        idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
  return limit;
}

}  // namespace tomo
