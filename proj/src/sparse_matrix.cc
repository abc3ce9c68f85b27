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

#include "tomo/sparse_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace tomo {

bool is_valid_support(const SupportSet& s, int bound) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] < 0 || s[i] >= bound) return false;
    if (i > 0 && s[i] <= s[i - 1]) return false;
  }
  return true;
}

SparseMatrix::SparseMatrix(int rows, int cols,
                           const std::vector<Triplet>& entries,
                           bool allow_signed)
    : allow_signed_(allow_signed) {
  if (rows < 0 || cols < 0) throw std::invalid_argument("negative dimension");
  for (const auto& t : entries) {
    if (t.row() < 0 || t.row() >= rows || t.col() < 0 || t.col() >= cols)
      throw std::invalid_argument("entry index out of range");
    if (t.value() == 0.0) throw std::invalid_argument("explicit zero entry");
    if (!allow_signed && t.value() < 0.0)
      throw std::invalid_argument("negative entry in unsigned matrix");
  }
  row_major_.resize(rows, cols);
  row_major_.setFromTriplets(entries.begin(), entries.end());
  row_major_.makeCompressed();
  col_major_ = row_major_;
  col_major_.makeCompressed();
}

SupportSet SparseMatrix::row_support(int i) const {
  SupportSet s;
  s.reserve(static_cast<std::size_t>(row_degree(i)));
  for (RowMajor::InnerIterator it(row_major_, i); it; ++it)
    s.push_back(static_cast<int>(it.col()));
  return s;
}

SupportSet SparseMatrix::col_support(int j) const {
  SupportSet s;
  s.reserve(static_cast<std::size_t>(col_degree(j)));
  for (ColMajor::InnerIterator it(col_major_, j); it; ++it)
    s.push_back(static_cast<int>(it.row()));
  return s;
}

int SparseMatrix::row_degree(int i) const {
  return static_cast<int>(row_major_.outerIndexPtr()[i + 1] -
                          row_major_.outerIndexPtr()[i]);
}

int SparseMatrix::col_degree(int j) const {
  return static_cast<int>(col_major_.outerIndexPtr()[j + 1] -
                          col_major_.outerIndexPtr()[j]);
}

bool SparseMatrix::integral() const {
  for (std::int64_t i = 0; i < nonzeros(); ++i) {
    const double v = row_major_.valuePtr()[i];
    if (v != std::nearbyint(v)) return false;
  }
  return true;
}

double SparseMatrix::min_value() const {
  double m = std::numeric_limits<double>::infinity();
  for (std::int64_t i = 0; i < nonzeros(); ++i)
    m = std::min(m, row_major_.valuePtr()[i]);
  return m;
}

double SparseMatrix::max_abs_value() const {
  double m = 0.0;
  for (std::int64_t i = 0; i < nonzeros(); ++i)
    m = std::max(m, std::abs(row_major_.valuePtr()[i]));
  return m;
}

SparseMatrix SparseMatrix::submatrix(const SupportSet& row_set,
                                     const SupportSet& col_set) const {
  if (!is_valid_support(row_set, rows()) || !is_valid_support(col_set, cols()))
    throw std::invalid_argument("submatrix: invalid support set");
  std::vector<int> col_map(static_cast<std::size_t>(cols()), -1);
  for (std::size_t j = 0; j < col_set.size(); ++j)
    col_map[static_cast<std::size_t>(col_set[j])] = static_cast<int>(j);
  std::vector<Triplet> entries;
  for (std::size_t i = 0; i < row_set.size(); ++i) {
    for (RowMajor::InnerIterator it(row_major_, row_set[i]); it; ++it) {
      const int jc = col_map[static_cast<std::size_t>(it.col())];
      if (jc >= 0)
        entries.emplace_back(static_cast<int>(i), jc, it.value());
    }
  }
  return SparseMatrix(static_cast<int>(row_set.size()),
                      static_cast<int>(col_set.size()), entries,
                      allow_signed_);
}

SparseMatrix kronecker(const SparseMatrix& a, const SparseMatrix& b) {
  std::vector<SparseMatrix::Triplet> entries;
  entries.reserve(static_cast<std::size_t>(a.nonzeros() * b.nonzeros()));
  const auto& am = a.row_major();
  const auto& bm = b.row_major();
  for (int ia = 0; ia < a.rows(); ++ia) {
    for (SparseMatrix::RowMajor::InnerIterator ita(am, ia); ita; ++ita) {
      for (int ib = 0; ib < b.rows(); ++ib) {
        for (SparseMatrix::RowMajor::InnerIterator itb(bm, ib); itb; ++itb) {
          entries.emplace_back(ia * b.rows() + ib,
                               static_cast<int>(ita.col()) * b.cols() +
                                   static_cast<int>(itb.col()),
                               ita.value() * itb.value());
        }
      }
    }
  }
  return SparseMatrix(a.rows() * b.rows(), a.cols() * b.cols(), entries,
                      a.allow_signed() || b.allow_signed());
}

SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("multiply: shape");
  SparseMatrix::RowMajor prod = a.row_major() * b.row_major();
  prod.prune(0.0, 0.0);  // exact: keep only entries that are not exactly zero
  std::vector<SparseMatrix::Triplet> entries;
  entries.reserve(static_cast<std::size_t>(prod.nonZeros()));
  for (int i = 0; i < prod.outerSize(); ++i)
    for (SparseMatrix::RowMajor::InnerIterator it(prod, i); it; ++it)
      entries.emplace_back(static_cast<int>(it.row()),
                           static_cast<int>(it.col()), it.value());
  return SparseMatrix(static_cast<int>(prod.rows()),
                      static_cast<int>(prod.cols()), entries, true);
}

}  // namespace tomo
