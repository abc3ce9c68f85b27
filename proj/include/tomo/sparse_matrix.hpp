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

#ifndef TOMO_SPARSE_MATRIX_HPP_
#define TOMO_SPARSE_MATRIX_HPP_

#include <Eigen/Sparse>
#include <cstdint>
#include <vector>

namespace tomo {

// Strictly increasing node indices (cells or rays of the bipartite
// incidence graph).
using SupportSet = std::vector<int>;

bool is_valid_support(const SupportSet& s, int bound);

// Sparse matrix kept in both row- and column-major order so that row
// supports and column supports are equally cheap.  It doubles as the
// bipartite adjacency between rays (rows) and cells (columns).  Instances
// are immutable after construction and safe to share across threads.
//
// Stored values must be strictly positive unless the matrix is constructed
// with allow_signed (used by the signed null-space basis); explicit zeros
// are rejected either way.
class SparseMatrix {
 public:
  using RowMajor = Eigen::SparseMatrix<double, Eigen::RowMajor>;
  using ColMajor = Eigen::SparseMatrix<double, Eigen::ColMajor>;
  using Triplet = Eigen::Triplet<double>;

  SparseMatrix() = default;
  SparseMatrix(int rows, int cols, const std::vector<Triplet>& entries,
               bool allow_signed = false);

  int rows() const { return static_cast<int>(row_major_.rows()); }
  int cols() const { return static_cast<int>(row_major_.cols()); }
  std::int64_t nonzeros() const { return row_major_.nonZeros(); }
  bool allow_signed() const { return allow_signed_; }

  const RowMajor& row_major() const { return row_major_; }
  const ColMajor& col_major() const { return col_major_; }

  // Column indices carrying a stored entry in row i, strictly increasing.
  SupportSet row_support(int i) const;
  // Row indices carrying a stored entry in column j, strictly increasing.
  SupportSet col_support(int j) const;

  int row_degree(int i) const;
  int col_degree(int j) const;

  // True when every stored value is an integer.
  bool integral() const;
  // Smallest stored value (+inf for an empty matrix).
  double min_value() const;
  // Largest |value| (0 for an empty matrix).
  double max_abs_value() const;

  // Submatrix on the given strictly increasing row and column sets.
  SparseMatrix submatrix(const SupportSet& row_set,
                         const SupportSet& col_set) const;

  Eigen::MatrixXd dense() const { return Eigen::MatrixXd(row_major_); }

  Eigen::VectorXd operator*(const Eigen::VectorXd& x) const {
    return row_major_ * x;
  }

 private:
  RowMajor row_major_;
  ColMajor col_major_;
  bool allow_signed_ = false;
};

// Kronecker product in the usual row-major convention:
// (a ⊗ b)[i1*rb+i2, j1*cb+j2] = a[i1,j1] * b[i2,j2].
SparseMatrix kronecker(const SparseMatrix& a, const SparseMatrix& b);

// Exact sparse product; useful for integer identities such as A * B = 0.
SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b);

}  // namespace tomo

#endif  // TOMO_SPARSE_MATRIX_HPP_
