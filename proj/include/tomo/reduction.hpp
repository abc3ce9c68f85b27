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

#ifndef TOMO_REDUCTION_HPP_
#define TOMO_REDUCTION_HPP_

#include <Eigen/Dense>

#include "tomo/sparse_matrix.hpp"

namespace tomo {

// The subsystem a nonnegative solution is confined to: rays with nonzero
// measurement and cells not seen by any zero ray.
struct ReducedSystem {
  SupportSet rays;    // rows kept: { i : b_i != 0 }
  SupportSet cells;   // columns kept: N(rays) \ N(complement of rays)
  SparseMatrix a;     // |rays| x |cells| submatrix
  Eigen::VectorXd b;  // measurements restricted to `rays`

  int ray_count() const { return static_cast<int>(rays.size()); }
  int cell_count() const { return static_cast<int>(cells.size()); }
};

// Builds the reduced system in O(nnz).  Measurements with |b_i| <= zero_tol
// count as zero; pass zero_tol = 0 for exact integer data.  Requires b >= 0
// (up to the tolerance) since measurements are sums of nonnegative masses.
ReducedSystem reduce(const SparseMatrix& a, const Eigen::VectorXd& b,
                     double zero_tol = 1e-12);

// Zero-pads a reduced solution back to the full cell grid.
Eigen::VectorXd zero_pad(const ReducedSystem& r, const Eigen::VectorXd& x_reduced,
                         int cells);

// True when the zero-padded reduced solution solves the full system within
// `tol` per row (use tol = 0 for integer data).
bool check_equivalence(const SparseMatrix& a, const Eigen::VectorXd& b,
                       const ReducedSystem& r, const Eigen::VectorXd& x_reduced,
                       double tol = 1e-9);

// m_red / (ell * n_red), the quantity compared against the expansion
// thresholds (sqrt(5)-1)/2 and 1/ell.  Errors on an empty reduced system.
double expansion_ratio(const ReducedSystem& r, int column_degree);

}  // namespace tomo

#endif  // TOMO_REDUCTION_HPP_
