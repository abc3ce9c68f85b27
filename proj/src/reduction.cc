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

#include "tomo/reduction.hpp"

#include <cmath>
#include <stdexcept>

namespace tomo {

ReducedSystem reduce(const SparseMatrix& a, const Eigen::VectorXd& b,
                     double zero_tol) {
  if (b.size() != a.rows())
    throw std::invalid_argument("reduce: measurement length mismatch");
  if (zero_tol < 0) throw std::invalid_argument("reduce: negative tolerance");

  ReducedSystem r;
  // One pass over the rays, one pass over the incidences of each class.
  // A cell survives iff it is seen by some nonzero ray and by no zero ray.
  std::vector<char> seen_nonzero(static_cast<std::size_t>(a.cols()), 0);
  std::vector<char> seen_zero(static_cast<std::size_t>(a.cols()), 0);
  for (int i = 0; i < a.rows(); ++i) {
    const bool nonzero = std::abs(b[i]) > zero_tol;
    if (b[i] < -zero_tol)
      throw std::invalid_argument("reduce: negative measurement");
    if (nonzero) r.rays.push_back(i);
    auto& mark = nonzero ? seen_nonzero : seen_zero;
    for (SparseMatrix::RowMajor::InnerIterator it(a.row_major(), i); it; ++it)
      mark[static_cast<std::size_t>(it.col())] = 1;
  }
  for (int j = 0; j < a.cols(); ++j) {
    const auto ju = static_cast<std::size_t>(j);
    if (seen_nonzero[ju] && !seen_zero[ju]) r.cells.push_back(j);
  }
  r.a = a.submatrix(r.rays, r.cells);
  r.b.resize(r.ray_count());
  for (int i = 0; i < r.ray_count(); ++i)
    r.b[i] = b[r.rays[static_cast<std::size_t>(i)]];
  return r;
}

Eigen::VectorXd zero_pad(const ReducedSystem& r,
                         const Eigen::VectorXd& x_reduced, int cells) {
  if (x_reduced.size() != r.cell_count())
    throw std::invalid_argument("zero_pad: reduced solution length mismatch");
  Eigen::VectorXd x = Eigen::VectorXd::Zero(cells);
  for (int j = 0; j < r.cell_count(); ++j) {
    const int full = r.cells[static_cast<std::size_t>(j)];
    if (full >= cells)
      throw std::invalid_argument("zero_pad: cell index out of range");
    x[full] = x_reduced[j];
  }
  return x;
}

bool check_equivalence(const SparseMatrix& a, const Eigen::VectorXd& b,
                       const ReducedSystem& r, const Eigen::VectorXd& x_reduced,
                       double tol) {
  const Eigen::VectorXd x = zero_pad(r, x_reduced, a.cols());
  if (b.size() == 0) return true;
  const Eigen::VectorXd residual = a * x - b;
  return residual.cwiseAbs().maxCoeff() <= tol;
}

double expansion_ratio(const ReducedSystem& r, int column_degree) {
  if (column_degree <= 0)
    throw std::invalid_argument("expansion_ratio: bad column degree");
  if (r.cell_count() == 0)
    throw std::invalid_argument("expansion_ratio: empty reduced system");
  return static_cast<double>(r.ray_count()) /
         (static_cast<double>(column_degree) * r.cell_count());
}

}  // namespace tomo
