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

#ifndef TOMO_GEOMETRY_HPP_
#define TOMO_GEOMETRY_HPP_

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "tomo/sparse_matrix.hpp"

namespace tomo {

// Axis-aligned ray geometry of a d x d (x d) grid.
//
// Cells are indexed lexicographically, slowest axis first: in 2D a cell at
// (row r, column c) has index r*d + c; in 3D a cell at (slab s, row r,
// column c) has index s*d^2 + r*d + c.  Rays are grouped in one block of
// d^(D-1) rows per axis, stacked axis 0 first; the ray along axis a is
// identified by the cell coordinates on the remaining axes, again
// lexicographically.  Under this ordering the measurement matrix equals its
// Kronecker closed form, e.g. [I ⊗ 1^T ; 1^T ⊗ I] in 2D.
class Geometry {
 public:
  // dim must be 2 or 3 and d at least 3.
  Geometry(int dim, int d);

  int dim() const { return dim_; }
  int d() const { return d_; }
  int cells() const { return cells_; }          // n = d^D
  int rays() const { return dim_ * block_; }    // m = D d^(D-1)
  int rays_per_axis() const { return block_; }  // d^(D-1)
  int column_degree() const { return dim_; }    // rays through one cell

  // coords[0] is the slowest axis; unused trailing entries must be 0 in 2D.
  int cell_index(const std::array<int, 3>& coords) const;
  std::array<int, 3> cell_coords(int cell) const;

  // Global row index of the ray along `axis` passing through `cell`.
  int ray_through(int axis, int cell) const;

 private:
  int dim_;
  int d_;
  int cells_;
  int block_;
};

// The measurement matrix A_d^D: one row per ray, one column per cell, entry
// one where the ray crosses the cell.  Every column has D entries and every
// row has d.
SparseMatrix measurement_matrix(const Geometry& g);

// The D-fold Kronecker power of [-1^T ; I_{d-1}], a d^D x (d-1)^D basis of
// ker(A_d^D).  Each column carries 2^D nonzeros, half +1 and half -1.
SparseMatrix nullspace_basis(const Geometry& g);

enum class ColumnNormalization { kNone, kEuclidean, kSum };

// Replaces every stored value v by an independent uniform draw from
// (v - epsilon, v + epsilon); identical sparsity pattern, deterministic for
// a fixed seed.  Requires 0 < epsilon < min stored value, so entries stay
// positive.  Columns are optionally rescaled to unit 2-norm or unit sum.
SparseMatrix perturb(const SparseMatrix& a, double epsilon,
                     ColumnNormalization normalization, std::uint64_t seed);

// Which side of the bipartite graph the input indices address.
enum class Side { kCells, kRays };

// Sorted set of opposite-side neighbors of s: the rays meeting any cell of
// s (side kCells), or the cells lying on any ray of s (side kRays).
SupportSet neighbors(const SparseMatrix& a, const SupportSet& s, Side side);

// Alternating corners of the box spanned by one index pair per axis: two
// disjoint supports of size 2^(D-1) whose indicator vectors have identical
// ray sums in every direction.  Each pair must be two distinct indices in
// [0, d); exactly D pairs are consumed.
std::pair<SupportSet, SupportSet> nonunique_pair(
    const Geometry& g, const std::vector<std::pair<int, int>>& axis_pairs);

}  // namespace tomo

#endif  // TOMO_GEOMETRY_HPP_
