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

#include "tomo/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace tomo {

Geometry::Geometry(int dim, int d) : dim_(dim), d_(d) {
  if (dim != 2 && dim != 3)
    throw std::invalid_argument("geometry: dim must be 2 or 3");
  if (d < 3) throw std::invalid_argument("geometry: d must be at least 3");
  block_ = 1;
  for (int a = 1; a < dim; ++a) block_ *= d;  // d^(D-1)
  cells_ = block_ * d;
  if (static_cast<double>(d) * block_ * d > 2e9)
    throw std::invalid_argument("geometry: grid too large for int indexing");
}

int Geometry::cell_index(const std::array<int, 3>& coords) const {
  int idx = 0;
  for (int a = 0; a < dim_; ++a) {
    if (coords[static_cast<std::size_t>(a)] < 0 ||
        coords[static_cast<std::size_t>(a)] >= d_)
      throw std::invalid_argument("cell_index: coordinate out of range");
    idx = idx * d_ + coords[static_cast<std::size_t>(a)];
  }
  for (int a = dim_; a < 3; ++a)
    if (coords[static_cast<std::size_t>(a)] != 0)
      throw std::invalid_argument("cell_index: trailing coordinate not zero");
  return idx;
}

std::array<int, 3> Geometry::cell_coords(int cell) const {
  if (cell < 0 || cell >= cells_)
    throw std::invalid_argument("cell_coords: index out of range");
  std::array<int, 3> c{0, 0, 0};
  for (int a = dim_ - 1; a >= 0; --a) {
    c[static_cast<std::size_t>(a)] = cell % d_;
    cell /= d_;
  }
  return c;
}

int Geometry::ray_through(int axis, int cell) const {
  if (axis < 0 || axis >= dim_)
    throw std::invalid_argument("ray_through: axis out of range");
  const auto c = cell_coords(cell);
  // The ray along `axis` is indexed by the remaining coordinates in their
  // lexicographic order, one block of d^(D-1) rays per axis.
  int local = 0;
  for (int a = 0; a < dim_; ++a) {
    if (a == axis) continue;
    local = local * d_ + c[static_cast<std::size_t>(a)];
  }
  return axis * block_ + local;
}

SparseMatrix measurement_matrix(const Geometry& g) {
  std::vector<SparseMatrix::Triplet> entries;
  entries.reserve(static_cast<std::size_t>(g.cells()) *
                  static_cast<std::size_t>(g.dim()));
  for (int cell = 0; cell < g.cells(); ++cell)
    for (int axis = 0; axis < g.dim(); ++axis)
      entries.emplace_back(g.ray_through(axis, cell), cell, 1.0);
  return SparseMatrix(g.rays(), g.cells(), entries);
}

SparseMatrix nullspace_basis(const Geometry& g) {
  // One-dimensional factor: [-1^T ; I_{d-1}], whose columns sum to zero.
  std::vector<SparseMatrix::Triplet> entries;
  for (int j = 0; j < g.d() - 1; ++j) {
    entries.emplace_back(0, j, -1.0);
    entries.emplace_back(j + 1, j, 1.0);
  }
  const SparseMatrix factor(g.d(), g.d() - 1, entries, /*allow_signed=*/true);
  SparseMatrix basis = factor;
  for (int a = 1; a < g.dim(); ++a) basis = kronecker(basis, factor);
  return basis;
}

SparseMatrix perturb(const SparseMatrix& a, double epsilon,
                     ColumnNormalization normalization, std::uint64_t seed) {
  if (!(epsilon > 0.0) || epsilon >= a.min_value())
    throw std::invalid_argument(
        "perturb: epsilon must lie in (0, min nonzero value)");
  std::mt19937_64 rng(seed);
  // Uniform on the open unit interval, independent of library internals:
  // 53 high bits of the generator output, shifted off zero.
  const auto uniform01 = [&rng]() {
    return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
  };
  std::vector<SparseMatrix::Triplet> entries;
  entries.reserve(static_cast<std::size_t>(a.nonzeros()));
  const auto& rm = a.row_major();
  for (int i = 0; i < a.rows(); ++i) {
    for (SparseMatrix::RowMajor::InnerIterator it(rm, i); it; ++it) {
      const double v = it.value() + (2.0 * uniform01() - 1.0) * epsilon;
      entries.emplace_back(i, static_cast<int>(it.col()), v);
    }
  }
  if (normalization != ColumnNormalization::kNone) {
    std::vector<double> scale(static_cast<std::size_t>(a.cols()), 0.0);
    for (const auto& t : entries) {
      auto& s = scale[static_cast<std::size_t>(t.col())];
      s += normalization == ColumnNormalization::kEuclidean
               ? t.value() * t.value()
               : t.value();
    }
    for (auto& s : scale)
      if (s > 0.0 && normalization == ColumnNormalization::kEuclidean)
        s = std::sqrt(s);
    for (auto& t : entries) {
      const double s = scale[static_cast<std::size_t>(t.col())];
      if (s > 0.0)
        t = SparseMatrix::Triplet(t.row(), t.col(), t.value() / s);
    }
  }
  return SparseMatrix(a.rows(), a.cols(), entries, a.allow_signed());
}

SupportSet neighbors(const SparseMatrix& a, const SupportSet& s, Side side) {
  const int in_bound = side == Side::kCells ? a.cols() : a.rows();
  const int out_bound = side == Side::kCells ? a.rows() : a.cols();
  if (!is_valid_support(s, in_bound))
    throw std::invalid_argument("neighbors: invalid support set");
  std::vector<char> mark(static_cast<std::size_t>(out_bound), 0);
  if (side == Side::kCells) {
    for (const int j : s)
      for (SparseMatrix::ColMajor::InnerIterator it(a.col_major(), j); it;
           ++it)
        mark[static_cast<std::size_t>(it.row())] = 1;
  } else {
    for (const int i : s)
      for (SparseMatrix::RowMajor::InnerIterator it(a.row_major(), i); it;
           ++it)
        mark[static_cast<std::size_t>(it.col())] = 1;
  }
  SupportSet out;
  for (int i = 0; i < out_bound; ++i)
    if (mark[static_cast<std::size_t>(i)]) out.push_back(i);
  return out;
}

std::pair<SupportSet, SupportSet> nonunique_pair(
    const Geometry& g, const std::vector<std::pair<int, int>>& axis_pairs) {
  if (static_cast<int>(axis_pairs.size()) != g.dim())
    throw std::invalid_argument("nonunique_pair: need one pair per axis");
  for (const auto& [lo, hi] : axis_pairs) {
    if (lo < 0 || lo >= g.d() || hi < 0 || hi >= g.d() || lo == hi)
      throw std::invalid_argument(
          "nonunique_pair: each axis needs two distinct indices in [0, d)");
  }
  // The 2^D corners of the box; a corner's parity is the number of "hi"
  // picks mod 2.  Opposite parities hit every ray equally often.
  SupportSet even, odd;
  for (int mask = 0; mask < (1 << g.dim()); ++mask) {
    std::array<int, 3> coords{0, 0, 0};
    int parity = 0;
    for (int a = 0; a < g.dim(); ++a) {
      const bool hi = (mask >> a) & 1;
      coords[static_cast<std::size_t>(a)] =
          hi ? axis_pairs[static_cast<std::size_t>(a)].second
             : axis_pairs[static_cast<std::size_t>(a)].first;
      parity ^= hi ? 1 : 0;
    }
    (parity == 0 ? even : odd).push_back(g.cell_index(coords));
  }
  std::sort(even.begin(), even.end());
  std::sort(odd.begin(), odd.end());
  return {even, odd};
}

}  // namespace tomo
