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

#ifndef TOMO_MATRIX_MARKET_HPP_
#define TOMO_MATRIX_MARKET_HPP_

#include <iosfwd>
#include <string>

#include "tomo/sparse_matrix.hpp"

namespace tomo {

// Coordinate-format Matrix Market I/O ("%%MatrixMarket matrix coordinate
// real general", 1-based indices).  Values are written with enough digits
// to round-trip; integral matrices are written as integers.  The reader
// also accepts the integer and pattern field types.
void write_matrix_market(std::ostream& out, const SparseMatrix& a);
void write_matrix_market(const std::string& path, const SparseMatrix& a);

SparseMatrix read_matrix_market(std::istream& in);
SparseMatrix read_matrix_market_file(const std::string& path);

}  // namespace tomo

#endif  // TOMO_MATRIX_MARKET_HPP_
