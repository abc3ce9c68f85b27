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

#include "tomo/matrix_market.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace tomo {

void write_matrix_market(std::ostream& out, const SparseMatrix& a) {
  const bool integral = a.integral();
  out << "%%MatrixMarket matrix coordinate " << (integral ? "integer" : "real")
      << " general\n";
  out << a.rows() << ' ' << a.cols() << ' ' << a.nonzeros() << '\n';
  char buf[64];
  const auto& rm = a.row_major();
  for (int i = 0; i < a.rows(); ++i) {
    for (SparseMatrix::RowMajor::InnerIterator it(rm, i); it; ++it) {
      if (integral) {
        std::snprintf(buf, sizeof buf, "%lld",
                      static_cast<long long>(std::llround(it.value())));
      } else {
        std::snprintf(buf, sizeof buf, "%.17g", it.value());
      }
      out << (i + 1) << ' ' << (it.col() + 1) << ' ' << buf << '\n';
    }
  }
  if (!out) throw std::runtime_error("matrix market: write failed");
}

void write_matrix_market(const std::string& path, const SparseMatrix& a) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("matrix market: cannot open " + path);
  write_matrix_market(out, a);
}

SparseMatrix read_matrix_market(std::istream& in) {
  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error("matrix market: empty input");
  std::istringstream header(line);
  std::string banner, object, format, field, symmetry;
  header >> banner >> object >> format >> field >> symmetry;
  if (banner != "%%MatrixMarket" || object != "matrix" ||
      format != "coordinate")
    throw std::runtime_error("matrix market: unsupported header: " + line);
  const bool pattern = field == "pattern";
  if (field != "real" && field != "integer" && !pattern)
    throw std::runtime_error("matrix market: unsupported field: " + field);
  if (symmetry != "general")
    throw std::runtime_error("matrix market: only general symmetry supported");

  while (std::getline(in, line)) {
    if (!line.empty() && line[0] != '%') break;
  }
  long long rows = 0, cols = 0, nnz = 0;
  {
    std::istringstream sizes(line);
    if (!(sizes >> rows >> cols >> nnz))
      throw std::runtime_error("matrix market: bad size line");
  }
  if (rows < 0 || cols < 0 || nnz < 0 || rows > 2000000000 ||
      cols > 2000000000)
    throw std::runtime_error("matrix market: sizes out of range");

  std::vector<SparseMatrix::Triplet> entries;
  entries.reserve(static_cast<std::size_t>(nnz));
  bool signed_values = false;
  for (long long e = 0; e < nnz; ++e) {
    long long i = 0, j = 0;
    double v = 1.0;
    if (!(in >> i >> j)) throw std::runtime_error("matrix market: bad entry");
    if (!pattern && !(in >> v))
      throw std::runtime_error("matrix market: bad entry value");
    if (i < 1 || i > rows || j < 1 || j > cols)
      throw std::runtime_error("matrix market: entry index out of range");
    if (v < 0.0) signed_values = true;
    entries.emplace_back(static_cast<int>(i - 1), static_cast<int>(j - 1), v);
  }
  return SparseMatrix(static_cast<int>(rows), static_cast<int>(cols), entries,
                      signed_values);
}

SparseMatrix read_matrix_market_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("matrix market: cannot open " + path);
  return read_matrix_market(in);
}

}  // namespace tomo
