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

#ifndef TOMO_EXPERIMENTS_HPP_
#define TOMO_EXPERIMENTS_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "tomo/geometry.hpp"
#include "tomo/uniqueness.hpp"

// Seeded Monte Carlo over (d, k) cells.  Every trial derives its own seed
// from the master seed and its coordinates, so results are independent of
// scheduling and bit-for-bit reproducible at any worker count.

namespace tomo {

enum class SignalKind {
  kNonnegMultiplicity,  // k uniform cell draws with replacement, summed
  kBinary,              // a uniform k-subset of cells, indicator vector
};

enum class MatrixVariant { kUnperturbed, kPerturbed };

const char* to_string(SignalKind s);
const char* to_string(MatrixVariant v);

Eigen::VectorXd sample_sparse_signal(const Geometry& g, int k, SignalKind kind,
                                     std::mt19937_64& rng);

// Deterministic per-trial seed from the master seed and cell coordinates.
std::uint64_t trial_seed(std::uint64_t master, int d, int k, int variant,
                         int signal, int trial);

struct TrialConfig {
  MatrixVariant variant = MatrixVariant::kUnperturbed;
  SignalKind signal = SignalKind::kNonnegMultiplicity;
  double epsilon = 0.1;
  ColumnNormalization normalization = ColumnNormalization::kNone;
  int probes = 5;
};

struct TrialRecord {
  int d = 0;
  int k = 0;
  MatrixVariant variant = MatrixVariant::kUnperturbed;
  SignalKind signal = SignalKind::kNonnegMultiplicity;
  std::uint64_t seed = 0;
  int m_reduced = 0;
  int n_reduced = 0;
  double expansion_ratio = 0.0;  // m_red / (ell n_red); NaN when n_red = 0
  bool overdetermined_fullrank = false;
  Verdict unique_nonneg = Verdict::kInconclusive;
  std::optional<Verdict> unique_box;  // binary signals only
};

// One seeded draw-measure-reduce-verify cycle.  `base` must be the
// unperturbed measurement matrix of g; perturbed variants derive their
// jitter from the trial seed.
TrialRecord run_trial(const Geometry& g, const SparseMatrix& base, int k,
                      const TrialConfig& config, std::uint64_t seed);

struct GridConfig {
  int dim = 3;
  std::vector<int> d_values;
  // Exactly one of the two axes below may be non-empty; rho translates to
  // k = round(rho * d^(D-1)) per d.
  std::vector<double> rho_values;
  std::vector<int> k_values;
  int trials = 50;
  std::vector<MatrixVariant> variants = {MatrixVariant::kUnperturbed,
                                         MatrixVariant::kPerturbed};
  SignalKind signal = SignalKind::kNonnegMultiplicity;
  double epsilon = 0.1;
  ColumnNormalization normalization = ColumnNormalization::kNone;
  int probes = 5;
  std::uint64_t master_seed = 1;
  int jobs = 0;  // 0: hardware concurrency
};

struct CellStats {
  int d = 0;
  int k = 0;
  double rho = 0.0;
  MatrixVariant variant = MatrixVariant::kUnperturbed;
  int trials = 0;
  double m_reduced_mean = 0.0;
  double n_reduced_mean = 0.0;
  double ratio_mean = 0.0;            // mean m_red / n_red
  double expansion_ratio_mean = 0.0;  // mean m_red / (ell n_red)
  double p_overdetermined_fullrank = 0.0;
  // Unique fractions count kUnique only: inconclusive trials count as
  // failures there and are reported separately.
  double p_unique_nonneg = 0.0;
  double p_unique_box = 0.0;  // NaN for non-binary signals
  double p_inconclusive = 0.0;
};

struct PhaseGrid {
  GridConfig config;
  std::vector<CellStats> cells;
};

PhaseGrid run_grid(const GridConfig& config);

// One CSV row per cell, '.' decimal separator, 12 significant digits.
void write_grid_csv(std::ostream& out, const PhaseGrid& grid);

// Companion metadata (tool version, resolved config, master seed) as JSON.
std::string grid_manifest(const PhaseGrid& grid);

GridConfig grid_config_from_json(const std::string& text);

}  // namespace tomo

#endif  // TOMO_EXPERIMENTS_HPP_
