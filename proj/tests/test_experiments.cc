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

#include "tomo/experiments.hpp"

#include <cmath>
#include <set>
#include <sstream>

#include "doctest.h"
#include "json.hpp"

namespace {

using tomo::Geometry;
using tomo::GridConfig;
using tomo::MatrixVariant;
using tomo::SignalKind;
using tomo::SparseMatrix;
using tomo::Verdict;

bool same_record(const tomo::TrialRecord& a, const tomo::TrialRecord& b) {
  const bool exp_equal =
      (std::isnan(a.expansion_ratio) && std::isnan(b.expansion_ratio)) ||
      a.expansion_ratio == b.expansion_ratio;
  return a.d == b.d && a.k == b.k && a.variant == b.variant &&
         a.signal == b.signal && a.seed == b.seed &&
         a.m_reduced == b.m_reduced && a.n_reduced == b.n_reduced &&
         exp_equal && a.overdetermined_fullrank == b.overdetermined_fullrank &&
         a.unique_nonneg == b.unique_nonneg && a.unique_box == b.unique_box;
}

}  // namespace

TEST_CASE("signal sampling: multiplicity and binary models") {
  const Geometry g(3, 5);
  std::mt19937_64 rng(1);
  for (int k : {0, 1, 7, 40, 200}) {
    const Eigen::VectorXd x =
        tomo::sample_sparse_signal(g, k, SignalKind::kNonnegMultiplicity, rng);
    CHECK(x.sum() == doctest::Approx(k));
    CHECK(x.minCoeff() >= 0.0);
    for (int i = 0; i < x.size(); ++i)
      CHECK(x[i] == std::floor(x[i]));  // whole particles
  }
  for (int k : {0, 1, 7, 125}) {
    const Eigen::VectorXd x =
        tomo::sample_sparse_signal(g, k, SignalKind::kBinary, rng);
    CHECK(x.sum() == doctest::Approx(k));
    CHECK(((x.array() == 0.0) || (x.array() == 1.0)).all());
  }
  CHECK_THROWS_AS(tomo::sample_sparse_signal(g, 126, SignalKind::kBinary, rng),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      tomo::sample_sparse_signal(g, -1, SignalKind::kNonnegMultiplicity, rng),
      std::invalid_argument);

  // Binary draws are uniform over supports: across many draws every cell
  // should appear with frequency near k/n.
  std::vector<int> hits(125, 0);
  const int draws = 4000;
  for (int t = 0; t < draws; ++t) {
    const Eigen::VectorXd x =
        tomo::sample_sparse_signal(g, 25, SignalKind::kBinary, rng);
    for (int i = 0; i < 125; ++i)
      if (x[i] > 0.5) ++hits[static_cast<std::size_t>(i)];
  }
  for (int i = 0; i < 125; ++i)
    CHECK(hits[static_cast<std::size_t>(i)] ==
          doctest::Approx(draws / 5.0).epsilon(0.25));
}

TEST_CASE("trial seeds separate coordinates") {
  std::set<std::uint64_t> seen;
  for (int d : {5, 6})
    for (int k : {1, 2})
      for (int v : {0, 1})
        for (int s : {0, 1})
          for (int t : {0, 1, 2})
            seen.insert(tomo::trial_seed(1, d, k, v, s, t));
  CHECK(seen.size() == 48);  // no collisions across any coordinate
  CHECK(tomo::trial_seed(1, 5, 1, 0, 0, 0) == tomo::trial_seed(1, 5, 1, 0, 0, 0));
  CHECK(tomo::trial_seed(1, 5, 1, 0, 0, 0) != tomo::trial_seed(2, 5, 1, 0, 0, 0));
}

TEST_CASE("trials are bit-for-bit reproducible") {
  const Geometry g(3, 6);
  const SparseMatrix base = tomo::measurement_matrix(g);
  for (const MatrixVariant variant :
       {MatrixVariant::kUnperturbed, MatrixVariant::kPerturbed}) {
    for (const SignalKind signal :
         {SignalKind::kNonnegMultiplicity, SignalKind::kBinary}) {
      tomo::TrialConfig tc;
      tc.variant = variant;
      tc.signal = signal;
      const tomo::TrialRecord r1 = tomo::run_trial(g, base, 9, tc, 555);
      const tomo::TrialRecord r2 = tomo::run_trial(g, base, 9, tc, 555);
      const tomo::TrialRecord r3 = tomo::run_trial(g, base, 9, tc, 556);
      CHECK(same_record(r1, r2));
      CHECK_FALSE(same_record(r1, r3));
      CHECK(r1.d == 6);
      CHECK(r1.k == 9);
      CHECK((r1.unique_box.has_value() == (signal == SignalKind::kBinary)));
    }
  }
}

TEST_CASE("record-level implications") {
  const Geometry g(3, 6);
  const SparseMatrix base = tomo::measurement_matrix(g);
  tomo::TrialConfig tc;
  tc.signal = SignalKind::kBinary;
  for (int t = 0; t < 60; ++t) {
    const int k = 1 + t % 30;
    const tomo::TrialRecord rec = tomo::run_trial(g, base, k, tc, 9000 + t);
    // An overdetermined full-rank reduced system settles uniqueness.
    if (rec.overdetermined_fullrank)
      CHECK(rec.unique_nonneg == Verdict::kUnique);
    // Nonnegative uniqueness is inherited by the tighter box constraints.
    if (rec.unique_nonneg == Verdict::kUnique &&
        *rec.unique_box != Verdict::kInconclusive)
      CHECK(*rec.unique_box == Verdict::kUnique);
    CHECK(rec.m_reduced <= g.rays());
    CHECK(rec.n_reduced <= g.cells());
    if (rec.n_reduced > 0)
      CHECK(rec.expansion_ratio ==
            doctest::Approx(rec.m_reduced / (3.0 * rec.n_reduced)));
  }
}

TEST_CASE("grid: validation, aggregation, reproducibility") {
  GridConfig cfg;
  cfg.dim = 3;
  cfg.d_values = {5};
  cfg.k_values = {1, 6, 18};
  cfg.trials = 12;
  cfg.master_seed = 7;
  cfg.jobs = 1;

  SUBCASE("axis validation") {
    GridConfig bad = cfg;
    bad.rho_values = {0.1};
    CHECK_THROWS_AS(tomo::run_grid(bad), std::invalid_argument);
    bad.rho_values.clear();
    bad.k_values.clear();
    CHECK_THROWS_AS(tomo::run_grid(bad), std::invalid_argument);
    bad = cfg;
    bad.d_values.clear();
    CHECK_THROWS_AS(tomo::run_grid(bad), std::invalid_argument);
    bad = cfg;
    bad.trials = 0;
    CHECK_THROWS_AS(tomo::run_grid(bad), std::invalid_argument);
  }

  SUBCASE("cells, rho translation, stats ranges") {
    const tomo::PhaseGrid grid = tomo::run_grid(cfg);
    REQUIRE(grid.cells.size() == 6);  // 2 variants x 3 sparsity levels
    for (const tomo::CellStats& s : grid.cells) {
      CHECK(s.trials == 12);
      CHECK(s.rho == doctest::Approx(s.k / 25.0));
      CHECK(s.p_unique_nonneg >= 0.0);
      CHECK(s.p_unique_nonneg <= 1.0);
      CHECK(s.m_reduced_mean <= 75.0);
      CHECK(std::isnan(s.p_unique_box));  // multiplicity signals
    }
    // Success decays (weakly) as the particle count grows, per variant.
    for (int v = 0; v < 2; ++v) {
      const std::size_t o = static_cast<std::size_t>(v) * 3;
      CHECK(grid.cells[o].p_unique_nonneg >=
            grid.cells[o + 1].p_unique_nonneg - 0.1);
      CHECK(grid.cells[o + 1].p_unique_nonneg >=
            grid.cells[o + 2].p_unique_nonneg - 0.1);
    }
  }

  SUBCASE("scheduling independence and CSV determinism") {
    const tomo::PhaseGrid g1 = tomo::run_grid(cfg);
    GridConfig cfg4 = cfg;
    cfg4.jobs = 4;
    const tomo::PhaseGrid g4 = tomo::run_grid(cfg4);
    std::ostringstream s1, s4;
    tomo::write_grid_csv(s1, g1);
    tomo::write_grid_csv(s4, g4);
    CHECK(s1.str() == s4.str());
    CHECK(s1.str().find("d,k,rho,variant,trials,") == 0);
  }

  SUBCASE("rho axis resolves k per d") {
    GridConfig rc = cfg;
    rc.k_values.clear();
    rc.rho_values = {0.2, 0.5};
    rc.d_values = {5, 6};
    const tomo::PhaseGrid grid = tomo::run_grid(rc);
    REQUIRE(grid.cells.size() == 8);
    CHECK(grid.cells[0].d == 5);
    CHECK(grid.cells[0].k == 5);   // round(0.2 * 25)
    CHECK(grid.cells[1].k == 13);  // round(0.5 * 25) = 12.5 rounds up
    bool saw_d6 = false;
    for (const tomo::CellStats& s : grid.cells)
      if (s.d == 6 && s.rho == doctest::Approx(0.2)) {
        CHECK(s.k == 7);  // round(0.2 * 36)
        saw_d6 = true;
      }
    CHECK(saw_d6);
  }
}

TEST_CASE("grid: binary signals fill the box column and dominate perturbed") {
  GridConfig cfg;
  cfg.dim = 3;
  cfg.d_values = {6};
  cfg.k_values = {4, 25};
  cfg.trials = 16;
  cfg.signal = SignalKind::kBinary;
  cfg.master_seed = 3;
  cfg.jobs = 0;  // exercise the hardware-concurrency default
  const tomo::PhaseGrid grid = tomo::run_grid(cfg);
  REQUIRE(grid.cells.size() == 4);
  for (const tomo::CellStats& s : grid.cells) {
    CHECK_FALSE(std::isnan(s.p_unique_box));
    CHECK(s.p_unique_box >= s.p_unique_nonneg - 1e-12);
  }
  // At equal sparsity the perturbed system recovers at least as often
  // (up to Monte Carlo noise on 16 trials).
  for (int i = 0; i < 2; ++i) {
    const tomo::CellStats& unpert = grid.cells[static_cast<std::size_t>(i)];
    const tomo::CellStats& pert = grid.cells[static_cast<std::size_t>(i + 2)];
    REQUIRE(unpert.k == pert.k);
    CHECK(pert.p_unique_nonneg >= unpert.p_unique_nonneg - 0.2);
  }
}

TEST_CASE("grid manifest and config round-trip") {
  GridConfig cfg;
  cfg.dim = 2;
  cfg.d_values = {4, 5};
  cfg.rho_values = {0.3, 0.8};
  cfg.trials = 5;
  cfg.variants = {MatrixVariant::kPerturbed};
  cfg.signal = SignalKind::kBinary;
  cfg.epsilon = 0.25;
  cfg.normalization = tomo::ColumnNormalization::kEuclidean;
  cfg.probes = 3;
  cfg.master_seed = 99;
  cfg.jobs = 2;
  const tomo::PhaseGrid grid = tomo::run_grid(cfg);
  const std::string manifest = tomo::grid_manifest(grid);
  const nlohmann::json j = nlohmann::json::parse(manifest);
  CHECK(j.at("tool") == "tomoray");
  CHECK(j.at("config").at("master_seed") == 99);
  CHECK(j.at("cells") == 4);

  const GridConfig back = tomo::grid_config_from_json(manifest);
  CHECK(back.dim == cfg.dim);
  CHECK(back.d_values == cfg.d_values);
  CHECK(back.rho_values == cfg.rho_values);
  CHECK(back.k_values.empty());
  CHECK(back.trials == cfg.trials);
  REQUIRE(back.variants.size() == 1);
  CHECK(back.variants[0] == MatrixVariant::kPerturbed);
  CHECK(back.signal == SignalKind::kBinary);
  CHECK(back.epsilon == cfg.epsilon);
  CHECK(back.normalization == cfg.normalization);
  CHECK(back.probes == cfg.probes);
  CHECK(back.master_seed == cfg.master_seed);

  // Same config, same grid: the CSV is byte-identical.
  const tomo::PhaseGrid again = tomo::run_grid(back);
  std::ostringstream s1, s2;
  tomo::write_grid_csv(s1, grid);
  tomo::write_grid_csv(s2, again);
  CHECK(s1.str() == s2.str());
}
