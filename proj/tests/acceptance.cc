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
//
// Acceptance gate: eleven end-to-end criteria pinning the library against
// tabulated reference values.  One line per criterion; the exit code is the
// number of failing criteria.  Run with `--only N [M ...]` to restrict.
//
// Criteria 3 and 4 compare against reference integers that are mutually
// inconsistent at the small-d end (details in the failure messages); they
// are implemented exactly as stated and report honest failures.

#include <bit>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "tomo/analysis.hpp"
#include "tomo/experiments.hpp"
#include "tomo/geometry.hpp"
#include "tomo/rank.hpp"
#include "tomo/reduction.hpp"
#include "tomo/uniqueness.hpp"

namespace {

using tomo::Geometry;
using tomo::SparseMatrix;
using tomo::Verdict;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

int pow_int(int b, int e) {
  int r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

// --------------------------------------------------------------------------
// 1. A B = 0 in integer arithmetic and rank(A) = d^D - (d-1)^D, d = 3..8.

Outcome criterion1() {
  int checked = 0;
  for (int dim : {2, 3})
    for (int d = 3; d <= 8; ++d) {
      const Geometry g(dim, d);
      const SparseMatrix a = tomo::measurement_matrix(g);
      const SparseMatrix b = tomo::nullspace_basis(g);
      if (tomo::multiply(a, b).nonzeros() != 0)
        return {false, fmt("A B != 0 at D=%d, d=%d", dim, d)};
      const int expect = pow_int(d, dim) - pow_int(d - 1, dim);
      const int got = tomo::exact_rank(a);
      if (got != expect)
        return {false, fmt("rank(A) = %d, want %d at D=%d, d=%d", got, expect,
                           dim, d)};
      ++checked;
    }
  return {true, fmt("A B = 0 and rank d^D-(d-1)^D exact for %d geometries",
                    checked)};
}

// --------------------------------------------------------------------------
// 2. Brute-force Kruskal rank 2^D - 1 for the d = 3 matrices.

Outcome criterion2() {
  const int k2 = tomo::kruskal_rank_bruteforce(
      tomo::measurement_matrix(Geometry(2, 3)), 4);
  const int k3 = tomo::kruskal_rank_bruteforce(
      tomo::measurement_matrix(Geometry(3, 3)), 8);
  const bool pass = k2 == 3 && k3 == 7;
  return {pass, fmt("kruskal(A_3^2) = %d (want 3), kruskal(A_3^3) = %d "
                    "(want 7), exhaustive",
                    k2, k3)};
}

// --------------------------------------------------------------------------
// 3. Floored thresholds vs tabulated integers at d = 10, 20, 30 (3D), +-1.

Outcome criterion3() {
  const int ds[3] = {10, 20, 30};
  const long long want_delta[3] = {18, 48, 85};
  const long long want_max[3] = {66, 181, 328};
  const long long want_tilde[3] = {105, 241, 408};
  std::string bad;
  for (int i = 0; i < 3; ++i) {
    const tomo::ThresholdReport r = tomo::threshold_report(Geometry(3, ds[i]));
    const auto check = [&](const char* name, double v, long long want) {
      const long long fl = static_cast<long long>(std::floor(v));
      if (std::llabs(fl - want) > 1)
        bad += fmt("%s%s(d=%d) floors to %lld, reference %lld",
                   bad.empty() ? "" : "; ", name, ds[i], fl, want);
    };
    check("k_delta", r.k_delta, want_delta[i]);
    check("k_max", r.k_max, want_max[i]);
    check("k_tilde_max", r.k_tilde_max, want_tilde[i]);
  }
  if (bad.empty())
    return {true, "all nine floored thresholds within +-1 of the references"};
  // The d = 10 reference row is internally inconsistent: its own k_max = 66
  // equals floor(N_R(k_tilde_max)/3) only if k_tilde_max >= 107.97, which
  // contradicts the printed 105.  The solver reproduces the other eight.
  return {false, bad + " (the d=10 k_tilde_max reference is inconsistent "
                       "with the k_max=66 reference it implies)"};
}

// --------------------------------------------------------------------------
// 4. 2D critical sparsity within [1.9, 2.1] for d = 10..100.

Outcome criterion4() {
  std::string bad;
  double worst = 2.0;
  for (int d = 10; d <= 100; ++d) {
    const double v = tomo::solve_threshold(Geometry(2, d), 1.0);
    if (v < 1.9 || v > 2.1) {
      bad += fmt("%sk_crit(%d) = %.4f", bad.empty() ? "" : "; ", d, v);
      worst = std::max(worst, v);
    }
  }
  if (bad.empty()) return {true, "k_crit in [1.9, 2.1] for all d in 10..100"};
  // k_crit(d) = log(1-2/d)/log(1-1/d) decreases to 2 from above, so the
  // interval cannot hold at the small-d end; in range from d = 12 on.
  return {false, bad + " exceed 2.1 (limit approached from above)"};
}

// --------------------------------------------------------------------------
// 5. Concentration bound first below 0.01 at d = 77 +- 1, with
//    k = round(0.05 d^2) and deviation 0.01 N_R^0(k).

Outcome criterion5() {
  int first_limit = 0, first_exact = 0;
  double at76 = 0, at77 = 0;
  for (int d = 60; d <= 95; ++d) {
    const Geometry g(3, d);
    const double k = std::round(0.05 * d * d);
    const double delta = 0.01 * tomo::expected_zero_rays(g, k);
    const double limit = tomo::deviation_bound_limit(g, k, delta);
    const double exact = tomo::deviation_bound(g, k, delta);
    if (d == 76) at76 = limit;
    if (d == 77) at77 = limit;
    if (first_limit == 0 && limit < 0.01) first_limit = d;
    if (first_exact == 0 && exact < 0.01) first_exact = d;
  }
  const bool pass = std::abs(first_limit - 77) <= 1;
  return {pass,
          fmt("large-d form first < 0.01 at d=%d (0.01 targets: %.6f at 76, "
              "%.6f at 77); sharper exact form already crosses at d=%d",
              first_limit, at76, at77, first_exact)};
}

// --------------------------------------------------------------------------
// 6. Monte Carlo means of (m_red, n_red) within 2% of N_R, N_C.

Outcome criterion6() {
  struct Case {
    int dim, d;
    std::vector<int> ks;
  };
  const std::vector<Case> cases = {{3, 10, {10, 50, 118}}, {2, 10, {2, 10}}};
  const int trials = 500;
  double worst = 0.0;
  std::string worst_at;
  for (const Case& c : cases) {
    const Geometry g(c.dim, c.d);
    const SparseMatrix a = tomo::measurement_matrix(g);
    for (const int k : c.ks) {
      // Master seed 1: at 500 trials per cell the tight cells sit near one
      // percent standard error, so an unlucky stream can graze the band.
      std::mt19937_64 rng(tomo::trial_seed(1, c.d, k, 0, c.dim, 0));
      double sum_m = 0, sum_n = 0;
      for (int t = 0; t < trials; ++t) {
        const Eigen::VectorXd x = tomo::sample_sparse_signal(
            g, k, tomo::SignalKind::kNonnegMultiplicity, rng);
        const tomo::ReducedSystem r = tomo::reduce(a, a * x, 0.0);
        sum_m += r.ray_count();
        sum_n += r.cell_count();
      }
      const double em = std::abs(sum_m / trials / tomo::expected_nonzero_rays(g, k) - 1.0);
      const double en = std::abs(sum_n / trials / tomo::expected_cells(g, k) - 1.0);
      for (const double e : {em, en})
        if (e > worst) {
          worst = e;
          worst_at = fmt("D=%d, k=%d", c.dim, k);
        }
    }
  }
  return {worst <= 0.02, fmt("largest relative error %.3f%% (at %s) over 5 "
                             "cells x %d trials, tolerance 2%%",
                             100 * worst, worst_at.c_str(), trials)};
}

// --------------------------------------------------------------------------
// 7. Alternating-corner instances: nonunique by both verifiers, and no
//    separating certificate, 20 random placements at d = 3, 5, 8.

Outcome criterion7() {
  std::mt19937_64 rng(7);
  int checked = 0;
  for (const int d : {3, 5, 8}) {
    const Geometry g(3, d);
    const SparseMatrix a = tomo::measurement_matrix(g);
    for (int t = 0; t < 20; ++t) {
      std::vector<std::pair<int, int>> pairs;
      for (int ax = 0; ax < 3; ++ax) {
        const int lo = static_cast<int>(rng() % static_cast<unsigned>(d - 1));
        const int hi = lo + 1 +
                       static_cast<int>(rng() % static_cast<unsigned>(d - 1 - lo));
        pairs.emplace_back(lo, hi);
      }
      const auto [even, odd] = tomo::nonunique_pair(g, pairs);
      Eigen::VectorXd x = Eigen::VectorXd::Zero(g.cells());
      for (const int c : even) x[c] = 1.0;
      tomo::VerifyOptions vo;
      vo.seed = 1000 + static_cast<std::uint64_t>(checked);
      if (tomo::verify_unique_nonneg(a, a * x, x, vo).verdict !=
          Verdict::kNotUnique)
        return {false, fmt("nonneg verifier missed corners at d=%d, t=%d", d, t)};
      if (tomo::verify_unique_box(a, x, vo).verdict != Verdict::kNotUnique)
        return {false, fmt("box verifier missed corners at d=%d, t=%d", d, t)};
      const tomo::Certificate cert = tomo::separating_certificate(a, x);
      if (!cert.solved || cert.found || std::abs(cert.margin) > 1e-7)
        return {false, fmt("certificate not refuted at d=%d, t=%d "
                           "(found=%d, margin=%.2e)",
                           d, t, static_cast<int>(cert.found), cert.margin)};
      ++checked;
    }
  }
  return {true, fmt("%d placements nonunique by both verifiers, all "
                    "certificates refuted with zero margin",
                    checked)};
}

// --------------------------------------------------------------------------
// 8. Enumeration of all 4-sparse binary supports at D=3, d=3.

Outcome criterion8() {
  const Geometry g(3, 3);
  const SparseMatrix a = tomo::measurement_matrix(g);
  const int n = g.cells();

  // Is the support the even- or odd-parity corner set of a 2x2x2 box?
  const auto is_corner_set = [&](const int (&s)[4]) {
    int vals[3][4];
    for (int i = 0; i < 4; ++i) {
      const std::array<int, 3> c = g.cell_coords(s[i]);
      for (int ax = 0; ax < 3; ++ax) vals[ax][i] = c[static_cast<std::size_t>(ax)];
    }
    int bits[4] = {0, 0, 0, 0};
    for (int ax = 0; ax < 3; ++ax) {
      int lo = vals[ax][0], hi = vals[ax][0];
      for (int i = 1; i < 4; ++i) {
        lo = std::min(lo, vals[ax][i]);
        hi = std::max(hi, vals[ax][i]);
      }
      if (lo == hi) return false;  // needs two distinct values per axis
      for (int i = 0; i < 4; ++i) {
        if (vals[ax][i] != lo && vals[ax][i] != hi) return false;
        bits[i] = 2 * bits[i] + (vals[ax][i] == hi ? 1 : 0);
      }
    }
    const int parity = std::popcount(static_cast<unsigned>(bits[0])) % 2;
    bool distinct = true;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j)
        if (bits[i] == bits[j]) distinct = false;
    if (!distinct) return false;
    for (int i = 1; i < 4; ++i)
      if (std::popcount(static_cast<unsigned>(bits[i])) % 2 != parity)
        return false;
    return true;
  };

  long long total = 0, unique_count = 0, corner_count = 0, mismatch = 0;
  tomo::VerifyOptions vo;
  vo.probes = 3;
  int s[4];
  for (s[0] = 0; s[0] < n; ++s[0])
    for (s[1] = s[0] + 1; s[1] < n; ++s[1])
      for (s[2] = s[1] + 1; s[2] < n; ++s[2])
        for (s[3] = s[2] + 1; s[3] < n; ++s[3]) {
          ++total;
          Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
          for (const int c : s) x[c] = 1.0;
          vo.seed = static_cast<std::uint64_t>(total);
          const Verdict v = tomo::verify_unique_box(a, x, vo).verdict;
          if (v == Verdict::kInconclusive)
            return {false, fmt("inconclusive at support #%lld", total)};
          const bool unique = v == Verdict::kUnique;
          const bool corner = is_corner_set(s);
          if (unique) ++unique_count;
          if (corner) ++corner_count;
          if (unique == corner) ++mismatch;  // corners are exactly the failures
        }
  // 1 - 2 C(3,2)^3 / C(27,4) as exact integer identities.
  const bool pass = total == 17550 && corner_count == 54 &&
                    unique_count == 17550 - 54 && mismatch == 0;
  return {pass, fmt("%lld supports: %lld unique, %lld corner sets, %lld "
                    "criterion mismatches; fraction %.6f vs 1 - 54/17550 = "
                    "%.6f",
                    total, unique_count, corner_count, mismatch,
                    static_cast<double>(unique_count) / static_cast<double>(total),
                    1.0 - 54.0 / 17550.0)};
}

// --------------------------------------------------------------------------
// 9. Desk-scale phase transition at d = 10: unperturbed >= 0.9 at k = 18
//    and <= 0.5 at k = 66; perturbed >= 0.9 at k = 66.  50 trials per cell.

Outcome criterion9() {
  tomo::GridConfig cfg;
  cfg.dim = 3;
  cfg.d_values = {10};
  cfg.k_values = {18, 66};
  cfg.trials = 50;
  cfg.master_seed = 1;
  const tomo::PhaseGrid grid = tomo::run_grid(cfg);
  std::map<std::pair<int, int>, const tomo::CellStats*> at;
  for (const tomo::CellStats& s : grid.cells)
    at[{s.variant == tomo::MatrixVariant::kPerturbed ? 1 : 0, s.k}] = &s;
  const double u18 = at.at({0, 18})->p_unique_nonneg;
  const double u66 = at.at({0, 66})->p_unique_nonneg;
  const double p66 = at.at({1, 66})->p_unique_nonneg;
  double inconclusive = 0.0;
  for (const tomo::CellStats& s : grid.cells)
    inconclusive = std::max(inconclusive, s.p_inconclusive);
  const bool pass = u18 >= 0.9 && u66 <= 0.5 && p66 >= 0.9;
  return {pass, fmt("unperturbed: %.2f at k=18 (>= 0.9), %.2f at k=66 "
                    "(<= 0.5); perturbed: %.2f at k=66 (>= 0.9); max "
                    "inconclusive fraction %.2f",
                    u18, u66, p66, inconclusive)};
}

// --------------------------------------------------------------------------
// 10. Certificate <=> box uniqueness on 200 random binary instances.

Outcome criterion10() {
  std::map<int, Geometry> gs;
  std::map<int, SparseMatrix> as;
  for (const int d : {5, 6, 7, 8}) {
    gs.emplace(d, Geometry(3, d));
    as.emplace(d, tomo::measurement_matrix(gs.at(d)));
  }
  int found = 0, refuted = 0, inconclusive = 0, disagree = 0;
  for (int i = 0; i < 200; ++i) {
    const int d = 5 + i % 4;
    const int k = 1 + i % 12;
    const Geometry& g = gs.at(d);
    const std::uint64_t seed = tomo::trial_seed(10, d, k, 0, 1, i);
    std::mt19937_64 rng(seed);
    const Eigen::VectorXd x =
        tomo::sample_sparse_signal(g, k, tomo::SignalKind::kBinary, rng);
    tomo::VerifyOptions vo;
    vo.seed = seed + 1;
    const tomo::UniquenessResult box =
        tomo::verify_unique_box(as.at(d), x, vo);
    const tomo::Certificate cert = tomo::separating_certificate(as.at(d), x);
    if (box.verdict == Verdict::kInconclusive || !cert.solved) {
      ++inconclusive;
      continue;
    }
    const bool unique = box.verdict == Verdict::kUnique;
    if (cert.found != unique) ++disagree;
    if (cert.found)
      ++found;
    else
      ++refuted;
  }
  const bool pass = disagree == 0 && inconclusive < 10;  // < 5% of 200
  return {pass, fmt("200 instances: %d certificates found, %d refuted, %d "
                    "inconclusive, %d disagreements",
                    found, refuted, inconclusive, disagree)};
}

// --------------------------------------------------------------------------
// 11. Wendel identities in exact dyadic arithmetic.

Outcome criterion11() {
  int checked = 0;
  for (int m = 1; m <= 50; ++m) {
    for (int n = 1; n <= m; ++n) {
      const tomo::WendelExact e = tomo::wendel_exact(n, m);
      if (!(e.numerator == tomo::BigUint::pow2(e.denominator_log2)))
        return {false, fmt("Pr(%d,%d) != 1", n, m)};
      ++checked;
    }
    const tomo::WendelExact h = tomo::wendel_exact(2 * m, m);
    if (!(h.numerator.doubled() == tomo::BigUint::pow2(h.denominator_log2)))
      return {false, fmt("Pr(%d,%d) != 1/2", 2 * m, m)};
    ++checked;
  }
  return {true, fmt("%d exact identities: Pr(n,m) = 1 for n <= m <= 50 and "
                    "Pr(2m,m) = 1/2 for m <= 50",
                    checked)};
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<bool> selected(12, true);
  if (argc > 1 && std::strcmp(argv[1], "--only") == 0) {
    selected.assign(12, false);
    for (int i = 2; i < argc; ++i) {
      const int n = std::atoi(argv[i]);
      if (n >= 1 && n <= 11) selected[static_cast<std::size_t>(n)] = true;
    }
  }
  Outcome (*criteria[])() = {criterion1, criterion2, criterion3, criterion4,
                             criterion5, criterion6, criterion7, criterion8,
                             criterion9, criterion10, criterion11};
  int failures = 0;
  for (int i = 1; i <= 11; ++i) {
    if (!selected[static_cast<std::size_t>(i)]) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i - 1]();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    std::printf("criterion %2d: %s - %s (%.1fs)\n", i, o.pass ? "PASS" : "FAIL",
                o.detail.c_str(), secs);
    std::fflush(stdout);
    if (!o.pass) ++failures;
  }
  return failures;
}
