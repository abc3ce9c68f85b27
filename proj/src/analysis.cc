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

#include "tomo/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace tomo {
namespace {

void require_nonneg_k(double k) {
  if (!(k >= 0.0)) throw std::invalid_argument("k must be nonnegative");
}

double powk(double p, double k) { return std::exp(k * std::log(p)); }

}  // namespace

double ray_miss_probability(const Geometry& g) {
  return 1.0 - 1.0 / g.rays_per_axis();
}

double expected_nonzero_rays(const Geometry& g, double k) {
  require_nonneg_k(k);
  return g.rays() * (1.0 - powk(ray_miss_probability(g), k));
}

double expected_zero_rays(const Geometry& g, double k) {
  require_nonneg_k(k);
  return g.rays() * powk(ray_miss_probability(g), k);
}

double expected_cells(const Geometry& g, double k) {
  require_nonneg_k(k);
  const double d = g.d();
  const double n = g.cells();
  if (g.dim() == 2) {
    // The cell's two rays miss independently; both must be hit.
    const double p = 1.0 - 1.0 / d;
    const double hit = 1.0 - powk(p, k);
    return n * hit * hit;
  }
  // Inclusion-exclusion over the cell's three rays.  A single particle
  // misses one given ray with probability 1 - 1/d^2, one of two given rays
  // of a common cell with 1 - (2d-1)/d^3, and all three with
  // 1 - (3d-2)/d^3 (the rays overlap in the cell itself).
  const double p1 = 1.0 - 1.0 / (d * d);
  const double p2 = 1.0 - (2.0 * d - 1.0) / (d * d * d);
  const double p3 = 1.0 - (3.0 * d - 2.0) / (d * d * d);
  return n * (1.0 - 3.0 * powk(p1, k) + 3.0 * powk(p2, k) - powk(p3, k));
}

ExpectedDims expected_dims(const Geometry& g, double k) {
  return {expected_nonzero_rays(g, k), expected_zero_rays(g, k),
          expected_cells(g, k)};
}

double deviation_bound(const Geometry& g, double k, double delta) {
  if (!(k >= 1.0)) throw std::invalid_argument("deviation_bound: k >= 1");
  if (!(delta > 0.0))
    throw std::invalid_argument("deviation_bound: delta > 0");
  const double p = ray_miss_probability(g);
  const double dd = static_cast<double>(g.dim()) * g.dim();
  // Sum of the squared martingale increments: each particle changes the
  // nonzero-ray count by at most D, and the dependence on the i-th particle
  // decays as p^(k-i); the geometric sum (1-p^2k)/(1-p^2) collapses the
  // per-step bounds.
  const double geometric = (1.0 - powk(p, 2.0 * k)) / (1.0 - p * p);
  return 2.0 * std::exp(-delta * delta / (2.0 * dd * geometric));
}

double deviation_bound_limit(const Geometry& g, double k, double delta) {
  if (!(k >= 1.0))
    throw std::invalid_argument("deviation_bound_limit: k >= 1");
  if (!(delta > 0.0))
    throw std::invalid_argument("deviation_bound_limit: delta > 0");
  const double dd = static_cast<double>(g.dim()) * g.dim();
  return 2.0 * std::exp(-delta * delta / (2.0 * dd * k));
}

WendelExact wendel_exact(int n, int m) {
  if (n < 1 || m < 0) throw std::invalid_argument("wendel: n >= 1, m >= 0");
  // Row n-1 of Pascal's triangle by repeated addition; only the prefix up
  // to min(m, n) - 1 is summed.
  const int top = n - 1;
  std::vector<BigUint> row(static_cast<std::size_t>(top) + 1);
  row[0] = BigUint(1);
  for (int r = 1; r <= top; ++r)
    for (int i = r; i >= 1; --i) row[static_cast<std::size_t>(i)] +=
        row[static_cast<std::size_t>(i - 1)];
  BigUint sum;
  const int terms = std::min(m, n);  // C(n-1, i) = 0 beyond i = n-1
  for (int i = 0; i < terms; ++i) sum += row[static_cast<std::size_t>(i)];
  return {sum, n - 1};
}

double wendel_probability(int n, int m) {
  const WendelExact w = wendel_exact(n, m);
  return w.numerator.to_double_scaled(w.denominator_log2);
}

double expansion_delta_unperturbed() { return (std::sqrt(5.0) - 1.0) / 2.0; }

double expansion_delta_perturbed(int column_degree) {
  if (column_degree <= 0) throw std::invalid_argument("bad column degree");
  return 1.0 / column_degree;
}

double solve_threshold(const Geometry& g, double c, double tol) {
  if (!(c > 0.0)) throw std::invalid_argument("solve_threshold: c > 0");
  if (!(tol > 0.0)) throw std::invalid_argument("solve_threshold: tol > 0");
  const auto f = [&g, c](double k) {
    return expected_nonzero_rays(g, k) - c * expected_cells(g, k);
  };
  // N_R/N_C decreases from D (at k -> 0) towards m/n, so f has a single
  // sign change for 0 < c <= D.  Bracket from k = 1 by doubling.
  double lo = 1.0;
  const double f_lo = f(lo);
  if (f_lo < 0.0)
    throw std::domain_error(
        "solve_threshold: no root at k >= 1 (c exceeds the ratio's maximum)");
  if (f_lo == 0.0) return lo;
  double hi = 2.0;
  while (f(hi) > 0.0) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e9)
      throw std::domain_error("solve_threshold: no sign change up to k = 1e9");
  }
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

ThresholdReport threshold_report(const Geometry& g, double delta) {
  if (!(delta > 0.0) || !(delta < 1.0))
    throw std::invalid_argument("threshold_report: delta in (0,1)");
  const int ell = g.column_degree();
  ThresholdReport r;
  r.delta = delta;
  r.k_delta_root = solve_threshold(g, ell * delta);
  r.k_delta = r.k_delta_root / (1.0 + delta);
  r.k_crit = solve_threshold(g, 1.0);
  r.k_tilde_max = solve_threshold(g, delta);
  r.k_max = expected_nonzero_rays(g, r.k_tilde_max) / ell;
  r.k_opt = solve_threshold(g, 0.5);
  return r;
}

double closed_form_uniqueness_probability(const Geometry& g, int k) {
  const double d = g.d();
  if (g.dim() == 3 && k == 4) {
    // Non-unique 4-sparse binary vectors are exactly the alternating
    // corners of a box: 2 C(d,2)^3 of the C(d^3, 4) supports.
    const double pairs = d * (d - 1) / 2.0;
    const double n = d * d * d;
    const double supports = n * (n - 1) * (n - 2) * (n - 3) / 24.0;
    return 1.0 - 2.0 * pairs * pairs * pairs / supports;
  }
  if (g.dim() == 2 && k == 3) {
    return (d * d + 6.0 * d - 10.0) / (3.0 * (d * d - 2.0));
  }
  throw std::invalid_argument(
      "closed_form_uniqueness_probability: only (D=3, k=4) and (D=2, k=3)");
}

}  // namespace tomo
