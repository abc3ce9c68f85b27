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

#ifndef TOMO_ANALYSIS_HPP_
#define TOMO_ANALYSIS_HPP_

#include "tomo/bigint.hpp"
#include "tomo/geometry.hpp"

// Average-case sizes of the reduced system when k particles land uniformly
// and independently on the cell grid, the concentration bound around those
// means, and the sparsity thresholds derived from them.  k is treated as a
// real parameter throughout so thresholds can be located by root-finding.

namespace tomo {

// Probability that a fixed ray misses one uniform particle: 1 - d^-(D-1).
double ray_miss_probability(const Geometry& g);

// Expected number of nonzero measurements N_R(k) = m (1 - p^k).
double expected_nonzero_rays(const Geometry& g, double k);

// Expected number of zero measurements N_R^0(k) = m p^k.
double expected_zero_rays(const Geometry& g, double k);

// Expected number of cells kept by the reduction, N_C(k): cells all of
// whose rays are nonzero.  Closed forms by inclusion-exclusion over the
// D rays of a cell.
double expected_cells(const Geometry& g, double k);

struct ExpectedDims {
  double rays;       // N_R
  double zero_rays;  // N_R^0
  double cells;      // N_C
};
ExpectedDims expected_dims(const Geometry& g, double k);

// Azuma-type bound on Pr(|#nonzero rays - N_R(k)| >= delta) from the
// Doob martingale over particle placements:
//   2 exp( - (1-p^2)/(1-p^2k) * delta^2 / (2 D^2) ).
// A valid probability bound with range (0, 2]; may exceed 1 for small
// delta.  Requires k >= 1 and delta > 0.
double deviation_bound(const Geometry& g, double k, double delta);

// Its large-d simplification 2 exp(-delta^2 / (2 D^2 k)), always at least
// deviation_bound; with k = 0.05 d^2 in 3D this is the concrete form
// 2 exp(-10 delta^2 / (9 d^2)).
double deviation_bound_limit(const Geometry& g, double k, double delta);

// Wendel's probability that n random points, drawn symmetrically about the
// origin of R^m, lie in a common half-space:
//   Pr(n, m) = 2^(1-n) * sum_{i=0}^{m-1} C(n-1, i).
// Exact dyadic rational; `probability` converts it to double.
struct WendelExact {
  BigUint numerator;
  int denominator_log2;  // value = numerator / 2^denominator_log2
};
WendelExact wendel_exact(int n, int m);
double wendel_probability(int n, int m);

// Expansion levels the reduced-system ratio m_red/(ell n_red) is compared
// against: (sqrt(5)-1)/2 for 0/1 matrices, 1/ell for perturbed ones.
double expansion_delta_unperturbed();
double expansion_delta_perturbed(int column_degree);

// Location of N_R(k) = c * N_C(k), the unique positive root for
// 0 < c <= D.  Brackets from k = 1 by doubling, then bisects to `tol`;
// throws if no sign change can be bracketed.
double solve_threshold(const Geometry& g, double c, double tol = 1e-6);

// The sparsity thresholds of the average-case analysis, as continuous
// values (tabulated figures floor them).  delta defaults to the golden
// ratio conjugate.
struct ThresholdReport {
  double delta;
  double k_delta_root;  // root of N_R = ell * delta * N_C
  double k_delta;       // k_delta_root / (1 + delta): expander recovery bound
  double k_crit;        // root of N_R = N_C: reduced system stops being overdetermined
  double k_tilde_max;   // root of N_R = delta * N_C
  double k_max;         // N_R(k_tilde_max) / ell: perturbed recovery bound
  double k_opt;         // root of N_R = N_C / 2
};
ThresholdReport threshold_report(const Geometry& g, double delta = expansion_delta_unperturbed());

// Closed-form probability that a random k-sparse binary vector is the
// unique binary solution given its ray sums.  Implemented exactly for the
// two published cases: D=3, k=4 (alternating box corners are the only
// failures) and D=2, k=3.  Throws for any other (D, k).
double closed_form_uniqueness_probability(const Geometry& g, int k);

}  // namespace tomo

#endif  // TOMO_ANALYSIS_HPP_
