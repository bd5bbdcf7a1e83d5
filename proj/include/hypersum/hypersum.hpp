// Copyright 2026 The hypersum Authors
//
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

// The weighted hypergeometric sum
//
//   S(eta, c; x) = sum_{k>=0} ((1-x)/(1+eta))^k 2F1(k/2+1/2, k/2+1; c; x)
//
// evaluated term by term, through its closed form
//
//   S = (1/X) 2F1(1/2, 1; c; x/X^2),   X = (x+eta)/(1+eta),
//
// and through the elementary forms available for c = 1, 2, 3.

#ifndef HYPERSUM_HYPERSUM_HPP_
#define HYPERSUM_HYPERSUM_HPP_

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "hypersum/eval_result.hpp"
#include "hypersum/special_fn.hpp"

namespace hypersum {

/// (eta, c, x) with eta > 0, c > 0 and -1 <= x <= 1; enforced by make().
struct SumParams {
  double eta = 1.0;
  double c = 1.0;
  double x = 0.0;

  static SumParams make(double eta, double c, double x);
};

struct ClosedFormArgument {
  double X = 0.0;                  // (x + eta) / (1 + eta)
  double xi = 0.0;                 // x / X^2; -inf when X == 0 and x < 0
  std::optional<double> xi_star;   // (eta+1)^2/(eta-1)^2, absent at eta == 1

  static ClosedFormArgument from(const SumParams& p);
};

enum class VerdictReason {
  Interior,
  BoundaryNeedsLargeC,
  DivergentPositiveX,
  DivergentNegativeX,
  DivergentAtOne,
};

std::string_view to_string(VerdictReason reason);

struct ConvergenceVerdict {
  bool convergent = false;
  bool on_boundary = false;
  VerdictReason reason = VerdictReason::Interior;
};

/// Absolute-convergence decision for the term-wise sum.
///   0 < x < 1:  eta > sqrt(x)          (c <= 3/2),  eta >= sqrt(x) (c > 3/2)
///   x < 0:      eta > sqrt(1+|x|) - 1  (c <= 3/2),  >= for c > 3/2
///   x = 0:      always;   x = 1: iff c > 3/2 (only the k = 0 term survives)
ConvergenceVerdict convergence_check(const SumParams& p);

/// Ratio of consecutive late terms: (1+sqrt x)/(1+eta) for x > 0,
/// sqrt(1+|x|)/(1+eta) for x < 0, 1/(1+eta) at x = 0.
double late_term_ratio(const SumParams& p);

struct DirectOptions {
  double tol = special::kDefaultTol;
  std::int64_t max_terms = special::kDefaultMaxTerms;
  // Sum divergent parameters anyway (divergence diagnostics only).
  bool allow_divergent = false;
};

/// Term-wise summation.  Inner 2F1 values come from the exact three-term
/// recurrence in k (special::ShiftedFamily), so each term costs O(1).
///
/// Stops once the geometric tail estimate stays below tol * max(1, |S|)
/// for three consecutive k.  On the convergence boundary (ratio 1, terms
/// ~ k^(1/2-c)) it sums max_terms terms and reports the integral tail
/// bound K^(3/2-c)/(c-3/2) (scaled by the last term) in abs_error_estimate.
///
/// Throws NotConvergent outside the convergence region unless
/// allow_divergent is set; SlowConvergence when an interior point runs out
/// of terms.
EvalResult sum_direct(const SumParams& p, const DirectOptions& opts = {});

/// Partial sums S_0, S_1, ..., S_{n-1}, regardless of convergence.
std::vector<double> sum_partial_sums(const SumParams& p, std::int64_t n);

/// (1/X) 2F1(1/2, 1; c; x/X^2).  X == 0 uses the limit
/// Gamma(c)/Gamma(c-1/2) sqrt(pi/eta).  For X < 0 (x < -eta, eta < 1) the
/// principal-branch expression is not the sum; the value returned there is
/// its continuation through X = 0, flagged analytic_continuation.
EvalResult sum_closed(const SumParams& p);

/// Elementary forms for c = 1, 2, 3 (R = sqrt((1-x)(eta^2-x))):
///   S(eta,1;x) = (1+eta)/R
///   S(eta,2;x) = 2(1+eta)/(eta+x+R)
///   S(eta,3;x) = 4(1+eta)(eta+x+2R) / (3(eta+x+R)^2)
/// These are the printed forms with the removable x = 0 singularity divided
/// out.  Valid wherever the sum converges.
EvalResult sum_special(const SumParams& p);

enum class SumMethod { Direct, Closed, Special, Auto };

/// Auto prefers the closed form and falls back to direct summation when
/// x/X^2 is within 1e-6 of 1 with c <= 3/2 + 1e-6.
EvalResult evaluate_sum(const SumParams& p, SumMethod method,
                        const DirectOptions& opts = {});

enum class LetacMethod { Direct, Closed };

/// sum_{k>=1} z^k 2F1(k/2, k/2+1/2; c; x) = z/(1-z) 2F1(1/2,1;c;x/(1-z)^2)
/// for 0 < z < 1, 0 <= x < (1-z)^2, c > 0.
EvalResult letac_sum(double z, double c, double x, LetacMethod method);

/// (1/2) sum_k ((1-x)/2)^k 2F1(k/2+1/2, k/2+1; 2; x), which equals 1 on
/// [-1, 1].  Computed by direct summation.
EvalResult normalization_identity(double x);

}  // namespace hypersum

#endif  // HYPERSUM_HYPERSUM_HPP_
