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

#ifndef HYPERSUM_SPECIAL_FN_HPP_
#define HYPERSUM_SPECIAL_FN_HPP_

#include <cstdint>

#include "hypersum/eval_result.hpp"

namespace hypersum::special {

inline constexpr double kDefaultTol = 1e-14;
inline constexpr std::int64_t kDefaultMaxTerms = 100000;

/// log|v| with the sign of v kept separately, for quantities that leave the
/// double range.  sign == 0 encodes v == 0 (log_abs is then -inf).
struct SignedLog {
  double log_abs = 0.0;
  int sign = 1;

  double value() const;
};

//----------------------------------------------------------------------
// Gamma family.  log_gamma is the primitive (Lanczos, g = 7, 9 terms,
// reflection below 1/2); everything else is derived from it.
double log_gamma(double x);
SignedLog log_gamma_signed(double x);
double gamma(double x);
// 1/Gamma(x), zero at the poles.
double rgamma(double x);

/// (a)_k = Gamma(a+k)/Gamma(a).  Products for k <= 64, log-gamma
/// differences beyond.  Throws Overflow when the result leaves the range.
double pochhammer(double a, std::int64_t k);
SignedLog log_pochhammer(double a, std::int64_t k);

//----------------------------------------------------------------------
// Gauss hypergeometric function.

struct HypParams {
  double a = 0.0;
  double b = 0.0;
  double c = 1.0;
  double x = 0.0;
};

/// Partial sum of the defining power series.  Term magnitudes are carried
/// with a running scale so large parameters do not overflow; this variant
/// throws Overflow if the final value does not fit a double.
///
/// Stops once the geometric tail bound of two consecutive terms is below
/// tol * |sum|.  abs_error_estimate adds the tail bound and the rounding
/// level of the largest partial sums (which exposes cancellation for x < 0).
EvalResult hyp2f1_series(const HypParams& p, double tol = kDefaultTol,
                         std::int64_t max_terms = kDefaultMaxTerms);

struct LogEvalResult {
  SignedLog value;
  double rel_error_estimate = 0.0;
  std::int64_t terms_used = 0;
};

/// Same summation as hyp2f1_series, result returned in log form.
LogEvalResult hyp2f1_series_log(const HypParams& p, double tol = kDefaultTol,
                                std::int64_t max_terms = kDefaultMaxTerms);

/// General real-argument evaluator for moderate parameters: direct series
/// for -1/2 <= x <= 0.9, Pfaff transformation for x < -1/2, the 1-x
/// connection formula near x = 1 and Gauss summation at x = 1.
EvalResult hyp2f1(double a, double b, double c, double x);

/// 2F1(1/2, 1; c; chi), the function behind the closed-form sum.
///   c in {1,2,3,4}   elementary forms
///   chi == 1         Gauss summation (needs c > 3/2)
///   chi < 0          Euler transformation onto (0,1)
///   otherwise        power series; connection formula for chi > 0.9
EvalResult hyp2f1_half_one(double c, double chi);

/// Gamma(c)Gamma(c-a-b) / (Gamma(c-a)Gamma(c-b)), requires c > a + b.
double gauss_point(double a, double b, double c);

/// (1 - z)^(-a), requires z < 1.
double hyp1f0(double a, double z);

//----------------------------------------------------------------------
// Large-k behaviour of 2F1(k/2 + 1/2, k/2 + 1; c; x).

struct AsymptoticEval {
  std::int64_t k = 0;
  double c = 0.0;
  double x = 0.0;
  double w = 0.0;      // |x| on the x < 0 branch, 0 otherwise
  double phi = 0.0;    // arctan(sqrt(w)), radians
  double Phi_k = 0.0;  // (k - c + 3/2) phi - (pi/2)(c - 3/2)
  double approx = 0.0;
  SignedLog log_approx;
  // |approx / sin(Phi_k)| for x < 0; equal to |approx| for 0 < x < 1.
  double envelope = 0.0;
};

/// Leading-order approximant.  For 0 < x < 1:
///   2^(c-3/2) Gamma(c) / (sqrt(pi) x^(c/2-1/4)) k^(1/2-c) (1-sqrt x)^(-k+c-3/2)
/// and for x < 0 the oscillatory form with sin(Phi_k).  Everything is
/// assembled in log space; approx may be +-inf while log_approx is finite.
AsymptoticEval hyp2f1_large_k(std::int64_t k, double c, double x);

/// Runs the exact three-term recurrence of the family
///   T_k = t^k 2F1(k/2 + 1/2, k/2 + 1; c; x),   k = 0, 1, 2, ...
/// obtained from the hypergeometric differential equation:
///   (1-x) F_{k+2} = r_k F_{k+1} + (1 - r_k) F_k,  r_k = (2k+5-2c)/(k+2).
/// F_k is the dominant solution for 0 < x < 1 and the two solutions have
/// equal modulus for x < 0, so forward iteration is stable.  Values are
/// kept with a running scale; value() may under- or overflow, log_abs()
/// does not.
class ShiftedFamily {
 public:
  ShiftedFamily(double c, double x, double weight);

  std::int64_t index() const { return k_; }
  double value() const;
  SignedLog log_value() const;
  void advance();

 private:
  void rescale();

  double c_;
  double x_;
  double weight_;
  std::int64_t k_ = 0;
  double cur_ = 0.0;
  double next_ = 0.0;
  double log_scale_ = 0.0;
};

//----------------------------------------------------------------------
// Modified Bessel functions of the first kind.  Ascending series up to
// z = 20, Hankel expansion beyond.

double bessel_i0(double z);
/// Throws Overflow once I1(z) exceeds the double range.
double bessel_i1(double z);
/// exp(-z) I1(z); finite for every z >= 0.
double bessel_i1_scaled(double z);

}  // namespace hypersum::special

#endif  // HYPERSUM_SPECIAL_FN_HPP_
