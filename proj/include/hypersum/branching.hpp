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

// Galton-Watson processes with scaled Sibuya offspring, their subcritical
// duals, and the total-progeny laws.

#ifndef HYPERSUM_BRANCHING_HPP_
#define HYPERSUM_BRANCHING_HPP_

#include <cstdint>
#include <vector>

#include "hypersum/eval_result.hpp"

namespace hypersum::branching {

/// Offspring PGF 1 - lambda (1-u)^alpha, alpha and lambda in (0, 1].
struct ScaledSibuya {
  double alpha = 0.5;
  double lambda = 1.0;

  static ScaledSibuya make(double alpha, double lambda);
};

/// 1-lambda at k = 0, -lambda (-alpha)_k / k! for k >= 1.
double sibuya_pmf(const ScaledSibuya& d, std::int64_t k);

/// P(W > k) = lambda Gamma(k+1-alpha) / (Gamma(1-alpha) Gamma(k+1)).
double sibuya_survival(const ScaledSibuya& d, std::int64_t k);

double sibuya_pgf(const ScaledSibuya& d, double u);

/// Q = 1 - lambda^(1/(1-alpha)).  Domain error unless alpha < 1, lambda < 1.
double extinction_prob(const ScaledSibuya& d);

/// P(Q u) / Q: the process conditioned on extinction.
double dual_pgf(const ScaledSibuya& d, double u);

/// (1-lambda)/Q at k = 0, Q^(k-1) sibuya_pmf(k) otherwise.
double dual_offspring_pmf(const ScaledSibuya& d, std::int64_t k);

/// Mean offspring of the dual process.  Equals alpha.
double dual_mean(const ScaledSibuya& d);

/// P(total progeny = l), l = 1..L, for any alpha by Lagrange inversion:
/// (1/l) [u^(l-1)] P_dual(u)^l.  Intended for moderate L (O(L^3) work).
std::vector<double> dual_progeny_pmf_lagrange(const ScaledSibuya& d, std::int64_t L);

// ---------------------------------------------------------------------------
// Total progeny at alpha = 1/2.

struct ProgenyHalfLaw {
  double lambda = 0.5;
  double Q = 0.75;        // 1 - lambda^2
  double z_minus = 0.0;   // 2 / (1 + sqrt(Q))
  double z_plus = 0.0;    // 2 / (1 - sqrt(Q))

  static ProgenyHalfLaw from_lambda(double lambda);
  static ProgenyHalfLaw from_Q(double Q);
};

/// p_l = 2^-l (1-Q)^(l-1) 2F1(l/2, l/2+1/2; 2; Q), l >= 1.  O(l) work.
double progeny_pmf(const ProgenyHalfLaw& law, std::int64_t ell);

/// p_1 .. p_L in one pass.
std::vector<double> progeny_pmf_table(const ProgenyHalfLaw& law, std::int64_t L);

/// z/(1-lambda^2) (1 - lambda^2 z/2 - (lambda/2) sqrt(lambda^2 z^2 - 4z + 4)).
/// Domain error for z strictly between z_minus and z_plus.
double progeny_pgf_elementary(const ProgenyHalfLaw& law, double z);

/// (z/2)/(1 - lambda^2 z/2) 2F1(1/2, 1; 2; Q/(1 - lambda^2 z/2)^2), 0 < z <= z_minus.
double progeny_pgf_hypergeometric(const ProgenyHalfLaw& law, double z);

/// Coefficients p_1 .. p_order of the elementary PGF by truncated power
/// series arithmetic.
std::vector<double> progeny_pgf_coefficients(const ProgenyHalfLaw& law, int order);

/// p_l from the Bessel integral
///   1/(sqrt(Q) (l-1)!) int_0^inf u^(l-2) exp(-beta u) I_1(beta sqrt(Q) u) du,
/// beta = 2/lambda^2, by adaptive Gauss-Kronrod quadrature.
EvalResult progeny_pmf_bessel_oracle(const ProgenyHalfLaw& law, std::int64_t ell);

/// p_l z_-^l / H(z_-): the extreme conjugate law.  Coincides with the
/// general class at c = 2, x = Q.
double progeny_tilted_pmf(const ProgenyHalfLaw& law, std::int64_t ell);

struct NormalizationCheck {
  double partial_sum = 0.0;   // sum_{l <= L}
  double tail_bound = 0.0;    // geometric bound on sum_{l > L}
  std::int64_t terms = 0;
};

NormalizationCheck progeny_normalization(const ProgenyHalfLaw& law, std::int64_t L);

// ---------------------------------------------------------------------------
// The class q_l = ((c-3/2)/(c-1)) sqrt(x) (1-sqrt x)^(l-1)
//                 2F1(l/2, l/2+1/2; c; x),   c > 3/2, 0 < x < 1.

struct GeneralProgenyLaw {
  double c = 2.0;
  double x = 0.25;

  static GeneralProgenyLaw make(double c, double x);
  double normalization() const;   // (c-3/2)/(c-1) sqrt(x)
};

double general_progeny_pmf(const GeneralProgenyLaw& law, std::int64_t ell);
std::vector<double> general_progeny_pmf_table(const GeneralProgenyLaw& law,
                                              std::int64_t L);

/// Large-l approximation; accurate to O(1/l).
double general_progeny_pmf_asymptotic(const GeneralProgenyLaw& law, std::int64_t ell);

/// sum_l q_l.  The power-law tail is removed by Richardson extrapolation of
/// the partial sums at L = 2^17, 2^16, ...; abs_error_estimate is the spread
/// between successive extrapolation orders plus a rounding allowance, not a
/// rigorous bound.
EvalResult general_progeny_total(const GeneralProgenyLaw& law);

// ---------------------------------------------------------------------------
// General alpha: the PGF of the total progeny through a scalar root.

/// Root t > 1 of t^(alpha/(1-alpha)) (t - 1) = v  (t = 1 at v = 0).
struct DualRoot {
  double v = 0.0;
  double alpha = 0.5;
  double t_s0 = 1.0;
  int iterations = 0;

  static DualRoot solve(double v, double alpha);
  double residual() const;   // relative
};

/// H_alpha(z) = (1 - (lambda z t)^(1/(1-alpha))) / Q with t the root at
/// v = (1-z) / (lambda z)^(1/(1-alpha)).  H(0) = 0.
EvalResult h_alpha_pgf(const ScaledSibuya& d, double z);

/// |Q H - z P(Q H)| with P the offspring PGF; zero for the true H.
double functional_equation_residual(const ScaledSibuya& d, double z);

}  // namespace hypersum::branching

#endif  // HYPERSUM_BRANCHING_HPP_
