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

#include "hypersum/branching.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "hypersum/error.hpp"
#include "hypersum/special_fn.hpp"

namespace hypersum::branching {

namespace {

constexpr std::int64_t kRecurrenceLimit = 64;

void require_subcritical_dual(const ScaledSibuya& d) {
  if (d.alpha >= 1.0 || d.lambda >= 1.0) {
    fail(ErrorKind::Domain, "extinction is certain unless alpha < 1 and lambda < 1");
  }
}

// (1-alpha)_k / k! = Gamma(k+1-alpha) / (Gamma(1-alpha) Gamma(k+1)).
double survival_ratio(double alpha, std::int64_t k) {
  if (k <= kRecurrenceLimit) {
    double r = 1.0;
    for (std::int64_t j = 1; j <= k; ++j) {
      r *= (static_cast<double>(j) - alpha) / static_cast<double>(j);
    }
    return r;
  }
  const double kk = static_cast<double>(k);
  return std::exp(special::log_gamma(kk + 1.0 - alpha) - special::log_gamma(1.0 - alpha) -
                  special::log_gamma(kk + 1.0));
}

}  // namespace

ScaledSibuya ScaledSibuya::make(double alpha, double lambda) {
  if (!(alpha > 0.0 && alpha <= 1.0)) fail(ErrorKind::Domain, "alpha must lie in (0, 1]");
  if (!(lambda > 0.0 && lambda <= 1.0)) fail(ErrorKind::Domain, "lambda must lie in (0, 1]");
  return {alpha, lambda};
}

double sibuya_pmf(const ScaledSibuya& d, std::int64_t k) {
  if (k < 0) return 0.0;
  if (k == 0) return 1.0 - d.lambda;
  if (d.alpha == 1.0) return k == 1 ? d.lambda : 0.0;
  if (k <= kRecurrenceLimit) {
    double p = d.lambda * d.alpha;
    for (std::int64_t j = 1; j < k; ++j) {
      p *= (static_cast<double>(j) - d.alpha) / static_cast<double>(j + 1);
    }
    return p;
  }
  // alpha Gamma(k-alpha) / (Gamma(1-alpha) Gamma(k+1))
  const double kk = static_cast<double>(k);
  return d.lambda * d.alpha *
         std::exp(special::log_gamma(kk - d.alpha) - special::log_gamma(1.0 - d.alpha) -
                  special::log_gamma(kk + 1.0));
}

double sibuya_survival(const ScaledSibuya& d, std::int64_t k) {
  if (k < 0) return 1.0;
  if (d.alpha == 1.0) return k == 0 ? d.lambda : 0.0;
  return d.lambda * survival_ratio(d.alpha, k);
}

double sibuya_pgf(const ScaledSibuya& d, double u) {
  if (!(u >= 0.0 && u <= 1.0)) fail(ErrorKind::Domain, "PGF argument must lie in [0, 1]");
  return 1.0 - d.lambda * std::pow(1.0 - u, d.alpha);
}

double extinction_prob(const ScaledSibuya& d) {
  require_subcritical_dual(d);
  return -std::expm1(std::log(d.lambda) / (1.0 - d.alpha));
}

double dual_pgf(const ScaledSibuya& d, double u) {
  const double Q = extinction_prob(d);
  if (!(u >= 0.0 && u <= 1.0)) fail(ErrorKind::Domain, "PGF argument must lie in [0, 1]");
  return (1.0 - d.lambda * std::pow(1.0 - Q * u, d.alpha)) / Q;
}

double dual_offspring_pmf(const ScaledSibuya& d, std::int64_t k) {
  const double Q = extinction_prob(d);
  if (k < 0) return 0.0;
  if (k == 0) return (1.0 - d.lambda) / Q;
  return std::pow(Q, static_cast<double>(k - 1)) * sibuya_pmf(d, k);
}

double dual_mean(const ScaledSibuya& d) {
  require_subcritical_dual(d);
  return d.alpha;
}

std::vector<double> dual_progeny_pmf_lagrange(const ScaledSibuya& d, std::int64_t L) {
  if (L <= 0) return {};
  const auto n_max = static_cast<std::size_t>(L);
  std::vector<double> f(n_max);
  for (std::size_t k = 0; k < n_max; ++k) {
    f[k] = dual_offspring_pmf(d, static_cast<std::int64_t>(k));
  }
  // g = f^n by g_0 = f_0^n, k f_0 g_k = sum_{j=1}^k ((n+1) j - k) f_j g_{k-j}.
  std::vector<double> out(n_max);
  std::vector<double> g(n_max);
  for (std::size_t n = 1; n <= n_max; ++n) {
    const double nn = static_cast<double>(n);
    g[0] = std::pow(f[0], nn);
    for (std::size_t k = 1; k < n; ++k) {
      double acc = 0.0;
      for (std::size_t j = 1; j <= k; ++j) {
        acc += ((nn + 1.0) * static_cast<double>(j) - static_cast<double>(k)) * f[j] * g[k - j];
      }
      g[k] = acc / (static_cast<double>(k) * f[0]);
    }
    out[n - 1] = g[n - 1] / nn;
  }
  return out;
}

// ---------------------------------------------------------------------------

ProgenyHalfLaw ProgenyHalfLaw::from_lambda(double lambda) {
  if (!(lambda > 0.0 && lambda < 1.0)) fail(ErrorKind::Domain, "lambda must lie in (0, 1)");
  ProgenyHalfLaw law;
  law.lambda = lambda;
  law.Q = (1.0 - lambda) * (1.0 + lambda);
  const double s = std::sqrt(law.Q);
  law.z_minus = 2.0 / (1.0 + s);
  law.z_plus = 2.0 / (1.0 - s);
  return law;
}

ProgenyHalfLaw ProgenyHalfLaw::from_Q(double Q) {
  if (!(Q > 0.0 && Q < 1.0)) fail(ErrorKind::Domain, "Q must lie in (0, 1)");
  ProgenyHalfLaw law;
  law.Q = Q;
  law.lambda = std::sqrt(1.0 - Q);
  const double s = std::sqrt(Q);
  law.z_minus = 2.0 / (1.0 + s);
  law.z_plus = 2.0 / (1.0 - s);
  return law;
}

double progeny_pmf(const ProgenyHalfLaw& law, std::int64_t ell) {
  if (ell < 1) fail(ErrorKind::Domain, "total progeny starts at 1");
  special::ShiftedFamily family(2.0, law.Q, 0.5 * (1.0 - law.Q));
  for (std::int64_t k = 1; k < ell; ++k) family.advance();
  return 0.5 * family.log_value().value();
}

std::vector<double> progeny_pmf_table(const ProgenyHalfLaw& law, std::int64_t L) {
  std::vector<double> out;
  if (L <= 0) return out;
  out.reserve(static_cast<std::size_t>(L));
  special::ShiftedFamily family(2.0, law.Q, 0.5 * (1.0 - law.Q));
  for (std::int64_t ell = 1; ell <= L; ++ell) {
    out.push_back(0.5 * family.log_value().value());
    family.advance();
  }
  return out;
}

double progeny_pgf_elementary(const ProgenyHalfLaw& law, double z) {
  const double l2 = law.lambda * law.lambda;
  if (z > law.z_minus && z < law.z_plus) {
    fail(ErrorKind::Domain, "z lies between z_minus and z_plus");
  }
  const double disc = std::max(0.0, l2 * z * z - 4.0 * z + 4.0);
  return z / law.Q * (1.0 - 0.5 * l2 * z - 0.5 * law.lambda * std::sqrt(disc));
}

double progeny_pgf_hypergeometric(const ProgenyHalfLaw& law, double z) {
  if (!(z > 0.0)) fail(ErrorKind::Domain, "z must be positive");
  const double l2 = law.lambda * law.lambda;
  const double den = 1.0 - 0.5 * l2 * z;
  double chi = law.Q / (den * den);
  if (chi > 1.0) {
    // z_minus itself lands on chi = 1 up to rounding.
    if (chi > 1.0 + 1e-12) fail(ErrorKind::Domain, "2F1 argument exceeds 1");
    chi = 1.0;
  }
  if (chi == 1.0) return 0.5 * z / den * 2.0;   // 2F1(1/2,1;2;1) = 2
  return 0.5 * z / den * special::hyp2f1_half_one(2.0, chi).value;
}

std::vector<double> progeny_pgf_coefficients(const ProgenyHalfLaw& law, int order) {
  if (order < 1) return {};
  const double l2 = law.lambda * law.lambda;
  // g(z) = 1 - z + lambda^2 z^2 / 4,  s = sqrt(g) by s_0 = 1,
  // 2 s_n = g_n - sum_{i=1}^{n-1} s_i s_{n-i}.
  std::vector<double> g(order, 0.0);
  g[0] = 1.0;
  if (order > 1) g[1] = -1.0;
  if (order > 2) g[2] = 0.25 * l2;
  std::vector<double> s(order, 0.0);
  s[0] = 1.0;
  for (int n = 1; n < order; ++n) {
    double acc = g[n];
    for (int i = 1; i < n; ++i) acc -= s[i] * s[n - i];
    s[n] = 0.5 * acc;
  }
  // H(z) = z/Q (1 - lambda^2 z/2 - lambda s(z))
  std::vector<double> p(order);
  for (int n = 0; n < order; ++n) {
    double a = -law.lambda * s[n];
    if (n == 0) a += 1.0;
    if (n == 1) a -= 0.5 * l2;
    p[n] = a / law.Q;
  }
  return p;
}

EvalResult progeny_pmf_bessel_oracle(const ProgenyHalfLaw& law, std::int64_t ell) {
  if (ell < 1) fail(ErrorKind::Domain, "total progeny starts at 1");
  const double beta = 2.0 / (law.lambda * law.lambda);
  const double rho = beta * std::sqrt(law.Q);
  const double decay = beta - rho;   // exp(-beta u) I1(rho u) ~ exp(-decay u)
  const double n = static_cast<double>(ell);
  const double log_norm = -0.5 * std::log(law.Q) - special::log_gamma(n);

  auto integrand = [&](double u) -> double {
    if (u <= 0.0) return ell == 1 ? std::exp(log_norm) * 0.5 * rho : 0.0;
    const double z = rho * u;
    const double i1s = special::bessel_i1_scaled(z);   // exp(-z) I1(z)
    if (i1s <= 0.0) return 0.0;
    return std::exp(log_norm + (n - 2.0) * std::log(u) - decay * u + std::log(i1s));
  };

  // Peak of u^(l-3/2) exp(-decay u); cut where the log-integrand falls 45 below.
  const double peak = std::max(n - 1.5, 0.0) / decay;
  double upper = std::max(peak, 1.0 / decay);
  const double log_peak = std::log(std::max(integrand(peak), 1e-300));
  while (std::log(std::max(integrand(upper), 1e-300)) > log_peak - 45.0) upper *= 1.5;

  using boost::math::quadrature::gauss_kronrod;
  std::array<double, 4> edges = {0.0, 0.5 * peak, peak + 2.0 * std::sqrt(n) / decay, upper};
  std::sort(edges.begin(), edges.end());
  double total = 0.0;
  double err = 0.0;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    if (!(edges[i + 1] > edges[i])) continue;
    double e = 0.0;
    total += gauss_kronrod<double, 61>::integrate(integrand, edges[i], edges[i + 1], 15,
                                                  1e-13, &e);
    err += e;
  }
  if (!std::isfinite(total) || err > 1e-9) {
    fail(ErrorKind::QuadratureFailure,
         "Bessel integral for l = " + std::to_string(ell) + " did not reach 1e-9");
  }
  EvalResult out;
  out.value = total;
  out.abs_error_estimate = err;
  out.terms_used = 0;
  out.method = Method::Quadrature;
  return out;
}

double progeny_tilted_pmf(const ProgenyHalfLaw& law, std::int64_t ell) {
  const double H = progeny_pgf_elementary(law, law.z_minus);
  return progeny_pmf(law, ell) * std::pow(law.z_minus, static_cast<double>(ell)) / H;
}

NormalizationCheck progeny_normalization(const ProgenyHalfLaw& law, std::int64_t L) {
  const std::vector<double> p = progeny_pmf_table(law, L);
  NormalizationCheck out;
  out.terms = L;
  double sum = 0.0;
  double comp = 0.0;
  for (double v : p) {
    const double t = sum + v;
    comp += std::fabs(sum) >= std::fabs(v) ? (sum - t) + v : (v - t) + sum;
    sum = t;
  }
  out.partial_sum = sum + comp;
  if (L >= 2) {
    // Late ratios increase towards (1 + sqrt Q)/2; bound the tail by the
    // larger of the two as a geometric series.
    const double limit = 0.5 * (1.0 + std::sqrt(law.Q));
    const double last = p.back();
    const double r = std::max(limit, last / p[p.size() - 2]);
    out.tail_bound = r < 1.0 ? last * r / (1.0 - r) : std::numeric_limits<double>::infinity();
  } else {
    out.tail_bound = 1.0 - out.partial_sum;
  }
  return out;
}

// ---------------------------------------------------------------------------

GeneralProgenyLaw GeneralProgenyLaw::make(double c, double x) {
  if (!(c > 1.5) || !std::isfinite(c)) fail(ErrorKind::Domain, "c must exceed 3/2");
  if (!(x > 0.0 && x < 1.0)) fail(ErrorKind::Domain, "x must lie in (0, 1)");
  return {c, x};
}

double GeneralProgenyLaw::normalization() const {
  return (c - 1.5) / (c - 1.0) * std::sqrt(x);
}

double general_progeny_pmf(const GeneralProgenyLaw& law, std::int64_t ell) {
  if (ell < 1) fail(ErrorKind::Domain, "l must be at least 1");
  special::ShiftedFamily family(law.c, law.x, 1.0 - std::sqrt(law.x));
  for (std::int64_t k = 1; k < ell; ++k) family.advance();
  return law.normalization() * family.log_value().value();
}

std::vector<double> general_progeny_pmf_table(const GeneralProgenyLaw& law,
                                              std::int64_t L) {
  std::vector<double> out;
  if (L <= 0) return out;
  out.reserve(static_cast<std::size_t>(L));
  const double K = law.normalization();
  special::ShiftedFamily family(law.c, law.x, 1.0 - std::sqrt(law.x));
  for (std::int64_t ell = 1; ell <= L; ++ell) {
    out.push_back(K * family.log_value().value());
    family.advance();
  }
  return out;
}

double general_progeny_pmf_asymptotic(const GeneralProgenyLaw& law, std::int64_t ell) {
  if (ell < 2) fail(ErrorKind::Domain, "asymptotic form needs l >= 2");
  const special::AsymptoticEval a = special::hyp2f1_large_k(ell - 1, law.c, law.x);
  const double log_w = std::log1p(-std::sqrt(law.x));
  return law.normalization() *
         std::exp(a.log_approx.log_abs + static_cast<double>(ell - 1) * log_w);
}

EvalResult general_progeny_total(const GeneralProgenyLaw& law) {
  constexpr int kLevels = 6;
  constexpr std::int64_t kTop = std::int64_t{1} << 17;
  const std::vector<double> q = general_progeny_pmf_table(law, kTop);

  // Partial sums at L_i = kTop / 2^i, accumulated in order.
  std::array<double, kLevels> S{};
  std::array<double, kLevels> L{};
  {
    double sum = 0.0;
    double comp = 0.0;
    int next = kLevels - 1;
    for (std::int64_t i = 0; i < kTop; ++i) {
      const double t = sum + q[static_cast<std::size_t>(i)];
      comp += std::fabs(sum) >= q[static_cast<std::size_t>(i)]
                  ? (sum - t) + q[static_cast<std::size_t>(i)]
                  : (q[static_cast<std::size_t>(i)] - t) + sum;
      sum = t;
      if (next >= 0 && i + 1 == (kTop >> next)) {
        S[static_cast<std::size_t>(next)] = sum + comp;
        L[static_cast<std::size_t>(next)] = static_cast<double>(i + 1);
        --next;
      }
    }
  }

  // S(L) = S_inf - L^(3/2-c) (b_0 + b_1/L + ...).  Solve with m unknown b's
  // using the m+1 largest L, for m = kLevels-1 down to kLevels-3.
  auto extrapolate = [&](int m) {
    const int n = m + 1;
    std::vector<double> A(static_cast<std::size_t>(n * n));
    std::vector<double> rhs(static_cast<std::size_t>(n));
    for (int r = 0; r < n; ++r) {
      const double Lr = L[static_cast<std::size_t>(r)];
      A[static_cast<std::size_t>(r * n)] = 1.0;
      double col = -std::pow(Lr, 1.5 - law.c);
      for (int j = 1; j < n; ++j) {
        A[static_cast<std::size_t>(r * n + j)] = col;
        col /= Lr;
      }
      rhs[static_cast<std::size_t>(r)] = S[static_cast<std::size_t>(r)];
    }
    // Gaussian elimination with partial pivoting.
    for (int col = 0; col < n; ++col) {
      int piv = col;
      for (int r = col + 1; r < n; ++r) {
        if (std::fabs(A[static_cast<std::size_t>(r * n + col)]) >
            std::fabs(A[static_cast<std::size_t>(piv * n + col)])) {
          piv = r;
        }
      }
      if (piv != col) {
        for (int j = 0; j < n; ++j) {
          std::swap(A[static_cast<std::size_t>(col * n + j)],
                    A[static_cast<std::size_t>(piv * n + j)]);
        }
        std::swap(rhs[static_cast<std::size_t>(col)], rhs[static_cast<std::size_t>(piv)]);
      }
      for (int r = col + 1; r < n; ++r) {
        const double f = A[static_cast<std::size_t>(r * n + col)] /
                         A[static_cast<std::size_t>(col * n + col)];
        for (int j = col; j < n; ++j) {
          A[static_cast<std::size_t>(r * n + j)] -= f * A[static_cast<std::size_t>(col * n + j)];
        }
        rhs[static_cast<std::size_t>(r)] -= f * rhs[static_cast<std::size_t>(col)];
      }
    }
    std::vector<double> sol(static_cast<std::size_t>(n));
    for (int r = n - 1; r >= 0; --r) {
      double acc = rhs[static_cast<std::size_t>(r)];
      for (int j = r + 1; j < n; ++j) {
        acc -= A[static_cast<std::size_t>(r * n + j)] * sol[static_cast<std::size_t>(j)];
      }
      sol[static_cast<std::size_t>(r)] = acc / A[static_cast<std::size_t>(r * n + r)];
    }
    return sol[0];
  };

  const double hi = extrapolate(kLevels - 1);
  const double lo = extrapolate(kLevels - 2);
  const double lower = extrapolate(kLevels - 3);
  EvalResult out;
  out.value = hi;
  // The recurrence loses about one ulp per step, so late q_l carry a
  // relative error growing like l eps.
  const double drift = static_cast<double>(kTop) * std::numeric_limits<double>::epsilon() *
                       std::fabs(hi - S[kLevels - 1]);
  out.abs_error_estimate =
      std::max(std::fabs(hi - lo), std::fabs(lo - lower)) + drift;
  out.terms_used = kTop;
  out.method = Method::Series;
  return out;
}

// ---------------------------------------------------------------------------

DualRoot DualRoot::solve(double v, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) fail(ErrorKind::Domain, "alpha must lie in (0, 1)");
  if (!(v >= 0.0) || !std::isfinite(v)) fail(ErrorKind::Domain, "v must be finite and >= 0");
  DualRoot root;
  root.v = v;
  root.alpha = alpha;
  if (v == 0.0) return root;

  // With t = 1 + e^y the equation reads g(y) = p log1p(e^y) + y - log v = 0,
  // p = alpha/(1-alpha).  g is increasing and convex and g(log v) >= 0, so
  // Newton from y = log v decreases monotonically onto the root.
  const double p = alpha / (1.0 - alpha);
  const double target = std::log(v);
  double y = target;
  for (int it = 1; it <= 200; ++it) {
    const double ey = std::exp(y);
    const double g = p * std::log1p(ey) + y - target;
    const double dg = 1.0 + p * ey / (1.0 + ey);
    const double step = g / dg;
    y -= step;
    root.iterations = it;
    if (std::fabs(step) <= 1e-15 * std::max(1.0, std::fabs(y))) {
      root.t_s0 = 1.0 + std::exp(y);
      if (root.residual() > 1e-12) break;
      return root;
    }
  }
  root.t_s0 = 1.0 + std::exp(y);
  if (root.residual() <= 1e-12) return root;
  fail(ErrorKind::RootFindFailure, "dual root did not converge for v = " + std::to_string(v));
}

double DualRoot::residual() const {
  if (v == 0.0) return std::fabs(t_s0 - 1.0);
  const double p = alpha / (1.0 - alpha);
  const double lhs = std::exp(p * std::log(t_s0)) * (t_s0 - 1.0);
  return std::fabs(lhs - v) / v;
}

EvalResult h_alpha_pgf(const ScaledSibuya& d, double z) {
  const double Q = extinction_prob(d);
  if (!(z >= 0.0 && z <= 1.0)) fail(ErrorKind::Domain, "z must lie in [0, 1]");
  EvalResult out;
  out.method = Method::RootFind;
  if (z == 0.0) return out;
  const double inv = 1.0 / (1.0 - d.alpha);
  const double log_lz = std::log(d.lambda) + std::log(z);
  // v = (1-z) / (lambda z)^(1/(1-alpha))
  const double v = (1.0 - z) * std::exp(-inv * log_lz);
  const DualRoot root = DualRoot::solve(v, d.alpha);
  out.value = -std::expm1(inv * (log_lz + std::log(root.t_s0))) / Q;
  out.terms_used = root.iterations;
  out.abs_error_estimate = 4.0 * std::numeric_limits<double>::epsilon() * (1.0 + out.value);
  return out;
}

double functional_equation_residual(const ScaledSibuya& d, double z) {
  const double Q = extinction_prob(d);
  const double qh = Q * h_alpha_pgf(d, z).value;
  return std::fabs(qh - z * sibuya_pgf(d, std::min(qh, 1.0)));
}

}  // namespace hypersum::branching
