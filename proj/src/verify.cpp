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

#include "hypersum/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <string>

#include "hypersum/branching.hpp"
#include "hypersum/error.hpp"
#include "hypersum/hypersum.hpp"
#include "hypersum/mc_sim.hpp"
#include "hypersum/special_fn.hpp"

namespace hypersum::verify {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

double rel_diff(double a, double b) {
  const double scale = std::max(std::fabs(a), std::fabs(b));
  return scale == 0.0 ? 0.0 : std::fabs(a - b) / scale;
}

Criterion make(std::string id, std::string description, bool passed, Json metrics) {
  return {std::move(id), std::move(description), passed, std::move(metrics)};
}

// Least-squares slope of y on x.
double slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

double convergence_bound(double x) {
  return x > 0.0 ? std::sqrt(x) : std::sqrt(1.0 - x) - 1.0;
}

// Exact 2F1(k/2+1/2, k/2+1; c; x) for k = 0..kmax in log form.
std::vector<special::SignedLog> family_logs(double c, double x, std::int64_t kmax) {
  std::vector<special::SignedLog> out;
  out.reserve(static_cast<std::size_t>(kmax + 1));
  special::ShiftedFamily f(c, x, 1.0);
  for (std::int64_t k = 0; k <= kmax; ++k) {
    out.push_back(f.log_value());
    f.advance();
  }
  return out;
}

// ---------------------------------------------------------------------------

SuiteReport theorem1(const VerifyOptions& opts) {
  SuiteReport rep;
  mc::SplitMix64 rng(mc::SplitMix64::stream_seed(opts.seed, 1));
  const auto t0 = Clock::now();
  double worst = 0.0;
  Json worst_point;
  int continued = 0;
  std::int64_t terms = 0;
  for (int i = 0; i < 200; ++i) {
    const double c = 0.5 + 5.5 * rng.uniform();
    const double x = -1.0 + 2.0 * rng.uniform();
    const double eta = convergence_bound(x) + 0.05 + 1.95 * rng.uniform();
    const SumParams p = SumParams::make(eta, c, x);
    const EvalResult d = sum_direct(p);
    const EvalResult cl = sum_closed(p);
    terms += d.terms_used;
    if (cl.analytic_continuation) ++continued;
    const double e = rel_diff(d.value, cl.value);
    if (e >= worst) {
      worst = e;
      worst_point = Json{{"eta", eta}, {"c", c}, {"x", x}, {"direct", d.value},
                         {"closed", cl.value}};
    }
  }
  const double elapsed = seconds_since(t0);
  rep.criteria.push_back(make(
      "direct-vs-closed", "200 random interior points, max relative deviation <= 1e-9",
      worst <= 1e-9,
      Json{{"points", 200}, {"max_rel_deviation", worst}, {"worst_point", worst_point},
           {"points_with_X_negative", continued}, {"total_terms", terms}}));
  rep.criteria.push_back(make("runtime", "identity sweep within 60 s", elapsed <= 60.0,
                              Json{{"seconds", elapsed}}));

  double letac_worst = 0.0;
  int letac_points = 0;
  for (double z : {0.2, 0.5, 0.8}) {
    for (double c : {0.7, 2.0, 3.5}) {
      for (double frac : {0.0, 0.3, 0.8}) {
        const double x = frac * (1.0 - z) * (1.0 - z);
        const double a = letac_sum(z, c, x, LetacMethod::Direct).value;
        const double b = letac_sum(z, c, x, LetacMethod::Closed).value;
        letac_worst = std::max(letac_worst, rel_diff(a, b));
        ++letac_points;
      }
    }
  }
  rep.criteria.push_back(make("letac", "companion sum, direct vs closed <= 1e-9",
                              letac_worst <= 1e-9,
                              Json{{"points", letac_points},
                                   {"max_rel_deviation", letac_worst}}));
  return rep;
}

SuiteReport theorem2(const VerifyOptions&) {
  struct Case {
    const char* label;
    double eta, c, x;
    bool convergent;
    VerdictReason reason;
  };
  const double r2m1 = std::sqrt(2.0) - 1.0;
  const Case cases[] = {
      {"x>0 eta>sqrt(x)", 0.8, 1.0, 0.5, true, VerdictReason::Interior},
      {"x>0 eta<sqrt(x)", 0.5, 1.0, 0.5, false, VerdictReason::DivergentPositiveX},
      {"x>0 eta=sqrt(x) c<3/2", 0.5, 1.0, 0.25, false, VerdictReason::BoundaryNeedsLargeC},
      {"x>0 eta=sqrt(x) c=3/2", 0.5, 1.5, 0.25, false, VerdictReason::BoundaryNeedsLargeC},
      {"x>0 eta=sqrt(x) c>3/2", 0.5, 2.0, 0.25, true, VerdictReason::BoundaryNeedsLargeC},
      {"x<0 eta>bound", 0.5, 1.0, -0.5, true, VerdictReason::Interior},
      {"x<0 eta<bound", 0.2, 1.0, -0.5, false, VerdictReason::DivergentNegativeX},
      {"x<0 eta=bound c<3/2", r2m1, 1.0, -1.0, false, VerdictReason::BoundaryNeedsLargeC},
      {"x<0 eta=bound c>3/2", r2m1, 2.0, -1.0, true, VerdictReason::BoundaryNeedsLargeC},
      {"x=1 c>3/2", 2.0, 2.0, 1.0, true, VerdictReason::Interior},
      {"x=1 c<=3/2", 2.0, 1.0, 1.0, false, VerdictReason::DivergentAtOne},
      {"x=0", 0.1, 0.7, 0.0, true, VerdictReason::Interior},
  };
  SuiteReport rep;
  Json rows = Json::array();
  int correct = 0;
  for (const Case& k : cases) {
    const ConvergenceVerdict v = convergence_check(SumParams::make(k.eta, k.c, k.x));
    const bool ok = v.convergent == k.convergent && v.reason == k.reason;
    correct += ok ? 1 : 0;
    rows.push_back(Json{{"case", k.label}, {"eta", k.eta}, {"c", k.c}, {"x", k.x},
                        {"convergent", v.convergent}, {"reason", to_string(v.reason)},
                        {"expected_convergent", k.convergent}, {"ok", ok}});
  }
  rep.criteria.push_back(make("classification", "12 boundary cases classified exactly",
                              correct == 12, Json{{"correct", correct}, {"cases", rows}}));

  const std::vector<double> partial = sum_partial_sums(SumParams::make(0.5, 1.0, 0.5), 501);
  std::int64_t first = -1;
  for (std::size_t k = 0; k < partial.size(); ++k) {
    if (std::fabs(partial[k]) > 1e6) {
      first = static_cast<std::int64_t>(k);
      break;
    }
  }
  rep.criteria.push_back(make(
      "divergence-witness", "partial sums at (0.5, 1, 0.5) exceed 1e6 by k = 500",
      first >= 0 && first <= 500,
      Json{{"first_k_above_1e6", first}, {"partial_sum_at_500", partial[500]}}));

  // Convergent interior cases: the sum must actually settle on the closed form.
  double worst = 0.0;
  for (const Case& k : cases) {
    if (!k.convergent || k.reason != VerdictReason::Interior || k.x == 1.0) continue;
    const SumParams p = SumParams::make(k.eta, k.c, k.x);
    worst = std::max(worst, rel_diff(sum_direct(p).value, sum_closed(p).value));
  }
  rep.criteria.push_back(make("interior-values", "convergent interior cases agree <= 1e-9",
                              worst <= 1e-9, Json{{"max_rel_deviation", worst}}));
  return rep;
}

// The closed forms exactly as printed (not rationalized).
double printed_half_one(int c, double chi) {
  const double s = std::sqrt(1.0 - chi);
  switch (c) {
    case 1: return 1.0 / s;
    case 2: return 2.0 / chi * (1.0 - s);
    case 3: return 4.0 / (3.0 * chi * chi) * (-2.0 + 3.0 * chi + 2.0 * s * s * s);
    default:
      return 2.0 / (5.0 * chi * chi * chi) *
             (8.0 - 20.0 * chi + 15.0 * chi * chi - 8.0 * s * s * s * s * s);
  }
}

double printed_sum(int c, double eta, double x) {
  const double R = std::sqrt((1.0 - x) * (eta * eta - x));
  switch (c) {
    case 1: return (1.0 + eta) / R;
    case 2: return 2.0 * (eta + x) / ((1.0 + eta) * x) * (1.0 - R / (eta + x));
    default: {
      const double u = 1.0 + eta;
      return 4.0 * (eta + x) / (3.0 * u * u * u * x * x) *
             (3.0 * x * u * u - 2.0 * (eta + x) * (eta + x) + 2.0 * R * R * R / (eta + x));
    }
  }
}

SuiteReport closed_forms(const VerifyOptions&) {
  SuiteReport rep;
  {
    double worst = 0.0;
    double worst_printed = 0.0;
    int n = 0;
    for (int c = 1; c <= 4; ++c) {
      for (int i = 0; i < 80; ++i) {
        const double chi = -5.0 + 5.95 * (i + 0.5) / 80.0;
        const double ref = special::hyp2f1(0.5, 1.0, c, chi).value;
        worst = std::max(worst, rel_diff(special::hyp2f1_half_one(c, chi).value, ref));
        if (std::fabs(chi) >= 0.25) {
          worst_printed = std::max(worst_printed, rel_diff(printed_half_one(c, chi), ref));
        }
        ++n;
      }
    }
    rep.criteria.push_back(make(
        "2f1-elementary", "2F1(1/2,1;c;chi), c = 1..4, chi in (-5, 0.95) vs series <= 1e-11",
        worst <= 1e-11 && worst_printed <= 1e-11,
        Json{{"points", n}, {"max_rel_deviation", worst},
             {"max_rel_deviation_printed_form", worst_printed},
             {"printed_form_range", "|chi| >= 0.25"}}));
  }
  {
    double worst = 0.0;
    double worst_printed = 0.0;
    int n = 0;
    for (int c = 1; c <= 3; ++c) {
      for (double x : {-1.0, -0.75, -0.5, -0.25, 0.1, 0.25, 0.5, 0.75, 0.9}) {
        const double b = convergence_bound(x);
        for (double eta : {b + 0.1, b + 0.4, 1.0, 2.0, 3.5}) {
          if (!(eta > b + 0.05)) continue;
          const SumParams p = SumParams::make(eta, c, x);
          const double ref = sum_direct(p).value;
          worst = std::max(worst, rel_diff(sum_special(p).value, ref));
          if (std::fabs(x) >= 0.25 && std::fabs(eta + x) >= 0.1) {
            worst_printed = std::max(worst_printed, rel_diff(printed_sum(c, eta, x), ref));
          }
          ++n;
        }
      }
    }
    double worst_eta1 = 0.0;
    for (double x : {-1.0, -0.5, 0.0, 0.5, 0.9}) {
      worst_eta1 = std::max(worst_eta1, rel_diff(sum_direct(SumParams::make(1.0, 1.0, x)).value,
                                                 2.0 / (1.0 - x)));
      worst_eta1 = std::max(worst_eta1, rel_diff(sum_direct(SumParams::make(1.0, 3.0, x)).value,
                                                 2.0 - 2.0 * x / 3.0));
    }
    rep.criteria.push_back(make(
        "sum-elementary", "S(eta,c;x), c = 1,2,3 on an (eta,x) grid vs direct sum <= 1e-11",
        worst <= 1e-11 && worst_printed <= 1e-11 && worst_eta1 <= 1e-11,
        Json{{"points", n}, {"max_rel_deviation", worst},
             {"max_rel_deviation_printed_form", worst_printed},
             {"max_rel_deviation_eta_1", worst_eta1}}));
  }
  {
    Json rows = Json::array();
    double worst = 0.0;
    auto record = [&](const char* which, double eta, double c, double x, double got,
                      double want) {
      const double e = rel_diff(got, want);
      worst = std::max(worst, e);
      rows.push_back(Json{{"value", which}, {"eta", eta}, {"c", c}, {"x", x},
                          {"computed", got}, {"expected", want}, {"rel_error", e}});
    };
    for (double eta : {0.5, 1.0, 2.0}) {
      for (double c : {0.7, 2.5}) {
        record("x=0", eta, c, 0.0, sum_direct(SumParams::make(eta, c, 0.0)).value,
               (1.0 + eta) / eta);
      }
    }
    for (double c : {2.0, 3.5}) {
      record("x=1", 1.0, c, 1.0, sum_direct(SumParams::make(1.0, c, 1.0)).value,
             (2.0 * c - 2.0) / (2.0 * c - 3.0));
    }
    for (double eta : {0.25, 0.5, 0.8}) {
      for (double c : {0.7, 1.75, 2.0, 3.7}) {
        record("x=-eta", eta, c, -eta, sum_direct(SumParams::make(eta, c, -eta)).value,
               special::gamma(c) * special::rgamma(c - 0.5) * std::sqrt(std::numbers::pi / eta));
      }
    }
    // x = eta^2: the terms decay like k^(1/2-c); the extrapolated sum of the
    // normalized class q_l equals K eta S with K = (c-3/2)/(c-1).
    for (double eta : {0.5, 0.7}) {
      for (double c : {1.75, 2.5, 4.0}) {
        const auto law = branching::GeneralProgenyLaw::make(c, eta * eta);
        const double total = branching::general_progeny_total(law).value;
        record("x=eta^2", eta, c, eta * eta, total / law.normalization(),
               (2.0 * c - 2.0) / ((2.0 * c - 3.0) * eta));
      }
    }
    rep.criteria.push_back(make("boundary-values",
                                "values at x = 0, 1, -eta, eta^2 <= 1e-10",
                                worst <= 1e-10,
                                Json{{"max_rel_deviation", worst}, {"cases", rows}}));
  }
  return rep;
}

SuiteReport corollary1(const VerifyOptions&) {
  SuiteReport rep;
  Json rows = Json::array();
  double worst = 0.0;
  for (double Q : {0.1, 0.5, 0.9}) {
    const auto n = branching::progeny_normalization(branching::ProgenyHalfLaw::from_Q(Q), 2000);
    const double dev = std::fabs(n.partial_sum + n.tail_bound - 1.0);
    worst = std::max(worst, dev);
    rows.push_back(Json{{"Q", Q}, {"partial_sum", n.partial_sum},
                        {"tail_bound", n.tail_bound}, {"abs_deviation", dev}});
  }
  rep.criteria.push_back(make("progeny-sum", "|sum_{l<=2000} p_l + tail - 1| <= 1e-8",
                              worst <= 1e-8,
                              Json{{"max_abs_deviation", worst}, {"cases", rows}}));

  Json rows2 = Json::array();
  double worst2 = 0.0;
  for (double x : {-1.0, -0.5, 0.0, 0.5, 0.99}) {
    const EvalResult r = normalization_identity(x);
    const double dev = std::fabs(r.value - 1.0);
    worst2 = std::max(worst2, dev);
    rows2.push_back(Json{{"x", x}, {"value", r.value}, {"terms", r.terms_used}});
  }
  rep.criteria.push_back(make("normalization-identity", "identity value 1 +- 1e-10",
                              worst2 <= 1e-10,
                              Json{{"max_abs_deviation", worst2}, {"cases", rows2}}));
  return rep;
}

SuiteReport asymptotics(const VerifyOptions&) {
  SuiteReport rep;
  const std::int64_t ks[] = {50, 100, 200, 400};
  struct Pt {
    double c, x;
  };
  std::vector<Pt> pts;
  for (double c : {1.5, 2.0, 3.0}) {
    for (double x : {0.25, 0.64}) pts.push_back({c, x});
  }
  for (double c : {2.0, 3.0}) {
    for (double x : {-0.5, -1.0}) pts.push_back({c, x});
  }

  Json rows = Json::array();
  bool err_ok = true;
  bool slope_ok = true;
  bool sign_ok = true;
  for (const Pt& pt : pts) {
    const bool oscillating = pt.x < 0.0;
    const double phi = oscillating ? std::atan(std::sqrt(-pt.x)) : 0.0;
    const std::int64_t period =
        oscillating ? static_cast<std::int64_t>(std::ceil(2.0 * std::numbers::pi / phi)) : 1;
    const auto exact = family_logs(pt.c, pt.x, 400 + period);

    // Pointwise relative error.
    auto pointwise = [&](std::int64_t k) {
      const special::AsymptoticEval a = special::hyp2f1_large_k(k, pt.c, pt.x);
      const special::SignedLog& e = exact[static_cast<std::size_t>(k)];
      if (a.log_approx.sign == 0) return 1.0;
      const double ratio = std::exp(a.log_approx.log_abs - e.log_abs);
      return std::fabs((a.log_approx.sign == e.sign ? ratio : -ratio) - 1.0);
    };
    // Error against the envelope, worst over one period starting at k.
    auto windowed = [&](std::int64_t k0) {
      double worst = 0.0;
      for (std::int64_t k = k0; k < k0 + period; ++k) {
        const special::AsymptoticEval a = special::hyp2f1_large_k(k, pt.c, pt.x);
        const special::SignedLog& e = exact[static_cast<std::size_t>(k)];
        const double log_env = std::log(a.envelope);
        const double ex = e.sign * std::exp(e.log_abs - log_env);
        const double ap = a.log_approx.sign * std::exp(a.log_approx.log_abs - log_env);
        worst = std::max(worst, std::fabs(ex - ap));
      }
      return worst;
    };

    std::vector<double> lk, le;
    Json errs = Json::array();
    double max_err = 0.0;
    for (std::int64_t k : ks) {
      const double e = oscillating ? windowed(k) : pointwise(k);
      errs.push_back(e);
      max_err = std::max(max_err, e);
      lk.push_back(std::log(static_cast<double>(k)));
      le.push_back(std::log(std::max(e, 1e-300)));
    }
    const double err200 = pointwise(200);
    // At c = 3/2 the leading term is exact on the x > 0 branch; the error is
    // rounding and has no slope to speak of.
    const bool at_floor = max_err <= 1e-12;
    const double s = at_floor ? 0.0 : slope(lk, le);
    const bool this_slope_ok = at_floor || s <= -0.8;

    int sign_checked = 0;
    int sign_mismatch = 0;
    if (oscillating) {
      for (std::int64_t k = ks[0]; k <= 400 + period; ++k) {
        const special::AsymptoticEval a = special::hyp2f1_large_k(k, pt.c, pt.x);
        if (std::fabs(std::sin(a.Phi_k)) <= 0.2) continue;
        ++sign_checked;
        if (a.log_approx.sign != exact[static_cast<std::size_t>(k)].sign) ++sign_mismatch;
      }
    }
    err_ok = err_ok && err200 <= 0.05;
    slope_ok = slope_ok && this_slope_ok;
    sign_ok = sign_ok && sign_mismatch == 0;
    rows.push_back(Json{{"c", pt.c}, {"x", pt.x}, {"rel_error_k200", err200},
                        {"errors", errs},
                        {"error_metric", oscillating ? "envelope, worst over one period"
                                                     : "pointwise relative"},
                        {"slope", at_floor ? Json(nullptr) : Json(s)},
                        {"at_rounding_floor", at_floor},
                        {"sign_checked", sign_checked}, {"sign_mismatches", sign_mismatch}});
  }
  rep.criteria.push_back(make("error-k200", "relative error at k = 200 <= 5%", err_ok,
                              Json{{"cases", rows}}));
  rep.criteria.push_back(make("error-slope", "log-log error slope over k = 50..400 <= -0.8",
                              slope_ok, Json::object()));
  rep.criteria.push_back(make("sign-pattern", "x < 0 signs agree where |sin Phi| > 0.2",
                              sign_ok, Json::object()));
  return rep;
}

SuiteReport triple_route(const VerifyOptions&) {
  SuiteReport rep;
  const auto law = branching::ProgenyHalfLaw::from_lambda(0.6);
  const std::vector<double> coef = branching::progeny_pgf_coefficients(law, 15);
  Json rows = Json::array();
  double worst = 0.0;
  for (int ell = 1; ell <= 15; ++ell) {
    const double a = branching::progeny_pmf(law, ell);
    const double b = coef[static_cast<std::size_t>(ell - 1)];
    const double c = branching::progeny_pmf_bessel_oracle(law, ell).value;
    const double e = std::max({rel_diff(a, b), rel_diff(a, c), rel_diff(b, c)});
    worst = std::max(worst, e);
    rows.push_back(Json{{"l", ell}, {"hypergeometric", a}, {"series", b}, {"bessel", c},
                        {"max_pairwise_rel", e}});
  }
  rep.criteria.push_back(make("pairwise", "three routes for p_l, l <= 15, pairwise <= 1e-7",
                              worst <= 1e-7,
                              Json{{"lambda", 0.6}, {"max_pairwise_rel", worst},
                                   {"rows", rows}}));
  return rep;
}

SuiteReport functional_eq(const VerifyOptions&) {
  SuiteReport rep;
  const double grid[] = {0.2, 0.35, 0.5, 0.65, 0.8};
  const double zs[] = {0.1, 0.325, 0.55, 0.775, 1.0};
  double worst = 0.0;
  double worst_root = 0.0;
  bool monotone = true;
  for (double alpha : grid) {
    for (double lambda : grid) {
      const auto d = branching::ScaledSibuya::make(alpha, lambda);
      double prev = 0.0;
      for (double z : zs) {
        worst = std::max(worst, branching::functional_equation_residual(d, z));
        const double h = branching::h_alpha_pgf(d, z).value;
        monotone = monotone && h > prev;
        prev = h;
        const double inv = 1.0 / (1.0 - alpha);
        const double v = (1.0 - z) * std::exp(-inv * std::log(lambda * z));
        worst_root = std::max(worst_root, branching::DualRoot::solve(v, alpha).residual());
      }
    }
  }
  rep.criteria.push_back(make(
      "residual", "|Q H - z P(Q H)| <= 1e-10 on the 5x5x5 grid", worst <= 1e-10,
      Json{{"points", 125}, {"max_residual", worst}, {"max_root_residual", worst_root},
           {"monotone_in_z", monotone}}));

  double worst_half = 0.0;
  for (double lambda : grid) {
    const auto d = branching::ScaledSibuya::make(0.5, lambda);
    const auto law = branching::ProgenyHalfLaw::from_lambda(lambda);
    for (double z : zs) {
      worst_half = std::max(worst_half,
                            std::fabs(branching::h_alpha_pgf(d, z).value -
                                      branching::progeny_pgf_elementary(law, z)));
    }
  }
  rep.criteria.push_back(make("alpha-half", "root route at alpha = 1/2 vs elementary <= 1e-10",
                              worst_half <= 1e-10, Json{{"max_abs_deviation", worst_half}}));
  rep.criteria.push_back(make("monotone", "H_alpha strictly increasing on the z grid",
                              monotone, Json::object()));
  return rep;
}

Json counts_json(const std::map<std::int64_t, std::int64_t>& counts, int upto) {
  Json j = Json::object();
  for (const auto& [ell, n] : counts) {
    if (ell > upto) break;
    j[std::to_string(ell)] = n;
  }
  return j;
}

SuiteReport montecarlo(const VerifyOptions& opts) {
  SuiteReport rep;
  constexpr int kBins = 40;
  const auto d = branching::ScaledSibuya::make(0.5, 0.6);
  const auto law = branching::ProgenyHalfLaw::from_lambda(0.6);
  mc::SimConfig cfg;
  cfg.seed = opts.seed;
  cfg.replicates = opts.mc_replicates;
  cfg.workers = opts.mc_workers;

  const auto t0 = Clock::now();
  const mc::SimResult sim = mc::simulate_total_progeny(d, cfg);
  const double elapsed = seconds_since(t0);
  const mc::GofReport gof = mc::gof_compare(sim, law, kBins);
  double max_z = 0.0;
  for (const auto& [ell, z] : gof.z_scores) {
    if (ell <= 20) max_z = std::max(max_z, std::fabs(z));
  }
  rep.criteria.push_back(make(
      "chi-square", "chi-square below the 0.999 quantile", gof.passed,
      Json{{"replicates", cfg.replicates}, {"chi_square", gof.chi_square}, {"dof", gof.dof},
           {"quantile_999", gof.quantile_999}, {"censored", gof.censored},
           {"counts_l_le_10", counts_json(sim.counts, 10)}}));
  rep.criteria.push_back(make("z-scores", "per-cell |z| <= 4 for l <= 20", max_z <= 4.0,
                              Json{{"max_abs_z", max_z}}));

  mc::SimConfig other = cfg;
  other.workers = cfg.workers == 8 ? 1 : 8;
  const mc::SimResult sim2 = mc::simulate_total_progeny(d, other);
  const bool same = sim2.counts == sim.counts && sim2.censored == sim.censored;
  rep.criteria.push_back(make("worker-invariance", "identical counts for 1 and 8 workers",
                              same,
                              Json{{"workers", Json::array({cfg.workers, other.workers})}}));
  rep.criteria.push_back(make("runtime", "main run within 300 s", elapsed <= 300.0,
                              Json{{"seconds", elapsed}}));

  // Mean against the numerically differentiated PGF at 1.
  const double h = 1e-4;
  auto H = [&](double z) { return branching::progeny_pgf_elementary(law, z); };
  const double mean = (H(1.0 + h) - H(1.0 - h)) / (2.0 * h);
  const double second = (H(1.0 + h) - 2.0 * H(1.0) + H(1.0 - h)) / (h * h);
  const double var = second + mean - mean * mean;
  const double se = std::sqrt(var / static_cast<double>(cfg.replicates));
  rep.criteria.push_back(make(
      "mean", "empirical mean within 5 standard errors of H'(1)",
      std::fabs(sim.mean_uncensored - mean) <= 5.0 * se,
      Json{{"empirical_mean", sim.mean_uncensored}, {"pgf_derivative", mean},
           {"standard_error", se}}));

  Json others = Json::array();
  bool others_ok = true;
  for (double lambda : {0.4, 0.8}) {
    const mc::SimResult s = mc::simulate_total_progeny(branching::ScaledSibuya::make(0.5, lambda), cfg);
    const mc::GofReport g = mc::gof_compare(s, branching::ProgenyHalfLaw::from_lambda(lambda), kBins);
    double mz = 0.0;
    for (const auto& [ell, z] : g.z_scores) {
      if (ell <= 20) mz = std::max(mz, std::fabs(z));
    }
    others_ok = others_ok && mz <= 4.0;
    others.push_back(Json{{"lambda", lambda}, {"max_abs_z", mz}, {"chi_square", g.chi_square},
                          {"quantile_999", g.quantile_999}});
  }
  rep.criteria.push_back(make("other-lambda", "|z| <= 4 for l <= 20 at lambda = 0.4, 0.8",
                              others_ok, Json{{"cases", others}}));

  const mc::SimResult direct =
      mc::sample_progeny_direct(branching::progeny_pmf_table(law, cfg.progeny_cap), cfg);
  const mc::GofReport gd = mc::gof_compare(direct, law, kBins);
  rep.criteria.push_back(make("direct-inversion", "counts drawn from the pmf itself pass",
                              gd.passed,
                              Json{{"chi_square", gd.chi_square},
                                   {"quantile_999", gd.quantile_999}}));
  const mc::GofReport wrong =
      mc::gof_compare(sim, branching::ProgenyHalfLaw::from_lambda(0.7), kBins);
  rep.criteria.push_back(make("power", "lambda = 0.7 cells reject lambda = 0.6 samples",
                              !wrong.passed,
                              Json{{"chi_square", wrong.chi_square},
                                   {"quantile_999", wrong.quantile_999}}));
  return rep;
}

SuiteReport general_class(const VerifyOptions&) {
  SuiteReport rep;
  Json rows = Json::array();
  double worst = 0.0;
  bool slopes_ok = true;
  for (double c : {1.75, 2.5, 4.0}) {
    for (double x : {0.25, 0.49}) {
      const auto law = branching::GeneralProgenyLaw::make(c, x);
      const EvalResult total = branching::general_progeny_total(law);
      const double dev = std::fabs(total.value - 1.0);
      worst = std::max(worst, dev);

      std::vector<double> ll, la, le;
      for (int i = 0; i <= 20; ++i) {
        const auto ell = static_cast<std::int64_t>(std::llround(std::pow(10.0, 3.0 + i / 20.0)));
        ll.push_back(std::log(static_cast<double>(ell)));
        la.push_back(std::log(branching::general_progeny_pmf_asymptotic(law, ell)));
      }
      const std::vector<double> table = branching::general_progeny_pmf_table(law, 10000);
      for (double v : ll) {
        const auto ell = static_cast<std::size_t>(std::llround(std::exp(v)));
        le.push_back(std::log(table[ell - 1]));
      }
      const double s_asym = slope(ll, la);
      const double s_exact = slope(ll, le);
      const bool ok = std::fabs(s_asym - (0.5 - c)) <= 0.1 && std::fabs(s_exact - (0.5 - c)) <= 0.1;
      slopes_ok = slopes_ok && ok;
      rows.push_back(Json{{"c", c}, {"x", x}, {"total", total.value},
                          {"total_error_estimate", total.abs_error_estimate},
                          {"slope_asymptotic", s_asym}, {"slope_exact", s_exact},
                          {"expected_slope", 0.5 - c}});
    }
  }
  rep.criteria.push_back(make("normalization", "sum q_l = 1 +- 1e-8", worst <= 1e-8,
                              Json{{"max_abs_deviation", worst}, {"cases", rows}}));
  rep.criteria.push_back(make("tail-slope", "slope over l in [1e3, 1e4] = 1/2 - c +- 0.1",
                              slopes_ok, Json::object()));

  const auto half = branching::ProgenyHalfLaw::from_Q(0.64);
  const auto c2 = branching::GeneralProgenyLaw::make(2.0, 0.64);
  double worst_tilt = 0.0;
  for (int ell = 1; ell <= 10; ++ell) {
    worst_tilt = std::max(worst_tilt, rel_diff(branching::progeny_tilted_pmf(half, ell),
                                               branching::general_progeny_pmf(c2, ell)));
  }
  rep.criteria.push_back(make("tilted-c2", "tilted alpha = 1/2 law equals the c = 2 member",
                              worst_tilt <= 1e-12, Json{{"max_rel_deviation", worst_tilt}}));
  return rep;
}

using SuiteFn = std::function<SuiteReport(const VerifyOptions&)>;

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> r = {
      {"theorem1", theorem1},         {"theorem2", theorem2},
      {"closed-forms", closed_forms}, {"corollary1", corollary1},
      {"asymptotics", asymptotics},   {"triple-route", triple_route},
      {"functional-eq", functional_eq}, {"montecarlo", montecarlo},
      {"general-class", general_class},
  };
  return r;
}

}  // namespace

Json SuiteReport::to_json() const {
  Json crit = Json::array();
  for (const Criterion& c : criteria) {
    crit.push_back(Json{{"id", c.id}, {"description", c.description}, {"passed", c.passed},
                        {"metrics", c.metrics}});
  }
  return Json{{"suite", suite}, {"passed", passed}, {"seconds", seconds}, {"criteria", crit}};
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& [name, fn] : registry()) n.push_back(name);
    return n;
  }();
  return names;
}

SuiteReport run_suite(std::string_view name, const VerifyOptions& opts) {
  for (const auto& [n, fn] : registry()) {
    if (n != name) continue;
    const auto t0 = Clock::now();
    SuiteReport rep = fn(opts);
    rep.suite = n;
    rep.seconds = seconds_since(t0);
    rep.passed = std::all_of(rep.criteria.begin(), rep.criteria.end(),
                             [](const Criterion& c) { return c.passed; });
    return rep;
  }
  fail(ErrorKind::Domain, "unknown suite '" + std::string(name) + "'");
}

}  // namespace hypersum::verify
