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

#include "hypersum/hypersum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "hypersum/error.hpp"

namespace hypersum {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kBoundaryRelTol = 1e-14;

// Compensated running sum.
class NeumaierSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::fabs(sum_) >= std::fabs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

bool has_elementary_form(double c) { return c == 1.0 || c == 2.0 || c == 3.0; }

std::string describe(const SumParams& p) {
  return "(eta=" + std::to_string(p.eta) + ", c=" + std::to_string(p.c) +
         ", x=" + std::to_string(p.x) + ")";
}

struct FamilySumSpec {
  double c;
  double x;
  double weight;
  double ratio;       // asymptotic ratio of consecutive terms
  bool on_boundary;   // ratio == 1 with power-law decay
  bool allow_divergent;
};

// sum_k weight^k 2F1(k/2+1/2, k/2+1; c; x) by the three-term recurrence.
EvalResult sum_family(const FamilySumSpec& s, const DirectOptions& opts) {
  special::ShiftedFamily family(s.c, s.x, s.weight);
  NeumaierSum sum;
  double envelope = 0.0;   // running max of |T_k| decayed by the term ratio
  double max_partial = 0.0;
  double tail = std::numeric_limits<double>::infinity();
  const bool geometric = !s.on_boundary && s.ratio < 1.0;
  int quiet = 0;
  std::int64_t k = 0;
  for (; k < opts.max_terms; ++k) {
    const double term = family.value();
    sum.add(term);
    const double partial = sum.value();
    if (!std::isfinite(partial)) {
      fail(ErrorKind::Overflow, "direct sum overflowed at k = " + std::to_string(k));
    }
    max_partial = std::max(max_partial, std::fabs(partial));
    // On the boundary the envelope decays like k^(1/2-c) instead.
    const double decay =
        s.on_boundary && k > 0
            ? std::pow(static_cast<double>(k) / static_cast<double>(k + 1), s.c - 0.5)
            : std::min(s.ratio, 1.0);
    envelope = std::max(std::fabs(term), envelope * decay);
    if (geometric) {
      tail = envelope * s.ratio / (1.0 - s.ratio);
      quiet = tail <= opts.tol * std::max(1.0, std::fabs(partial)) ? quiet + 1 : 0;
      if (quiet >= 3) {
        ++k;
        break;
      }
    }
    family.advance();
  }

  EvalResult out;
  out.value = sum.value();
  out.terms_used = k;
  out.method = Method::Series;
  const double rounding =
      kEps * (16.0 + std::sqrt(static_cast<double>(k))) * std::max(max_partial, 1.0);
  if (quiet >= 3) {
    out.abs_error_estimate = tail + rounding;
    return out;
  }
  if (s.on_boundary && s.c > 1.5) {
    // terms ~ C k^(1/2-c); sum_{k>K} C k^(1/2-c) <= C K^(3/2-c)/(c-3/2)
    const double K = static_cast<double>(k);
    const double C = envelope / std::pow(K, 0.5 - s.c);
    out.abs_error_estimate = C * std::pow(K, 1.5 - s.c) / (s.c - 1.5) + rounding;
    return out;
  }
  if (s.allow_divergent) {
    out.abs_error_estimate = std::numeric_limits<double>::infinity();
    return out;
  }
  fail(ErrorKind::SlowConvergence,
       "direct sum did not reach tolerance within " + std::to_string(opts.max_terms) +
           " terms");
}

}  // namespace

SumParams SumParams::make(double eta, double c, double x) {
  if (!(eta > 0.0) || !std::isfinite(eta)) {
    fail(ErrorKind::Domain, "eta must be positive and finite");
  }
  if (!(c > 0.0) || !std::isfinite(c)) {
    fail(ErrorKind::Domain, "c must be positive and finite");
  }
  if (!(x >= -1.0 && x <= 1.0)) fail(ErrorKind::Domain, "x must lie in [-1, 1]");
  return {eta, c, x};
}

ClosedFormArgument ClosedFormArgument::from(const SumParams& p) {
  ClosedFormArgument a;
  a.X = (p.x + p.eta) / (1.0 + p.eta);
  if (a.X == 0.0) {
    a.xi = p.x < 0.0 ? -std::numeric_limits<double>::infinity() : 0.0;
  } else {
    a.xi = p.x / (a.X * a.X);
  }
  if (p.eta != 1.0) {
    const double r = (p.eta + 1.0) / (p.eta - 1.0);
    a.xi_star = r * r;
  }
  return a;
}

std::string_view to_string(VerdictReason reason) {
  switch (reason) {
    case VerdictReason::Interior: return "Interior";
    case VerdictReason::BoundaryNeedsLargeC: return "BoundaryNeedsLargeC";
    case VerdictReason::DivergentPositiveX: return "DivergentPositiveX";
    case VerdictReason::DivergentNegativeX: return "DivergentNegativeX";
    case VerdictReason::DivergentAtOne: return "DivergentAtOne";
  }
  return "Unknown";
}

ConvergenceVerdict convergence_check(const SumParams& p) {
  ConvergenceVerdict v;
  if (p.x == 0.0) {
    v.convergent = true;
    return v;
  }
  const bool large_c = p.c > 1.5;
  const double bound =
      p.x > 0.0 ? std::sqrt(p.x) : std::sqrt(1.0 + std::fabs(p.x)) - 1.0;
  v.on_boundary = std::fabs(p.eta - bound) <= kBoundaryRelTol * std::max(1.0, bound);

  if (p.x == 1.0) {
    // Only the k = 0 term, 2F1(1/2,1;c;1), survives.
    v.convergent = large_c;
    v.reason = !large_c        ? VerdictReason::DivergentAtOne
               : v.on_boundary ? VerdictReason::BoundaryNeedsLargeC
                               : VerdictReason::Interior;
    return v;
  }
  if (v.on_boundary) {
    v.convergent = large_c;
    v.reason = VerdictReason::BoundaryNeedsLargeC;
  } else if (p.eta > bound) {
    v.convergent = true;
    v.reason = VerdictReason::Interior;
  } else {
    v.convergent = false;
    v.reason = p.x > 0.0 ? VerdictReason::DivergentPositiveX
                         : VerdictReason::DivergentNegativeX;
  }
  return v;
}

double late_term_ratio(const SumParams& p) {
  if (p.x > 0.0) return (1.0 + std::sqrt(p.x)) / (1.0 + p.eta);
  return std::sqrt(1.0 + std::fabs(p.x)) / (1.0 + p.eta);
}

EvalResult sum_direct(const SumParams& p, const DirectOptions& opts) {
  const ConvergenceVerdict verdict = convergence_check(p);
  if (!verdict.convergent && !opts.allow_divergent) {
    fail(ErrorKind::NotConvergent, "sum diverges at " + describe(p) + ": " +
                                       std::string(to_string(verdict.reason)));
  }
  if (p.x == 1.0) {
    if (!(p.c > 1.5)) {
      fail(ErrorKind::Domain, "2F1(1/2,1;c;1) is infinite for c <= 3/2");
    }
    const double v = special::gauss_point(0.5, 1.0, p.c);
    return {v, 4.0 * kEps * v, 1, Method::Series};
  }
  return sum_family({p.c, p.x, (1.0 - p.x) / (1.0 + p.eta), late_term_ratio(p),
                     verdict.on_boundary, opts.allow_divergent},
                    opts);
}

std::vector<double> sum_partial_sums(const SumParams& p, std::int64_t n) {
  std::vector<double> out;
  if (n <= 0) return out;
  out.reserve(static_cast<std::size_t>(n));
  if (p.x == 1.0) {
    const double v = special::hyp2f1_half_one(p.c, 1.0).value;
    out.assign(static_cast<std::size_t>(n), v);
    return out;
  }
  special::ShiftedFamily family(p.c, p.x, (1.0 - p.x) / (1.0 + p.eta));
  NeumaierSum sum;
  for (std::int64_t k = 0; k < n; ++k) {
    sum.add(family.value());
    out.push_back(sum.value());
    family.advance();
  }
  return out;
}

EvalResult sum_closed(const SumParams& p) {
  const ConvergenceVerdict verdict = convergence_check(p);
  if (!verdict.convergent) {
    fail(ErrorKind::NotConvergent, "sum diverges at " + describe(p) + ": " +
                                       std::string(to_string(verdict.reason)));
  }
  const ClosedFormArgument arg = ClosedFormArgument::from(p);
  if (arg.X == 0.0) {
    // x = -eta: limit Gamma(c)/Gamma(c-1/2) sqrt(pi/eta)
    const double v = special::gamma(p.c) * special::rgamma(p.c - 0.5) *
                     std::sqrt(std::numbers::pi / p.eta);
    return {v, 16.0 * kEps * std::fabs(v), 0, Method::GaussPoint};
  }
  if (arg.X < 0.0) {
    // x < -eta.  Continue through X = 0: in the expansion of 2F1 about
    // infinity the (-xi)^(-1/2) = |X|/sqrt|x| component is odd in X, the
    // (-xi)^(-1) one even.  With y = X^2/x in (-1, 0),
    //   S = sqrt(pi) Gamma(c)/Gamma(c-1/2) / sqrt|x| 2F1(1/2, 3/2-c; 1/2; y)
    //       - 2(c-1) X/|x| 2F1(1, 2-c; 3/2; y).
    const double ax = std::fabs(p.x);
    const double y = arg.X * arg.X / p.x;
    const EvalResult f1 = special::hyp2f1(0.5, 1.5 - p.c, 0.5, y);
    const EvalResult f2 = special::hyp2f1(1.0, 2.0 - p.c, 1.5, y);
    const double a = std::sqrt(std::numbers::pi) * special::gamma(p.c) *
                     special::rgamma(p.c - 0.5) / std::sqrt(ax);
    const double b = -2.0 * (p.c - 1.0) * arg.X / ax;
    const double v = a * f1.value + b * f2.value;
    EvalResult r;
    r.value = v;
    r.abs_error_estimate = std::fabs(a) * f1.abs_error_estimate +
                           std::fabs(b) * f2.abs_error_estimate +
                           8.0 * kEps * (std::fabs(a * f1.value) + std::fabs(b * f2.value));
    r.terms_used = f1.terms_used + f2.terms_used;
    r.method = Method::ClosedForm;
    r.analytic_continuation = true;
    return r;
  }
  double xi = arg.xi;
  if (verdict.on_boundary && p.x > 0.0) xi = 1.0;  // x == eta^2 up to rounding
  if (xi > 1.0) {
    fail(ErrorKind::Domain, "closed form needs x/X^2 <= 1 at " + describe(p));
  }
  const EvalResult f = special::hyp2f1_half_one(p.c, xi);
  const double v = f.value / arg.X;
  return {v, f.abs_error_estimate / arg.X + 2.0 * kEps * std::fabs(v),
          f.terms_used, f.method};
}

EvalResult sum_special(const SumParams& p) {
  if (!has_elementary_form(p.c)) {
    fail(ErrorKind::Domain, "elementary forms exist only for c in {1,2,3}");
  }
  const ConvergenceVerdict verdict = convergence_check(p);
  if (!verdict.convergent) {
    fail(ErrorKind::Domain, "elementary form outside its convergence conditions at " +
                                describe(p));
  }
  const double D = p.eta + p.x;
  const double R = std::sqrt(std::max(0.0, (1.0 - p.x) * (p.eta * p.eta - p.x)));
  const double up = 1.0 + p.eta;
  double v = 0.0;
  if (p.c == 1.0) {
    v = up / R;
  } else if (p.c == 2.0) {
    v = 2.0 * up / (D + R);
  } else {
    const double s = D + R;
    v = 4.0 * up * (D + 2.0 * R) / (3.0 * s * s);
  }
  return {v, 16.0 * kEps * std::fabs(v), 0, Method::ClosedForm};
}

EvalResult evaluate_sum(const SumParams& p, SumMethod method,
                        const DirectOptions& opts) {
  switch (method) {
    case SumMethod::Direct: return sum_direct(p, opts);
    case SumMethod::Closed: return sum_closed(p);
    case SumMethod::Special: return sum_special(p);
    case SumMethod::Auto: break;
  }
  const ClosedFormArgument arg = ClosedFormArgument::from(p);
  if (std::fabs(arg.xi - 1.0) < 1e-6 && p.c <= 1.5 + 1e-6) {
    return sum_direct(p, opts);
  }
  return sum_closed(p);
}

EvalResult letac_sum(double z, double c, double x, LetacMethod method) {
  if (!(z > 0.0 && z < 1.0)) fail(ErrorKind::Domain, "Letac sum needs 0 < z < 1");
  if (!(c > 0.0)) fail(ErrorKind::Domain, "Letac sum needs c > 0");
  const double omz = 1.0 - z;
  if (!(x >= 0.0 && x < omz * omz)) {
    fail(ErrorKind::Domain, "Letac sum needs 0 <= x < (1-z)^2");
  }
  if (method == LetacMethod::Closed) {
    const EvalResult f = special::hyp2f1_half_one(c, x / (omz * omz));
    const double pre = z / omz;
    return {pre * f.value, pre * f.abs_error_estimate + 2.0 * kEps * pre * f.value,
            f.terms_used, f.method};
  }
  // 2F1(k/2, k/2+1/2; c; x) is member k-1 of the shifted family, so
  // S_L = z * sum_j z^j F_j.
  const double ratio = z / (1.0 - std::sqrt(x));
  EvalResult r = sum_family({c, x, z, ratio, false, false}, DirectOptions{});
  r.value *= z;
  r.abs_error_estimate *= z;
  return r;
}

EvalResult normalization_identity(double x) {
  EvalResult r = sum_direct(SumParams::make(1.0, 2.0, x));
  r.value *= 0.5;
  r.abs_error_estimate *= 0.5;
  return r;
}

}  // namespace hypersum
