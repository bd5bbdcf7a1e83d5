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

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <limits>
#include <numbers>
#include <string>

#include "hypersum/error.hpp"
#include "hypersum/special_fn.hpp"

namespace hypersum::special {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kRescaleHigh = 1e200;
constexpr double kRescaleLog = 200.0 * 2.302585092994045684;  // ln(1e200)

// Beyond this x the direct series is slow and the 1-x connection is used.
constexpr double kSeriesUpper = 0.9;
// Minimal distance of c-a-b from an integer for the connection formula;
// closer than this the Gamma factors nearly cancel two poles.
constexpr double kConnectionGap = 0.01;
constexpr std::int64_t kSlowSeriesFactor = 50;

bool is_nonpositive_integer(double x) {
  return x <= 0.0 && x == std::floor(x);
}

double distance_to_integer(double s) { return std::fabs(s - std::round(s)); }

// prod Gamma(num_i) / prod Gamma(den_j) as a double.  Poles in the
// denominator give 0; a pole in the numerator is a caller bug.
double gamma_ratio(std::initializer_list<double> num,
                   std::initializer_list<double> den) {
  double log_abs = 0.0;
  int sign = 1;
  for (double d : den) {
    if (is_nonpositive_integer(d)) return 0.0;
    const SignedLog g = log_gamma_signed(d);
    log_abs -= g.log_abs;
    sign *= g.sign;
  }
  for (double n : num) {
    if (is_nonpositive_integer(n)) {
      fail(ErrorKind::Domain, "gamma_ratio: pole in numerator");
    }
    const SignedLog g = log_gamma_signed(n);
    log_abs += g.log_abs;
    sign *= g.sign;
  }
  return sign * std::exp(log_abs);
}

void check_c(double c) {
  if (is_nonpositive_integer(c)) {
    fail(ErrorKind::Domain,
         "2F1: c = " + std::to_string(c) + " is zero or a negative integer");
  }
}

EvalResult from_log(const LogEvalResult& r) {
  if (r.value.sign != 0 &&
      r.value.log_abs > std::log(std::numeric_limits<double>::max())) {
    fail(ErrorKind::Overflow, "2F1 series: value exceeds double range");
  }
  const double v = r.value.value();
  return {v, r.rel_error_estimate * std::fabs(v), r.terms_used, Method::Series};
}

}  // namespace

LogEvalResult hyp2f1_series_log(const HypParams& p, double tol,
                                std::int64_t max_terms) {
  check_c(p.c);
  if (!(std::fabs(p.x) < 1.0)) {
    fail(ErrorKind::Domain, "2F1 series needs |x| < 1, got x = " +
                                std::to_string(p.x));
  }
  if (p.x == 0.0) return {{0.0, 1}, 0.0, 1};

  const double ax = std::fabs(p.x);
  double term = 1.0;
  double sum = 1.0;
  double abs_sum = 1.0;  // largest |partial sum| seen, for the rounding level
  double log_scale = 0.0;
  double tail = 0.0;
  int quiet_run = 0;
  std::int64_t n = 0;
  for (;; ++n) {
    if (n >= max_terms) {
      fail(ErrorKind::NonConvergent,
           "2F1 series: no convergence within " + std::to_string(max_terms) +
               " terms");
    }
    const double dn = static_cast<double>(n);
    term *= (p.a + dn) * (p.b + dn) / ((p.c + dn) * (dn + 1.0)) * p.x;
    sum += term;
    abs_sum = std::max({abs_sum, std::fabs(sum), std::fabs(term)});
    if (term == 0.0) {
      tail = 0.0;
      break;  // a or b is a nonpositive integer: the series terminated
    }
    if (abs_sum > kRescaleHigh) {
      term /= kRescaleHigh;
      sum /= kRescaleHigh;
      abs_sum /= kRescaleHigh;
      log_scale += kRescaleLog;
    }
    // Successive ratios tend to |x|; once below one, max(ratio, |x|)
    // bounds every later ratio.
    const double dn1 = dn + 1.0;
    const double ratio = std::fabs((p.a + dn1) * (p.b + dn1) /
                                   ((p.c + dn1) * (dn1 + 1.0)) * p.x);
    const double bound = std::max(ratio, ax);
    if (bound < 1.0) {
      tail = std::fabs(term) * bound / (1.0 - bound);
      quiet_run = tail <= tol * std::fabs(sum) ? quiet_run + 1 : 0;
    } else {
      quiet_run = 0;
    }
    if (quiet_run >= 2) break;
  }

  LogEvalResult out;
  out.terms_used = n + 2;
  if (sum == 0.0) {
    out.value = {-std::numeric_limits<double>::infinity(), 0};
    out.rel_error_estimate = std::numeric_limits<double>::infinity();
    return out;
  }
  out.value = {std::log(std::fabs(sum)) + log_scale, sum > 0.0 ? 1 : -1};
  out.rel_error_estimate =
      (tail + 4.0 * kEps * abs_sum * std::sqrt(static_cast<double>(n + 2))) /
      std::fabs(sum);
  return out;
}

EvalResult hyp2f1_series(const HypParams& p, double tol,
                         std::int64_t max_terms) {
  return from_log(hyp2f1_series_log(p, tol, max_terms));
}

double gauss_point(double a, double b, double c) {
  if (!(c > a + b)) {
    fail(ErrorKind::Domain, "Gauss summation needs c > a + b");
  }
  if (a == 0.0 || b == 0.0) return 1.0;
  return gamma_ratio({c, c - a - b}, {c - a, c - b});
}

double hyp1f0(double a, double z) {
  if (!(z < 1.0)) fail(ErrorKind::Domain, "1F0 needs z < 1");
  return std::pow(1.0 - z, -a);
}

EvalResult hyp2f1(double a, double b, double c, double x) {
  check_c(c);
  if (std::isnan(x) || x > 1.0) {
    fail(ErrorKind::Domain, "2F1: x must not exceed 1");
  }
  if (x == 1.0) {
    if (!(c > a + b)) {
      fail(ErrorKind::Domain, "2F1 diverges at x = 1 unless c > a + b");
    }
    return {gauss_point(a, b, c), 4.0 * kEps, 0, Method::GaussPoint};
  }
  if (x < -0.5) {
    // Pfaff: F(a,b;c;x) = (1-x)^(-a) F(a, c-b; c; x/(x-1))
    const double pre = std::pow(1.0 - x, -a);
    const EvalResult inner = hyp2f1(a, c - b, c, x / (x - 1.0));
    return {pre * inner.value, std::fabs(pre) * inner.abs_error_estimate,
            inner.terms_used, Method::EulerTransform};
  }
  if (x <= kSeriesUpper) return hyp2f1_series({a, b, c, x});

  const double s = c - a - b;
  if (distance_to_integer(s) <= kConnectionGap) {
    return hyp2f1_series({a, b, c, x}, kDefaultTol,
                         kDefaultMaxTerms * kSlowSeriesFactor);
  }
  // F(a,b;c;x) = A F(a,b;a+b-c+1;1-x) + B (1-x)^s F(c-a,c-b;s+1;1-x)
  const double y = 1.0 - x;
  const double A = gamma_ratio({c, s}, {c - a, c - b});
  const double B = gamma_ratio({c, -s}, {a, b}) * std::pow(y, s);
  const EvalResult f1 = hyp2f1_series({a, b, 1.0 - s, y});
  const EvalResult f2 = hyp2f1_series({c - a, c - b, 1.0 + s, y});
  const double t1 = A * f1.value;
  const double t2 = B * f2.value;
  return {t1 + t2,
          std::fabs(A) * f1.abs_error_estimate +
              std::fabs(B) * f2.abs_error_estimate +
              8.0 * kEps * (std::fabs(t1) + std::fabs(t2)),
          f1.terms_used + f2.terms_used, Method::Series};
}

EvalResult hyp2f1_half_one(double c, double chi) {
  check_c(c);
  if (std::isnan(chi) || chi > 1.0) {
    fail(ErrorKind::Domain, "2F1(1/2,1;c;chi) needs chi <= 1");
  }
  if (chi == 1.0) {
    if (!(c > 1.5)) {
      fail(ErrorKind::Domain,
           "2F1(1/2,1;c;chi) diverges as chi -> 1 when c <= 3/2");
    }
    return {gauss_point(0.5, 1.0, c), 4.0 * kEps * gauss_point(0.5, 1.0, c), 0,
            Method::GaussPoint};
  }

  if (c == 1.0 || c == 2.0 || c == 3.0 || c == 4.0) {
    // Elementary forms in s = sqrt(1 - chi); the factors (1 - s)^m that
    // vanish at chi = 0 have been cancelled against chi^m.
    const double s = std::sqrt(1.0 - chi);
    double v = 0.0;
    if (c == 1.0) {
      v = 1.0 / s;
    } else if (c == 2.0) {
      v = 2.0 / (1.0 + s);
    } else if (c == 3.0) {
      v = 4.0 * (1.0 + 2.0 * s) / (3.0 * (1.0 + s) * (1.0 + s));
    } else {
      const double u = 1.0 + s;
      v = 2.0 * (3.0 + 9.0 * s + 8.0 * s * s) / (5.0 * u * u * u);
    }
    return {v, 8.0 * kEps * std::fabs(v), 0, Method::ClosedForm};
  }

  if (chi < 0.0) {
    // Euler: F(1/2,1;c;chi) = (1-chi)^(-1/2) F(1/2, c-1; c; z),
    // z = chi/(chi-1) in (0,1), 1 - z = 1/(1-chi) kept exact.
    const double pre = 1.0 / std::sqrt(1.0 - chi);
    const double z = chi / (chi - 1.0);
    const double omz = 1.0 / (1.0 - chi);
    EvalResult inner;
    if (z <= kSeriesUpper) {
      inner = hyp2f1_series({0.5, c - 1.0, c, z});
    } else {
      // c - a - b = 1/2 here, so the 1-z connection never degenerates.
      const double lead = std::sqrt(std::numbers::pi) *
                          gamma_ratio({c}, {c - 0.5}) * std::pow(z, 1.0 - c);
      const EvalResult f = hyp2f1_series({c - 0.5, 1.0, 1.5, omz});
      const double corr = 2.0 * (c - 1.0) * std::sqrt(omz);
      inner.value = lead - corr * f.value;
      inner.abs_error_estimate =
          std::fabs(corr) * f.abs_error_estimate +
          8.0 * kEps * (std::fabs(lead) + std::fabs(corr * f.value));
      inner.terms_used = f.terms_used;
    }
    return {pre * inner.value, pre * inner.abs_error_estimate,
            inner.terms_used, Method::EulerTransform};
  }

  if (chi <= kSeriesUpper) return hyp2f1_series({0.5, 1.0, c, chi});

  if (distance_to_integer(c - 1.5) <= kConnectionGap) {
    return hyp2f1_series({0.5, 1.0, c, chi}, kDefaultTol,
                         kDefaultMaxTerms * kSlowSeriesFactor);
  }
  // chi^(c-1) F(1/2,1;c;chi) = Gamma(c)Gamma(3/2-c)/sqrt(pi) (1-chi)^(c-3/2)
  //                           + (2c-2)/(2c-3) F(2-c, 3/2-c; 5/2-c; 1-chi)
  const double y = 1.0 - chi;
  const double singular = gamma_ratio({c, 1.5 - c}, {0.5}) * std::pow(y, c - 1.5);
  const double weight = (2.0 * c - 2.0) / (2.0 * c - 3.0);
  const EvalResult f = hyp2f1_series({2.0 - c, 1.5 - c, 2.5 - c, y});
  const double scale = std::pow(chi, 1.0 - c);
  const double regular = weight * f.value;
  return {scale * (singular + regular),
          scale * (std::fabs(weight) * f.abs_error_estimate +
                   8.0 * kEps * (std::fabs(singular) + std::fabs(regular))),
          f.terms_used, Method::Series};
}

AsymptoticEval hyp2f1_large_k(std::int64_t k, double c, double x) {
  if (k < 1) fail(ErrorKind::Domain, "large-k approximant needs k >= 1");
  if (x == 0.0 || !(x < 1.0)) {
    fail(ErrorKind::Domain, "large-k approximant needs x < 1, x != 0");
  }
  AsymptoticEval out;
  out.k = k;
  out.c = c;
  out.x = x;
  const double dk = static_cast<double>(k);
  const SignedLog gc = log_gamma_signed(c);
  const double half_log_pi = 0.5 * std::log(std::numbers::pi);

  if (x > 0.0) {
    const double log_abs = (c - 1.5) * std::numbers::ln2 + gc.log_abs -
                           half_log_pi - (0.5 * c - 0.25) * std::log(x) +
                           (0.5 - c) * std::log(dk) +
                           (-dk + c - 1.5) * std::log1p(-std::sqrt(x));
    out.log_approx = {log_abs, gc.sign};
    out.approx = out.log_approx.value();
    out.envelope = std::fabs(out.approx);
    return out;
  }

  out.w = -x;
  out.phi = std::atan(std::sqrt(out.w));
  out.Phi_k = (dk - c + 1.5) * out.phi - 0.5 * std::numbers::pi * (c - 1.5);
  const double log_env = gc.log_abs + (c - 0.5) * std::numbers::ln2 -
                         half_log_pi - (0.5 * c - 0.25) * std::log(out.w) +
                         (0.5 - c) * std::log(dk) +
                         (-0.5 * dk + 0.5 * c - 0.75) * std::log1p(out.w);
  const double s = std::sin(out.Phi_k);
  out.envelope = std::exp(log_env);
  if (s == 0.0) {
    out.log_approx = {-std::numeric_limits<double>::infinity(), 0};
    out.approx = 0.0;
    return out;
  }
  out.log_approx = {log_env + std::log(std::fabs(s)), gc.sign * (s > 0.0 ? 1 : -1)};
  out.approx = out.log_approx.value();
  return out;
}

ShiftedFamily::ShiftedFamily(double c, double x, double weight)
    : c_(c), x_(x), weight_(weight) {
  if (!(x < 1.0)) {
    fail(ErrorKind::Domain, "shifted 2F1 family needs x < 1");
  }
  cur_ = hyp2f1_half_one(c, x).value;
  next_ = weight * hyp2f1(1.0, 1.5, c, x).value;
  rescale();
}

void ShiftedFamily::advance() {
  const double dk = static_cast<double>(k_);
  const double r = (2.0 * dk + 5.0 - 2.0 * c_) / (dk + 2.0);
  const double following =
      (weight_ * r * next_ + weight_ * weight_ * (1.0 - r) * cur_) / (1.0 - x_);
  cur_ = next_;
  next_ = following;
  ++k_;
  rescale();
}

void ShiftedFamily::rescale() {
  const double m = std::max(std::fabs(cur_), std::fabs(next_));
  if (m == 0.0 || !std::isfinite(m)) return;
  if (m > 1e100 || m < 1e-100) {
    const int e = std::ilogb(m);
    cur_ = std::ldexp(cur_, -e);
    next_ = std::ldexp(next_, -e);
    log_scale_ += e * std::numbers::ln2;
  }
}

double ShiftedFamily::value() const { return log_value().value(); }

SignedLog ShiftedFamily::log_value() const {
  if (cur_ == 0.0) return {-std::numeric_limits<double>::infinity(), 0};
  return {std::log(std::fabs(cur_)) + log_scale_, cur_ > 0.0 ? 1 : -1};
}

}  // namespace hypersum::special
