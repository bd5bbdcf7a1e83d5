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

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "hypersum/error.hpp"
#include "hypersum/special_fn.hpp"

namespace hypersum::special {

namespace {

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczosCoef = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

const double kHalfLog2Pi = 0.5 * std::log(2.0 * std::numbers::pi);

// log Gamma(x) for x >= 1/2.
double lanczos_log_gamma(double x) {
  const double z = x - 1.0;
  double series = kLanczosCoef[0];
  for (std::size_t i = 1; i < kLanczosCoef.size(); ++i) {
    series += kLanczosCoef[i] / (z + static_cast<double>(i));
  }
  const double t = z + kLanczosG + 0.5;
  return kHalfLog2Pi + (z + 0.5) * std::log(t) - t + std::log(series);
}

bool is_nonpositive_integer(double x) {
  return x <= 0.0 && x == std::floor(x);
}

// sin(pi x) with the argument reduced first so large |x| stay accurate.
double sin_pi(double x) {
  double r = std::fmod(x, 2.0);
  if (r < 0.0) r += 2.0;
  if (r == 0.0 || r == 1.0) return 0.0;
  if (r == 0.5) return 1.0;
  if (r == 1.5) return -1.0;
  return std::sin(std::numbers::pi * r);
}

}  // namespace

double SignedLog::value() const {
  if (sign == 0) return 0.0;
  return sign * std::exp(log_abs);
}

SignedLog log_gamma_signed(double x) {
  if (std::isnan(x)) return {x, 1};
  if (is_nonpositive_integer(x)) {
    return {std::numeric_limits<double>::infinity(), 1};
  }
  if (x >= 0.5) return {lanczos_log_gamma(x), 1};
  // Gamma(x) Gamma(1-x) = pi / sin(pi x)
  const double s = sin_pi(x);
  return {std::log(std::numbers::pi / std::fabs(s)) - lanczos_log_gamma(1.0 - x),
          s > 0.0 ? 1 : -1};
}

double log_gamma(double x) { return log_gamma_signed(x).log_abs; }

double gamma(double x) {
  if (is_nonpositive_integer(x)) return std::numeric_limits<double>::quiet_NaN();
  if (x > 0.0 && x <= 20.0 && x == std::floor(x)) {
    double f = 1.0;
    for (int i = 2; i < static_cast<int>(x); ++i) f *= i;
    return f;
  }
  return log_gamma_signed(x).value();
}

double rgamma(double x) {
  if (is_nonpositive_integer(x)) return 0.0;
  const SignedLog lg = log_gamma_signed(x);
  return lg.sign * std::exp(-lg.log_abs);
}

SignedLog log_pochhammer(double a, std::int64_t k) {
  if (k < 0) fail(ErrorKind::Domain, "pochhammer: negative k");
  if (k == 0) return {0.0, 1};
  // (a)_k vanishes when the product runs through zero.
  if (is_nonpositive_integer(a) && -a < static_cast<double>(k)) {
    return {-std::numeric_limits<double>::infinity(), 0};
  }
  if (k <= 64) {
    double log_abs = 0.0;
    int sign = 1;
    double block = 1.0;
    for (std::int64_t i = 0; i < k; ++i) {
      const double f = a + static_cast<double>(i);
      if (f < 0.0) sign = -sign;
      block *= std::fabs(f);
      if (block > 1e250 || block < 1e-250) {
        log_abs += std::log(block);
        block = 1.0;
      }
    }
    return {log_abs + std::log(block), sign};
  }
  const SignedLog num = log_gamma_signed(a + static_cast<double>(k));
  const SignedLog den = log_gamma_signed(a);
  return {num.log_abs - den.log_abs, num.sign * den.sign};
}

double pochhammer(double a, std::int64_t k) {
  if (k <= 64) {
    if (k < 0) fail(ErrorKind::Domain, "pochhammer: negative k");
    double p = 1.0;
    for (std::int64_t i = 0; i < k; ++i) p *= a + static_cast<double>(i);
    if (!std::isfinite(p)) {
      fail(ErrorKind::Overflow, "pochhammer: result exceeds double range");
    }
    return p;
  }
  const SignedLog lp = log_pochhammer(a, k);
  if (lp.sign == 0) return 0.0;
  if (lp.log_abs > std::log(std::numeric_limits<double>::max())) {
    fail(ErrorKind::Overflow, "pochhammer: result exceeds double range");
  }
  return lp.value();
}

}  // namespace hypersum::special
