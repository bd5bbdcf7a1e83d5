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

#include <cmath>
#include <limits>
#include <numbers>

#include "hypersum/error.hpp"
#include "hypersum/special_fn.hpp"

namespace hypersum::special {

namespace {

constexpr double kSeriesLimit = 20.0;

// sum_m (z/2)^(2m+nu) / (m! (m+nu)!) for nu = 0, 1.
double ascending_series(int nu, double z) {
  const double q = 0.25 * z * z;
  double term = nu == 0 ? 1.0 : 0.5 * z;
  double sum = term;
  for (int m = 1; m < 500; ++m) {
    term *= q / (static_cast<double>(m) * static_cast<double>(m + nu));
    sum += term;
    if (term < 1e-17 * sum) break;
  }
  return sum;
}

// exp(-z) I_nu(z) ~ (2 pi z)^(-1/2) sum_k (-1)^k a_k(nu) / z^k; stop at the
// smallest term.  At z > 20 that term is below 1e-17.
double hankel_scaled(int nu, double z) {
  const double mu = 4.0 * nu * nu;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 200; ++k) {
    const double odd = 2.0 * k - 1.0;
    const double next = -term * (mu - odd * odd) / (8.0 * k * z);
    if (std::fabs(next) >= std::fabs(term)) break;
    term = next;
    sum += term;
    if (std::fabs(term) < 1e-17 * std::fabs(sum)) break;
  }
  return sum / std::sqrt(2.0 * std::numbers::pi * z);
}

void check_arg(double z) {
  if (!(z >= 0.0)) fail(ErrorKind::Domain, "Bessel I needs z >= 0");
}

}  // namespace

double bessel_i0(double z) {
  check_arg(z);
  if (z <= kSeriesLimit) return ascending_series(0, z);
  const double v = hankel_scaled(0, z) * std::exp(z);
  if (!std::isfinite(v)) fail(ErrorKind::Overflow, "I0(z) overflows");
  return v;
}

double bessel_i1(double z) {
  check_arg(z);
  if (z <= kSeriesLimit) return ascending_series(1, z);
  const double v = hankel_scaled(1, z) * std::exp(z);
  if (!std::isfinite(v)) fail(ErrorKind::Overflow, "I1(z) overflows");
  return v;
}

double bessel_i1_scaled(double z) {
  check_arg(z);
  if (z <= kSeriesLimit) return std::exp(-z) * ascending_series(1, z);
  return hankel_scaled(1, z);
}

}  // namespace hypersum::special
