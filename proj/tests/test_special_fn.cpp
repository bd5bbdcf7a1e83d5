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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "hypersum/error.hpp"
#include "hypersum/special_fn.hpp"

using namespace hypersum;
using namespace hypersum::special;

namespace {

bool rel_close(double got, double want, double tol) {
  return std::fabs(got - want) <= tol * std::fabs(want);
}

// 2F1(k/2+1/2, k/2+1; c; x) at index k via the shifted family.
SignedLog family_at(double c, double x, int k) {
  ShiftedFamily f(c, x, 1.0);
  for (int i = 0; i < k; ++i) f.advance();
  return f.log_value();
}

}  // namespace

// Reference values below were computed with mpmath at 40 digits.

TEST_CASE("gamma family") {
  CHECK(rel_close(special::gamma(0.3), 2.9915689876875906283, 1e-14));
  CHECK(rel_close(special::gamma(-2.5), -0.94530872048294188123, 1e-14));
  CHECK(rel_close(special::gamma(7.5), 1871.2543057977883465, 1e-14));
  CHECK(special::gamma(5.0) == 24.0);
  CHECK(rgamma(-3.0) == 0.0);
  CHECK(rel_close(log_gamma(100.5), 361.43554046777762156, 1e-14));

  const SignedLog lg = log_gamma_signed(-0.5);   // Gamma(-1/2) = -2 sqrt(pi)
  CHECK(lg.sign == -1);
  CHECK(rel_close(lg.value(), -2.0 * std::sqrt(std::numbers::pi), 1e-14));
}

TEST_CASE("pochhammer") {
  CHECK(pochhammer(0.5, 0) == 1.0);
  CHECK(rel_close(pochhammer(0.5, 3), 0.5 * 1.5 * 2.5, 1e-15));
  CHECK(pochhammer(-2.0, 5) == 0.0);
  CHECK(log_pochhammer(-2.0, 5).sign == 0);
  const SignedLog big = log_pochhammer(0.5, 500);
  CHECK(rel_close(big.log_abs, log_gamma(500.5) - log_gamma(0.5), 1e-13));
  CHECK_THROWS_AS(pochhammer(1.0, 400), Error);
}

TEST_CASE("2F1 series and transformations") {
  CHECK(hyp2f1(0.5, 1.0, 2.0, 0.0).value == 1.0);
  CHECK(rel_close(hyp2f1(0.5, 1.0, 2.3, 0.97).value, 1.5138758680177327256, 1e-13));
  CHECK(rel_close(hyp2f1(0.5, 1.0, 2.3, -40.0).value, 0.29273987690969139969, 1e-13));
  CHECK(rel_close(hyp2f1(1.0, 1.5, 0.7, 0.95).value, 295.32482922344803268, 1e-13));
  CHECK(rel_close(hyp2f1(1.0, 1.5, 2.5, 0.95).value, 3.8995583138443549925, 1e-13));

  const EvalResult gauss = hyp2f1(0.5, 1.0, 2.0, 1.0);
  CHECK(gauss.value == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(gauss.method == Method::GaussPoint);

  CHECK_THROWS_AS(hyp2f1(0.5, 1.0, 1.0, 1.0), Error);
  CHECK_THROWS_AS(hyp2f1(0.5, 1.0, -2.0, 0.5), Error);
  CHECK_THROWS_AS(hyp2f1_series({0.5, 1.0, 2.0, 1.5}), Error);
}

TEST_CASE("series error estimate covers the actual error") {
  // 2F1(1/2,1;2;x) = 2/(1+sqrt(1-x))
  for (double x : {-0.4, 0.1, 0.5, 0.85}) {
    const EvalResult r = hyp2f1_series({0.5, 1.0, 2.0, x});
    const double exact = 2.0 / (1.0 + std::sqrt(1.0 - x));
    CHECK(std::fabs(r.value - exact) <= std::max(r.abs_error_estimate, 4e-16));
  }
}

TEST_CASE("2F1(1/2,1;c;chi)") {
  CHECK(rel_close(hyp2f1_half_one(0.7, -7.0).value, 0.24656027954153869572, 1e-13));
  CHECK(rel_close(hyp2f1_half_one(1.5, 0.97).value, 2.4762671659525616386, 1e-13));
  CHECK(rel_close(hyp2f1_half_one(2.3, 0.97).value, 1.5138758680177327256, 1e-13));
  CHECK(hyp2f1_half_one(2.0, 1.0).value == doctest::Approx(2.0));
  CHECK(hyp2f1_half_one(3.0, 1.0).value == doctest::Approx(4.0 / 3.0));
  CHECK_THROWS_AS(hyp2f1_half_one(1.0, 1.0), Error);

  // Elementary forms near chi = 0, where the printed expressions cancel.
  for (double chi : {1e-9, -1e-9, 1e-4}) {
    for (int c = 1; c <= 4; ++c) {
      CHECK(rel_close(hyp2f1_half_one(c, chi).value, hyp2f1_series({0.5, 1.0, 1.0 * c, chi}).value,
                      1e-15));
    }
  }
}

TEST_CASE("shifted family against reference values") {
  struct Ref {
    int k;
    double c, x, value;
  };
  const Ref refs[] = {
      {50, 2.0, -0.5, -3.3385368034258265513e-7},
      {200, 2.0, -0.5, 1.280661990678187241e-21},
      {400, 2.0, -1.0, -1.3658432863820124879e-64},
      {200, 3.0, -1.0, 5.7047631768471804658e-36},
      {30, 0.7, -0.9, -1.0453319052350289579e-5},
      {200, 2.0, 0.25, 9.0660335169220805926e56},
      {400, 3.0, 0.64, 6.0561788299163943623e272},
  };
  for (const Ref& r : refs) {
    CAPTURE(r.k);
    CAPTURE(r.x);
    CHECK(rel_close(family_at(r.c, r.x, r.k).value(), r.value, 1e-12));
  }
  // Beyond double range: compare logarithms.
  const SignedLog big = family_at(2.5, 0.49, 1000);
  CHECK(big.sign == 1);
  CHECK(big.log_abs == doctest::Approx(std::log(6.9503981973395500123) + 516.0 * std::log(10.0))
                           .epsilon(1e-13));
}

TEST_CASE("large-k approximant") {
  // Leading term is exact at c = 3/2, x > 0.
  const AsymptoticEval a = hyp2f1_large_k(300, 1.5, 0.36);
  CHECK(rel_close(a.log_approx.log_abs, family_at(1.5, 0.36, 300).log_abs, 1e-13));

  const AsymptoticEval b = hyp2f1_large_k(200, 2.0, -0.5);
  CHECK(b.phi == doctest::Approx(std::atan(std::sqrt(0.5))));
  CHECK(rel_close(b.approx, 1.280661990678187241e-21, 0.01));
  CHECK_THROWS_AS(hyp2f1_large_k(10, 2.0, 0.0), Error);
}

TEST_CASE("Bessel I1") {
  CHECK(rel_close(bessel_i1(2.0), 1.5906368546373290634, 1e-14));
  CHECK(rel_close(bessel_i1(25.0), 5657865129.8787013531, 1e-14));
  CHECK(rel_close(bessel_i1(100.0), 1.0683693903381624812e42, 1e-14));
  CHECK(rel_close(bessel_i1_scaled(100.0), 1.0683693903381624812e42 * std::exp(-100.0), 1e-13));
  CHECK(bessel_i1(0.0) == 0.0);
  CHECK(bessel_i0(0.0) == 1.0);
  CHECK_THROWS_AS(bessel_i1(-1.0), Error);
  CHECK_THROWS_AS(bessel_i1(800.0), Error);
}
