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

#include "hypersum/error.hpp"
#include "hypersum/hypersum.hpp"

using namespace hypersum;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::Domain;
}

struct Ref {
  double eta, c, x, value;
};

// Direct summation in mpmath (nsum, 30 digits).
const Ref kRefs[] = {
    {1.0, 2.0, 0.5, 2.0},
    {0.5, 2.0, -0.8, 2.7912878474779199991},
    {2.0, 0.7, -0.3, 1.1106138663372839369},
    {1.5, 3.3, 0.6, 1.4276302732169880131},
    {0.3, 1.2, -0.5, 1.8686829358308049854},
    {0.9, 4.5, 0.7, 1.3810304053090939317},
};

}  // namespace

TEST_CASE("parameter validation") {
  CHECK(kind_of([] { SumParams::make(0.0, 2.0, 0.5); }) == ErrorKind::Domain);
  CHECK(kind_of([] { SumParams::make(1.0, -1.0, 0.5); }) == ErrorKind::Domain);
  CHECK(kind_of([] { SumParams::make(1.0, 2.0, 1.5); }) == ErrorKind::Domain);
  CHECK(kind_of([] { SumParams::make(NAN, 2.0, 0.5); }) == ErrorKind::Domain);
}

TEST_CASE("convergence region") {
  auto check = [](double eta, double c, double x) {
    return convergence_check(SumParams::make(eta, c, x));
  };
  CHECK(check(0.6, 2.0, 0.25).convergent);
  CHECK(!check(0.4, 2.0, 0.25).convergent);
  CHECK(check(0.4, 2.0, 0.25).reason == VerdictReason::DivergentPositiveX);

  const ConvergenceVerdict edge_hi = check(0.5, 2.0, 0.25);
  CHECK(edge_hi.convergent);
  CHECK(edge_hi.on_boundary);
  const ConvergenceVerdict edge_lo = check(0.5, 1.2, 0.25);
  CHECK(!edge_lo.convergent);
  CHECK(edge_lo.reason == VerdictReason::BoundaryNeedsLargeC);

  const double eta_neg = std::sqrt(1.5) - 1.0;
  CHECK(!check(eta_neg - 0.01, 2.0, -0.5).convergent);
  CHECK(check(eta_neg - 0.01, 2.0, -0.5).reason == VerdictReason::DivergentNegativeX);
  CHECK(check(eta_neg + 0.01, 1.0, -0.5).convergent);

  CHECK(check(0.01, 0.3, 0.0).convergent);
  CHECK(check(2.0, 2.0, 1.0).convergent);
  CHECK(!check(2.0, 1.5, 1.0).convergent);
  CHECK(check(2.0, 1.5, 1.0).reason == VerdictReason::DivergentAtOne);

  CHECK(late_term_ratio(SumParams::make(1.0, 2.0, 0.25)) == doctest::Approx(0.75));
  CHECK(late_term_ratio(SumParams::make(1.0, 2.0, -0.44)) == doctest::Approx(0.6));
}

TEST_CASE("reference values by every route") {
  for (const Ref& r : kRefs) {
    CAPTURE(r.eta);
    CAPTURE(r.c);
    CAPTURE(r.x);
    const SumParams p = SumParams::make(r.eta, r.c, r.x);
    const EvalResult direct = sum_direct(p);
    const EvalResult closed = sum_closed(p);
    CHECK(direct.value == doctest::Approx(r.value).epsilon(1e-11));
    CHECK(closed.value == doctest::Approx(r.value).epsilon(1e-12));
    CHECK(std::fabs(direct.value - r.value) <= direct.abs_error_estimate + 1e-14);
    CHECK(direct.method == Method::Series);
    CHECK(direct.terms_used > 0);
    CHECK(evaluate_sum(p, SumMethod::Auto).value == doctest::Approx(r.value).epsilon(1e-12));
  }
}

TEST_CASE("continuation through X = 0") {
  const SumParams p = SumParams::make(0.5, 2.0, -0.8);
  const EvalResult closed = sum_closed(p);
  CHECK(closed.analytic_continuation);
  CHECK(closed.method == Method::ClosedForm);
  CHECK(closed.value == doctest::Approx(2.79128784747792).epsilon(1e-13));

  CHECK(!sum_closed(SumParams::make(1.0, 2.0, 0.5)).analytic_continuation);

  // Non-integer c, dense in x below -eta.
  for (double c : {0.6, 1.3, 2.7, 4.1}) {
    for (double x : {-0.45, -0.6, -0.75}) {
      const SumParams q = SumParams::make(0.4, c, x);
      if (!convergence_check(q).convergent) continue;
      CAPTURE(c);
      CAPTURE(x);
      CHECK(sum_closed(q).value == doctest::Approx(sum_direct(q).value).epsilon(1e-10));
    }
  }

  // X == 0 limit.
  const SumParams z = SumParams::make(0.5, 2.0, -0.5);
  CHECK(sum_closed(z).value == doctest::Approx(sum_direct(z).value).epsilon(1e-11));
}

TEST_CASE("elementary forms") {
  for (double c : {1.0, 2.0, 3.0}) {
    for (double x : {-0.7, -0.2, 0.0, 0.3, 0.8}) {
      const SumParams p = SumParams::make(1.2, c, x);
      CAPTURE(c);
      CAPTURE(x);
      CHECK(sum_special(p).value == doctest::Approx(sum_closed(p).value).epsilon(1e-13));
    }
  }
  // eta = 1, c = 2: 2 (1+1)/(1+x+(1-x)) = 2
  CHECK(sum_special(SumParams::make(1.0, 2.0, 0.37)).value == doctest::Approx(2.0));
  CHECK(kind_of([] { sum_special(SumParams::make(1.0, 2.5, 0.3)); }) == ErrorKind::Domain);
}

TEST_CASE("divergent input is rejected") {
  const SumParams p = SumParams::make(0.4, 2.0, 0.25);
  CHECK(kind_of([&] { sum_direct(p); }) == ErrorKind::NotConvergent);
  CHECK(kind_of([&] { sum_closed(p); }) == ErrorKind::NotConvergent);
  CHECK(kind_of([&] { evaluate_sum(p, SumMethod::Auto); }) == ErrorKind::NotConvergent);

  DirectOptions diag;
  diag.allow_divergent = true;
  diag.max_terms = 500;
  CHECK_NOTHROW(sum_direct(p, diag));
}

TEST_CASE("boundary point error estimate") {
  // eta = sqrt(x), c > 3/2: terms decay like k^(1/2-c).
  const SumParams p = SumParams::make(0.5, 2.0, 0.25);
  DirectOptions opts;
  opts.max_terms = 20000;
  const EvalResult direct = sum_direct(p, opts);
  const EvalResult closed = sum_closed(p);
  CHECK(direct.terms_used == 20000);
  const double err = std::fabs(direct.value - closed.value);
  CHECK(err <= direct.abs_error_estimate);
  CHECK(direct.abs_error_estimate <= 3.0 * err);
}

TEST_CASE("slow interior convergence hits the term cap") {
  DirectOptions opts;
  opts.max_terms = 50;
  const SumParams p = SumParams::make(0.51, 2.0, 0.25);
  CHECK(kind_of([&] { sum_direct(p, opts); }) == ErrorKind::SlowConvergence);
}

TEST_CASE("partial sums") {
  const SumParams p = SumParams::make(1.0, 2.0, 0.5);
  const std::vector<double> s = sum_partial_sums(p, 200);
  REQUIRE(s.size() == 200);
  CHECK(s[0] == doctest::Approx(2.0 / (1.0 + std::sqrt(0.5))));   // F_0 = 2F1(1/2,1;2;x)
  CHECK(s.back() == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("Letac series and normalization identity") {
  // 0.2/(0.8) 2F1(1/2,1;2;0.2/0.64) with 2F1 = 2/(1+sqrt(1-chi))
  const double chi = 0.2 / 0.64;
  const double want = 0.25 * 2.0 / (1.0 + std::sqrt(1.0 - chi));
  CHECK(letac_sum(0.2, 2.0, 0.2, LetacMethod::Closed).value == doctest::Approx(want).epsilon(1e-14));
  CHECK(letac_sum(0.2, 2.0, 0.2, LetacMethod::Direct).value == doctest::Approx(want).epsilon(1e-12));
  CHECK(kind_of([] { letac_sum(0.5, 2.0, 0.3, LetacMethod::Closed); }) == ErrorKind::Domain);

  for (double x : {-1.0, -0.5, 0.0, 0.5, 0.9}) {
    CAPTURE(x);
    CHECK(normalization_identity(x).value == doctest::Approx(1.0).epsilon(1e-12));
  }
}
