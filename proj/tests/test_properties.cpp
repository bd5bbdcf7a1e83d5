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

// Randomized identities.  Seeds are fixed so failures reproduce.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "hypersum/branching.hpp"
#include "hypersum/hypersum.hpp"
#include "hypersum/special_fn.hpp"

using namespace hypersum;

namespace {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : eng_(seed) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(eng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(eng_); }

  // A convergent interior point with eta at least `margin` above the bound.
  SumParams interior(double margin) {
    const double c = uniform(0.2, 6.0);
    const double x = uniform(-1.0, 1.0);
    const double bound = x >= 0.0 ? std::sqrt(x) : std::sqrt(1.0 - x) - 1.0;
    const double eta = std::max(bound, 0.0) + margin + uniform(0.0, 2.0);
    return SumParams::make(eta, c, x);
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace

TEST_CASE("closed form equals direct summation") {
  Gen g(101);
  for (int i = 0; i < 300; ++i) {
    const SumParams p = g.interior(0.05);
    CAPTURE(p.eta);
    CAPTURE(p.c);
    CAPTURE(p.x);
    const EvalResult d = sum_direct(p);
    const EvalResult c = sum_closed(p);
    CHECK(std::fabs(d.value - c.value) <= 1e-10 * std::max(1.0, std::fabs(c.value)));
  }
}

TEST_CASE("error estimate bounds the actual error") {
  Gen g(202);
  for (int i = 0; i < 200; ++i) {
    const SumParams p = g.interior(0.1);
    const EvalResult d = sum_direct(p);
    const double ref = sum_closed(p).value;
    CAPTURE(p.eta);
    CAPTURE(p.c);
    CAPTURE(p.x);
    CHECK(std::fabs(d.value - ref) <= d.abs_error_estimate + 4e-15 * std::max(1.0, std::fabs(ref)));
  }
}

TEST_CASE("sum decreases in eta") {
  // Every term is a positive multiple of ((1-x)/(1+eta))^k for x >= 0.
  Gen g(303);
  for (int i = 0; i < 100; ++i) {
    const double c = g.uniform(0.3, 5.0);
    const double x = g.uniform(0.0, 0.9);
    const double eta = std::sqrt(x) + g.uniform(0.05, 1.0);
    CHECK(sum_closed(SumParams::make(eta, c, x)).value >
          sum_closed(SumParams::make(eta + 0.1, c, x)).value);
  }
}

TEST_CASE("recurrence matches series") {
  Gen g(404);
  for (int i = 0; i < 60; ++i) {
    const double c = g.uniform(0.3, 5.0);
    const double x = g.uniform(-0.45, 0.6);
    const int k = g.integer(0, 25);
    special::ShiftedFamily f(c, x, 1.0);
    for (int j = 0; j < k; ++j) f.advance();
    const EvalResult s = special::hyp2f1_series({0.5 * k + 0.5, 0.5 * k + 1.0, c, x}, 1e-16);
    CAPTURE(c);
    CAPTURE(x);
    CAPTURE(k);
    CHECK(f.value() == doctest::Approx(s.value).epsilon(1e-10).scale(s.abs_error_estimate * 1e10));
  }
}

TEST_CASE("progeny pmf sums to one and pgf routes agree") {
  Gen g(505);
  for (int i = 0; i < 20; ++i) {
    const double lambda = g.uniform(0.05, 0.95);
    const auto law = branching::ProgenyHalfLaw::from_lambda(lambda);
    const auto n = branching::progeny_normalization(law, 4000);
    CHECK(std::fabs(n.partial_sum - 1.0) <= n.tail_bound + 1e-13);
    const double z = g.uniform(0.01, law.z_minus);
    CHECK(branching::progeny_pgf_elementary(law, z) ==
          doctest::Approx(branching::progeny_pgf_hypergeometric(law, z)).epsilon(1e-12));
  }
}

TEST_CASE("functional equation over random alpha") {
  Gen g(606);
  for (int i = 0; i < 100; ++i) {
    const auto d = branching::ScaledSibuya::make(g.uniform(0.05, 0.95), g.uniform(0.05, 0.95));
    const double z = g.uniform(0.0, 1.0);
    CHECK(branching::functional_equation_residual(d, z) < 1e-12);
  }
}
