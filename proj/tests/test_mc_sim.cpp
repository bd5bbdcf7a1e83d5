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
#include "hypersum/mc_sim.hpp"

using namespace hypersum;
using namespace hypersum::mc;
using branching::ProgenyHalfLaw;
using branching::ScaledSibuya;

TEST_CASE("SplitMix64 reference stream") {
  // First outputs of the published SplitMix64 for state 1234567.
  SplitMix64 rng(1234567);
  CHECK(rng.next() == 6457827717110365317ULL);
  CHECK(rng.next() == 3203168211198807973ULL);
  CHECK(rng.next() == 9817491932198370423ULL);

  SplitMix64 u(7);
  for (int i = 0; i < 1000; ++i) {
    const double v = u.uniform();
    CHECK((v >= 0.0 && v < 1.0));
  }
  CHECK(SplitMix64::stream_seed(1, 0) != SplitMix64::stream_seed(1, 1));
  CHECK(SplitMix64::stream_seed(1, 5) != SplitMix64::stream_seed(2, 5));
}

TEST_CASE("offspring sampler") {
  const ScaledSibuya d = ScaledSibuya::make(0.5, 0.6);
  OffspringSampler s(d, true);
  CHECK(s.sample_at(0.0) == 0);
  const double p0 = branching::dual_offspring_pmf(d, 0);
  CHECK(s.sample_at(p0 * 0.999) == 0);
  CHECK(s.sample_at(p0 * 1.001) == 1);

  // Q close to 1 gives a long tail; a deep draw must grow the table.
  OffspringSampler heavy(ScaledSibuya::make(0.5, 0.05), true);
  const std::size_t before = heavy.table_size();
  CHECK(heavy.sample_at(1.0 - 1e-9) > 1000);
  CHECK(heavy.table_size() > before);

  SplitMix64 rng(99);
  double mean = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) mean += static_cast<double>(s.sample(rng));
  mean /= n;
  CHECK(std::fabs(mean - 0.5) < 0.02);
}

TEST_CASE("simulation is deterministic and worker independent") {
  const ScaledSibuya d = ScaledSibuya::make(0.5, 0.6);
  SimConfig cfg;
  cfg.seed = 11;
  cfg.replicates = 20000;
  const SimResult a = simulate_total_progeny(d, cfg);
  const SimResult b = simulate_total_progeny(d, cfg);
  cfg.workers = 4;
  const SimResult c = simulate_total_progeny(d, cfg);
  CHECK(a.counts == b.counts);
  CHECK(a.counts == c.counts);
  CHECK(a.censored == c.censored);
  CHECK(a.mean_uncensored == c.mean_uncensored);

  std::int64_t total = a.censored;
  for (const auto& [l, n] : a.counts) {
    CHECK(l >= 1);
    total += n;
  }
  CHECK(total == 20000);

  cfg.seed = 12;
  CHECK(simulate_total_progeny(d, cfg).counts != a.counts);
}

TEST_CASE("censoring") {
  const ScaledSibuya d = ScaledSibuya::make(0.5, 0.6);
  SimConfig cfg;
  cfg.replicates = 20000;
  cfg.progeny_cap = 3;
  const SimResult r = simulate_total_progeny(d, cfg);
  for (const auto& [l, n] : r.counts) CHECK(l < 3);
  // P(total >= 3) = 1 - 0.625 - 0.1875
  CHECK(static_cast<double>(r.censored) / 20000.0 == doctest::Approx(0.1875).epsilon(0.05));
}

TEST_CASE("goodness of fit") {
  const ScaledSibuya d = ScaledSibuya::make(0.5, 0.6);
  const ProgenyHalfLaw law = ProgenyHalfLaw::from_lambda(0.6);
  SimConfig cfg;
  cfg.seed = 2026;
  cfg.replicates = 100000;
  cfg.workers = 2;
  const SimResult sim = simulate_total_progeny(d, cfg);

  const GofReport good = gof_compare(sim, law, 30);
  CHECK(good.passed);
  CHECK(good.chi_square < good.quantile_999);
  CHECK(good.dof == good.cells - 1);
  CHECK(good.max_abs_deviation < 0.01);
  CHECK(good.z_scores.size() == 30);

  const GofReport bad = gof_compare(sim, ProgenyHalfLaw::from_lambda(0.5), 30);
  CHECK(!bad.passed);

  SimConfig small = cfg;
  small.replicates = 500;
  CHECK_THROWS_AS(gof_compare(simulate_total_progeny(d, small), law, 30), Error);
}

TEST_CASE("direct inversion sampler") {
  const ProgenyHalfLaw law = ProgenyHalfLaw::from_lambda(0.4);
  const std::vector<double> pmf = branching::progeny_pmf_table(law, 400);
  SimConfig cfg;
  cfg.replicates = 50000;
  const SimResult sim = sample_progeny_direct(pmf, cfg);
  CHECK(gof_compare(sim, pmf, 20).passed);
}
