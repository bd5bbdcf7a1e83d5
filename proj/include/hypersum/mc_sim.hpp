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

// Monte Carlo total progeny of the dual scaled-Sibuya Galton-Watson process
// and chi-square comparison against a theoretical law.

#ifndef HYPERSUM_MC_SIM_HPP_
#define HYPERSUM_MC_SIM_HPP_

#include <cstdint>
#include <map>
#include <vector>

#include "hypersum/branching.hpp"

namespace hypersum::mc {

struct SimConfig {
  std::uint64_t seed = 42;
  std::int64_t replicates = 1000000;
  std::int64_t progeny_cap = 100000;   // totals >= cap are censored
  int workers = 1;
};

/// SplitMix64.  Replicate i of a run draws from the stream seeded with
/// stream_seed(seed, i), so results never depend on scheduling.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t state) : state_(state) {}

  std::uint64_t next();
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();

  static std::uint64_t mix(std::uint64_t z);
  static std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index);

 private:
  std::uint64_t state_;
};

/// Inversion sampler over a pmf given by its ratio recurrence.  The
/// cumulative table starts at 64 entries and grows on demand, so a draw in
/// the far tail extends the table instead of being truncated.
class OffspringSampler {
 public:
  /// dual = true samples the conditioned (subcritical) offspring law.
  OffspringSampler(const branching::ScaledSibuya& d, bool dual);

  std::int64_t sample(SplitMix64& rng);
  std::int64_t sample_at(double u);
  std::size_t table_size() const { return cdf_.size(); }

 private:
  void extend(std::size_t target);

  double alpha_;
  double scale_;    // Q for the dual law, 1 otherwise
  double last_pmf_ = 0.0;
  std::vector<double> cdf_;
};

struct SimResult {
  std::map<std::int64_t, std::int64_t> counts;   // total progeny -> count
  std::int64_t censored = 0;
  std::int64_t replicates = 0;
  std::int64_t progeny_cap = 0;
  double mean_uncensored = 0.0;
};

/// Runs cfg.replicates independent processes from one particle under the
/// dual offspring law, generation by generation.  Replicates are split into
/// contiguous blocks across cfg.workers threads and merged in index order.
SimResult simulate_total_progeny(const branching::ScaledSibuya& d, const SimConfig& cfg);

/// Sanity path: draws totals directly from a pmf table p_1, p_2, ... by
/// inversion with the same per-replicate streams.  Mass beyond the table is
/// censored.
SimResult sample_progeny_direct(const std::vector<double>& pmf, const SimConfig& cfg);

struct GofReport {
  std::map<std::int64_t, std::int64_t> empirical_counts;
  std::int64_t censored = 0;
  std::int64_t replicates = 0;
  double chi_square = 0.0;
  int dof = 0;
  int cells = 0;                   // after pooling
  double quantile_999 = 0.0;       // of chi-square with dof degrees
  bool passed = false;             // chi_square < quantile_999
  double max_abs_deviation = 0.0;  // max |observed/n - p| over l <= bins
  std::map<std::int64_t, double> z_scores;   // l -> binomial z, l <= bins
  double mean_uncensored = 0.0;
};

/// Chi-square over l = 1..bins plus a tail cell (l > bins, censored
/// included).  Adjacent cells are pooled until every expected count is at
/// least 5.  pmf holds p_1, p_2, ... with at least `bins` entries.
/// InsufficientData when replicates < 10^4 or pooling leaves < 2 cells.
GofReport gof_compare(const SimResult& sim, const std::vector<double>& pmf, int bins);

GofReport gof_compare(const SimResult& sim, const branching::ProgenyHalfLaw& law, int bins);

}  // namespace hypersum::mc

#endif  // HYPERSUM_MC_SIM_HPP_
