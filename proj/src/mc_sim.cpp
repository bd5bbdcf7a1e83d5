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

#include "hypersum/mc_sim.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <thread>

#include <boost/math/distributions/chi_squared.hpp>

#include "hypersum/error.hpp"

namespace hypersum::mc {

namespace {

constexpr std::size_t kInitialTable = 64;
constexpr std::size_t kMaxTable = std::size_t{1} << 26;

struct Partial {
  std::map<std::int64_t, std::int64_t> counts;
  std::int64_t censored = 0;
  double sum = 0.0;
};

template <typename Body>
SimResult run_blocks(const SimConfig& cfg, Body body) {
  if (cfg.replicates <= 0) fail(ErrorKind::Domain, "replicates must be positive");
  if (cfg.progeny_cap <= 0) fail(ErrorKind::Domain, "progeny cap must be positive");
  if (cfg.workers <= 0) fail(ErrorKind::Domain, "workers must be positive");

  const auto workers = static_cast<std::int64_t>(
      std::min<std::int64_t>(cfg.workers, cfg.replicates));
  std::vector<Partial> parts(static_cast<std::size_t>(workers));
  auto run = [&](std::int64_t w) {
    const std::int64_t begin = cfg.replicates * w / workers;
    const std::int64_t end = cfg.replicates * (w + 1) / workers;
    body(begin, end, parts[static_cast<std::size_t>(w)]);
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::thread> threads;
    threads.reserve(static_cast<std::size_t>(workers));
    for (std::int64_t w = 0; w < workers; ++w) threads.emplace_back(run, w);
    for (auto& t : threads) t.join();
  }

  SimResult out;
  out.replicates = cfg.replicates;
  out.progeny_cap = cfg.progeny_cap;
  std::int64_t uncensored = 0;
  long double total = 0.0L;
  for (const Partial& p : parts) {
    for (const auto& [ell, n] : p.counts) {
      out.counts[ell] += n;
      uncensored += n;
      total += static_cast<long double>(ell) * n;
    }
    out.censored += p.censored;
  }
  // The mean is formed from the merged integer counts, so it is identical
  // for any worker split.
  out.mean_uncensored = uncensored > 0 ? static_cast<double>(total / uncensored) : 0.0;
  return out;
}

}  // namespace

std::uint64_t SplitMix64::mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t SplitMix64::stream_seed(std::uint64_t seed, std::uint64_t index) {
  return mix(mix(seed) ^ (index * 0x9E3779B97F4A7C15ULL + 0xD1B54A32D192ED03ULL));
}

std::uint64_t SplitMix64::next() {
  state_ += 0x9E3779B97F4A7C15ULL;
  return mix(state_);
}

double SplitMix64::uniform() {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

OffspringSampler::OffspringSampler(const branching::ScaledSibuya& d, bool dual)
    : alpha_(d.alpha), scale_(dual ? branching::extinction_prob(d) : 1.0) {
  const double p0 = dual ? (1.0 - d.lambda) / scale_ : 1.0 - d.lambda;
  cdf_.push_back(p0);
  if (d.alpha == 1.0) {
    // All remaining mass sits on k = 1.
    cdf_.push_back(1.0);
    last_pmf_ = 0.0;
    alpha_ = 1.0;
    return;
  }
  last_pmf_ = d.lambda * d.alpha;   // p_1 (Q^0 for the dual law)
  cdf_.push_back(p0 + last_pmf_);
  extend(kInitialTable);
}

void OffspringSampler::extend(std::size_t target) {
  target = std::min(target, kMaxTable);
  cdf_.reserve(target);
  while (cdf_.size() < target) {
    const double k = static_cast<double>(cdf_.size() - 1);
    last_pmf_ *= scale_ * (k - alpha_) / (k + 1.0);
    cdf_.push_back(cdf_.back() + last_pmf_);
  }
}

std::int64_t OffspringSampler::sample_at(double u) {
  while (!(u < cdf_.back())) {
    // Stop growing once the pmf no longer moves the cumulative sum; the
    // remaining mass is below the resolution of u.
    if (last_pmf_ <= 0.0 || cdf_.back() + last_pmf_ == cdf_.back() ||
        cdf_.size() >= kMaxTable) {
      return static_cast<std::int64_t>(cdf_.size() - 1);
    }
    extend(cdf_.size() * 2);
  }
  const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  return static_cast<std::int64_t>(it - cdf_.begin());
}

std::int64_t OffspringSampler::sample(SplitMix64& rng) { return sample_at(rng.uniform()); }

SimResult simulate_total_progeny(const branching::ScaledSibuya& d, const SimConfig& cfg) {
  const OffspringSampler prototype(d, true);
  return run_blocks(cfg, [&](std::int64_t begin, std::int64_t end, Partial& part) {
    OffspringSampler sampler = prototype;
    for (std::int64_t i = begin; i < end; ++i) {
      SplitMix64 rng(SplitMix64::stream_seed(cfg.seed, static_cast<std::uint64_t>(i)));
      std::int64_t total = 1;
      std::int64_t generation = 1;
      while (generation > 0 && total < cfg.progeny_cap) {
        std::int64_t next = 0;
        for (std::int64_t j = 0; j < generation; ++j) next += sampler.sample(rng);
        total += next;
        generation = next;
      }
      if (total >= cfg.progeny_cap) {
        ++part.censored;
      } else {
        ++part.counts[total];
      }
    }
  });
}

SimResult sample_progeny_direct(const std::vector<double>& pmf, const SimConfig& cfg) {
  std::vector<double> cdf(pmf.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < pmf.size(); ++i) cdf[i] = acc += pmf[i];
  return run_blocks(cfg, [&](std::int64_t begin, std::int64_t end, Partial& part) {
    for (std::int64_t i = begin; i < end; ++i) {
      SplitMix64 rng(SplitMix64::stream_seed(cfg.seed, static_cast<std::uint64_t>(i)));
      const double u = rng.uniform();
      const auto idx = std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin();
      const std::int64_t ell = idx + 1;
      if (idx >= static_cast<std::ptrdiff_t>(cdf.size()) || ell >= cfg.progeny_cap) {
        ++part.censored;
      } else {
        ++part.counts[ell];
      }
    }
  });
}

GofReport gof_compare(const SimResult& sim, const std::vector<double>& pmf, int bins) {
  if (sim.replicates < 10000) {
    fail(ErrorKind::InsufficientData, "goodness of fit needs at least 10^4 replicates");
  }
  if (bins < 1 || static_cast<std::size_t>(bins) > pmf.size()) {
    fail(ErrorKind::Domain, "bins must lie in [1, " + std::to_string(pmf.size()) + "]");
  }
  const double n = static_cast<double>(sim.replicates);

  GofReport r;
  r.empirical_counts = sim.counts;
  r.censored = sim.censored;
  r.replicates = sim.replicates;
  r.mean_uncensored = sim.mean_uncensored;

  // Cells l = 1..bins, then the tail.
  std::vector<double> expected;
  std::vector<double> observed;
  double head_p = 0.0;
  std::int64_t head_obs = 0;
  for (int ell = 1; ell <= bins; ++ell) {
    const double p = pmf[static_cast<std::size_t>(ell - 1)];
    const auto it = sim.counts.find(ell);
    const std::int64_t obs = it == sim.counts.end() ? 0 : it->second;
    expected.push_back(n * p);
    observed.push_back(static_cast<double>(obs));
    head_p += p;
    head_obs += obs;
    const double sd = std::sqrt(n * p * (1.0 - p));
    r.z_scores[ell] = sd > 0.0 ? (static_cast<double>(obs) - n * p) / sd : 0.0;
    r.max_abs_deviation =
        std::max(r.max_abs_deviation, std::fabs(static_cast<double>(obs) / n - p));
  }
  expected.push_back(n * std::max(0.0, 1.0 - head_p));
  observed.push_back(static_cast<double>(sim.replicates - head_obs));

  // Pool left to right; a short final group joins its predecessor.
  std::vector<double> pe;
  std::vector<double> po;
  double ge = 0.0;
  double go = 0.0;
  for (std::size_t i = 0; i < expected.size(); ++i) {
    ge += expected[i];
    go += observed[i];
    if (ge >= 5.0) {
      pe.push_back(ge);
      po.push_back(go);
      ge = go = 0.0;
    }
  }
  if (ge > 0.0 || go > 0.0) {
    if (pe.empty()) {
      pe.push_back(ge);
      po.push_back(go);
    } else {
      pe.back() += ge;
      po.back() += go;
    }
  }
  if (pe.size() < 2 || pe.back() < 5.0) {
    fail(ErrorKind::InsufficientData, "pooling left fewer than two cells with expected >= 5");
  }

  for (std::size_t i = 0; i < pe.size(); ++i) {
    const double diff = po[i] - pe[i];
    r.chi_square += diff * diff / pe[i];
  }
  r.cells = static_cast<int>(pe.size());
  r.dof = r.cells - 1;
  const boost::math::chi_squared_distribution<double> dist(r.dof);
  r.quantile_999 = boost::math::quantile(dist, 0.999);
  r.passed = r.chi_square < r.quantile_999;
  return r;
}

GofReport gof_compare(const SimResult& sim, const branching::ProgenyHalfLaw& law, int bins) {
  return gof_compare(sim, branching::progeny_pmf_table(law, bins), bins);
}

}  // namespace hypersum::mc
