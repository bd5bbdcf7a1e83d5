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

// Verification suites.  Each suite checks a group of identities against
// independent evaluation routes and reports per-criterion metrics.

#ifndef HYPERSUM_VERIFY_HPP_
#define HYPERSUM_VERIFY_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "hypersum/json_out.hpp"

namespace hypersum::verify {

struct VerifyOptions {
  std::uint64_t seed = 20260101;
  std::int64_t mc_replicates = 1000000;
  int mc_workers = 1;
};

struct Criterion {
  std::string id;
  std::string description;
  bool passed = false;
  Json metrics = Json::object();
};

struct SuiteReport {
  std::string suite;
  bool passed = false;
  double seconds = 0.0;
  std::vector<Criterion> criteria;

  Json to_json() const;
};

/// theorem1, theorem2, closed-forms, corollary1, asymptotics, triple-route,
/// functional-eq, montecarlo, general-class.
const std::vector<std::string>& suite_names();

/// Domain error for an unknown name.
SuiteReport run_suite(std::string_view name, const VerifyOptions& opts = {});

}  // namespace hypersum::verify

#endif  // HYPERSUM_VERIFY_HPP_
