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

#ifndef HYPERSUM_EVAL_RESULT_HPP_
#define HYPERSUM_EVAL_RESULT_HPP_

#include <cstdint>
#include <string_view>

namespace hypersum {

enum class Method {
  Series,
  EulerTransform,
  ClosedForm,
  GaussPoint,
  Asymptotic,
  Quadrature,
  RootFind,
};

std::string_view to_string(Method method);

/// A computed value together with how it was obtained.
///
/// `terms_used` is zero only for ClosedForm and GaussPoint evaluations.
/// `analytic_continuation` marks values that are the continuation of a sum
/// rather than the limit of its partial sums computed by this route.
struct EvalResult {
  double value = 0.0;
  double abs_error_estimate = 0.0;
  std::int64_t terms_used = 0;
  Method method = Method::Series;
  bool analytic_continuation = false;
};

}  // namespace hypersum

#endif  // HYPERSUM_EVAL_RESULT_HPP_
