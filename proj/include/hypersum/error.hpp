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

#ifndef HYPERSUM_ERROR_HPP_
#define HYPERSUM_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace hypersum {

enum class ErrorKind {
  Domain,            // argument outside the mathematical domain
  NotConvergent,     // parameters lie outside the convergence region
  NonConvergent,     // iteration cap reached before the tolerance
  SlowConvergence,   // interior sum exhausted max_terms
  Overflow,
  RootFindFailure,
  QuadratureFailure,
  InsufficientData,
};

std::string_view to_string(ErrorKind kind);

// Rejections are caller errors (bad or divergent input); everything else is
// a numerical failure of an otherwise valid request.
constexpr bool is_rejection(ErrorKind kind) {
  return kind == ErrorKind::Domain || kind == ErrorKind::NotConvergent ||
         kind == ErrorKind::InsufficientData;
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace hypersum

#endif  // HYPERSUM_ERROR_HPP_
