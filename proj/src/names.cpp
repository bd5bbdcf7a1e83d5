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

#include "hypersum/error.hpp"
#include "hypersum/eval_result.hpp"

namespace hypersum {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Domain: return "DomainError";
    case ErrorKind::NotConvergent: return "NotConvergent";
    case ErrorKind::NonConvergent: return "NonConvergent";
    case ErrorKind::SlowConvergence: return "SlowConvergence";
    case ErrorKind::Overflow: return "Overflow";
    case ErrorKind::RootFindFailure: return "RootFindFailure";
    case ErrorKind::QuadratureFailure: return "QuadratureFailure";
    case ErrorKind::InsufficientData: return "InsufficientData";
  }
  return "Unknown";
}

std::string_view to_string(Method method) {
  switch (method) {
    case Method::Series: return "Series";
    case Method::EulerTransform: return "EulerTransform";
    case Method::ClosedForm: return "ClosedForm";
    case Method::GaussPoint: return "GaussPoint";
    case Method::Asymptotic: return "Asymptotic";
    case Method::Quadrature: return "Quadrature";
    case Method::RootFind: return "RootFind";
  }
  return "Unknown";
}

}  // namespace hypersum
