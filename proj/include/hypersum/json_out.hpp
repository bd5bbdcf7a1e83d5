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

#ifndef HYPERSUM_JSON_OUT_HPP_
#define HYPERSUM_JSON_OUT_HPP_

#include <string>

#include "json.hpp"

namespace hypersum {

using Json = nlohmann::ordered_json;

/// Single-line JSON with every double printed as %.17g.  Non-finite
/// numbers, which JSON cannot carry, become the strings "inf", "-inf", "nan".
std::string dump_json(const Json& j);

/// %.17g, the same format dump_json uses.
std::string format_double(double v);

}  // namespace hypersum

#endif  // HYPERSUM_JSON_OUT_HPP_
