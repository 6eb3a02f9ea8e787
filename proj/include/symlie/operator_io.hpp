// Copyright 2026 The symlie Authors
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

#pragma once

#include <json.hpp>
#include <string>

#include "symlie/operator.hpp"

namespace symlie {

using Json = nlohmann::json;

/** Rationals are written as "n" or "p/q" strings. */
Json rational_to_json(const Rational& r);
/** Accepts "p/q"/"n"/decimal strings and JSON numbers (converted exactly). */
Rational rational_from_json(const Json& j);

/** {"m": int, "terms": [{"bra": "0101", "ket": "0110", "re": "p/q", "im": "p/q"}]} */
Json operator_to_json(const Operator& op);
Operator operator_from_json(const Json& j);

Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

}  // namespace symlie
