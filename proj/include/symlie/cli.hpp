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

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "symlie/symmetry.hpp"

namespace symlie::cli {

/** Exit codes shared by every subcommand. */
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitError = 2;
inline constexpr int kExitNonMember = 3;

/** "3", "3..5", "2,4", "2..3,6". */
std::vector<int> parse_int_list(const std::string& text);

/** Like parse_int_list, with INF allowed as an element. */
std::vector<Order> parse_order_list(const std::string& text);

/** Thread count from SYMLIE_THREADS, or 1 when unset. */
unsigned default_threads();

/** Runs one command line; argv[0] is the program name. */
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace symlie::cli
