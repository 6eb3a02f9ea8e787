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
#include <optional>
#include <string>
#include <vector>

#include "symlie/operator.hpp"
#include "symlie/operator_io.hpp"
#include "symlie/symmetry.hpp"

namespace symlie {

enum class RegimeTag { L_INFINITE, L_GT_K, L_LE_K_ODD, L_LE_K_EVEN, TRIVIAL_L1 };

std::string regime_tag_name(RegimeTag tag);

/** Which row of the characterisation table (m, k, L) falls in. */
struct Regime {
  RegimeTag tag = RegimeTag::L_INFINITE;
  int m = 1;
  int k = 1;
  Order L = Order::infinite();

  /** k = m: every symmetric generator is already available. */
  bool full() const noexcept { return k == m; }
};

/**
 * Classifies (m, k, L). Throws UnsupportedRegime for k < 2, k > m, and for
 * finite L <= k with L >= m when k < m (answered by the closure oracle only).
 */
Regime classify(int m, int k, const Order& L);

/** Human-readable constraint column for the regime table. */
std::string regime_constraint(const Regime& r);

std::uint64_t binomial(int n, int r);

/** Dimension of the full symmetric skew-Hermitian algebra on m qubits. */
std::uint64_t h_m_dim(int m, const Order& L);

/** dim h_m - dim h_k for a supported regime. */
std::uint64_t predicted_gap(int m, int k, const Order& L);

/** Skew-Hermitian and weight(bra) = weight(ket) on every stored unit. */
bool u1_member(const Operator& a);

struct MembershipCheck {
  std::string name;
  std::optional<std::string> alias;
  ComplexRational value;
  bool ok = false;
};

struct MembershipVerdict {
  bool member = false;
  std::vector<MembershipCheck> checks;
};

/**
 * Closed-form membership of a rotated-frame operator in h_k. Structural
 * checks report the squared Hilbert–Schmidt norm of the violating part;
 * trace checks report the trace itself.
 */
MembershipVerdict membership(const Operator& a, int m, int k, const Order& L);

struct DimsReport {
  Regime regime;
  std::uint64_t h_m = 0;
  std::uint64_t h_k = 0;
  std::uint64_t gap = 0;
};

DimsReport dims_report(int m, int k, const Order& L);

/** {"member": bool, "checks": [{"name", "value", "ok"}]} */
Json verdict_to_json(const MembershipVerdict& v);
Json dims_to_json(const DimsReport& d);

}  // namespace symlie
