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

#include "symlie/characterization.hpp"

#include <algorithm>
#include <functional>

#include "symlie/errors.hpp"

namespace symlie {

std::string regime_tag_name(RegimeTag tag) {
  switch (tag) {
    case RegimeTag::L_INFINITE: return "L_INFINITE";
    case RegimeTag::L_GT_K: return "L_GT_K";
    case RegimeTag::L_LE_K_ODD: return "L_LE_K_ODD";
    case RegimeTag::L_LE_K_EVEN: return "L_LE_K_EVEN";
    case RegimeTag::TRIVIAL_L1: return "TRIVIAL_L1";
  }
  return "UNKNOWN";
}

Regime classify(int m, int k, const Order& L) {
  if (m < 1 || m > static_cast<int>(kMaxQubits)) {
    throw Error(ErrorCode::OutOfRange, "qubit count m=" + std::to_string(m) + " out of range");
  }
  if (k < 2 || k > m) {
    throw Error(ErrorCode::UnsupportedRegime,
                "no closed form for k=" + std::to_string(k) + " with m=" + std::to_string(m) +
                    " (requires 2 <= k <= m)");
  }
  Regime r{RegimeTag::L_INFINITE, m, k, L};
  if (L.is_infinite()) return r;
  std::uint64_t n = L.value();
  if (n == 1) {
    r.tag = RegimeTag::TRIVIAL_L1;
  } else if (n > static_cast<std::uint64_t>(k)) {
    r.tag = RegimeTag::L_GT_K;
  } else {
    if (k < m && n >= static_cast<std::uint64_t>(m)) {
      throw Error(ErrorCode::UnsupportedRegime,
                  "L=" + L.to_string() + " <= k requires L < m; oracle-only");
    }
    r.tag = n % 2 == 1 ? RegimeTag::L_LE_K_ODD : RegimeTag::L_LE_K_EVEN;
  }
  return r;
}

std::string regime_constraint(const Regime& r) {
  if (r.full()) return "symmetric";
  switch (r.tag) {
    case RegimeTag::L_INFINITE:
    case RegimeTag::L_GT_K:
      return "w(b)=w(b'); tr(A·C_l)=0 for l=" + std::to_string(r.k + 1) + ".." +
             std::to_string(r.m);
    case RegimeTag::L_LE_K_ODD: return "symmetric (h_k = h_m)";
    case RegimeTag::L_LE_K_EVEN: return "symmetric; tr(A·Z^{⊗m})=0";
    case RegimeTag::TRIVIAL_L1: return "trivial symmetry (h_k = u(2^m))";
  }
  return "";
}

std::uint64_t binomial(int n, int r) {
  if (r < 0 || r > n) return 0;
  r = std::min(r, n - r);
  std::uint64_t out = 1;
  for (int i = 1; i <= r; ++i) out = out * static_cast<std::uint64_t>(n - r + i) / static_cast<std::uint64_t>(i);
  return out;
}

std::uint64_t h_m_dim(int m, const Order& L) {
  if (m < 1) throw Error(ErrorCode::OutOfRange, "m must be positive");
  if (L.is_infinite()) return binomial(2 * m, m);
  std::uint64_t n = L.value();
  if (n == 1) return std::uint64_t{1} << (2 * m);
  std::uint64_t total = 0;
  for (std::uint64_t r = 0; r < n; ++r) {
    std::uint64_t cls = 0;
    for (int j = static_cast<int>(r); j <= m; j += static_cast<int>(n)) cls += binomial(m, j);
    total += cls * cls;
  }
  return total;
}

std::uint64_t predicted_gap(int m, int k, const Order& L) {
  Regime r = classify(m, k, L);
  if (r.full()) return 0;
  switch (r.tag) {
    case RegimeTag::L_INFINITE: return static_cast<std::uint64_t>(m - k);
    case RegimeTag::L_GT_K:
      return h_m_dim(m, L) - binomial(2 * m, m) + static_cast<std::uint64_t>(m - k);
    case RegimeTag::L_LE_K_ODD:
    case RegimeTag::TRIVIAL_L1: return 0;
    case RegimeTag::L_LE_K_EVEN: return 1;
  }
  return 0;
}

namespace {

Rational norm2(const Operator& v) { return hs_inner(v, v).re; }

Operator violating_part(const Operator& a, const std::function<bool(const Term&)>& bad) {
  std::vector<Term> out;
  for (const Term& t : a.terms()) {
    if (bad(t)) out.push_back(t);
  }
  return Operator::from_terms(a.m(), std::move(out));
}

MembershipCheck zero_check(std::string name, const Rational& value) {
  return {std::move(name), std::nullopt, ComplexRational(value), value.is_zero()};
}

MembershipCheck skew_check(const Operator& a) {
  return zero_check("skew-hermitian", norm2(a + dagger(a)));
}

MembershipCheck weight_check(const Operator& a) {
  Operator v = violating_part(a, [](const Term& t) { return popcount(t.bra) != popcount(t.ket); });
  return zero_check("w(b)=w(b')", norm2(v));
}

MembershipCheck symmetry_check(const Operator& a, const Order& L) {
  Operator v = violating_part(a, [&](const Term& t) {
    return !L.congruent(popcount(t.bra), popcount(t.ket));
  });
  return zero_check("symmetric mod L", norm2(v));
}

MembershipCheck trace_check(std::string name, const Operator& a, const Operator& c) {
  ComplexRational value = trace(op_mul(a, c));
  bool ok = value.re.is_zero() && value.im.is_zero();
  return {std::move(name), std::nullopt, value, ok};
}

}  // namespace

bool u1_member(const Operator& a) {
  if (!is_skew_hermitian(a)) return false;
  for (const Term& t : a.terms()) {
    if (popcount(t.bra) != popcount(t.ket)) return false;
  }
  return true;
}

MembershipVerdict membership(const Operator& a, int m, int k, const Order& L) {
  if (a.m() != m) {
    throw Error(ErrorCode::DimensionMismatch, "operator has m=" + std::to_string(a.m()) +
                                                  ", expected " + std::to_string(m));
  }
  Regime r = classify(m, k, L);
  MembershipVerdict v;
  switch (r.tag) {
    case RegimeTag::L_INFINITE:
    case RegimeTag::L_GT_K:
      v.checks.push_back(weight_check(a));
      v.checks.push_back(skew_check(a));
      for (int l = k + 1; l <= m; ++l) {
        v.checks.push_back(trace_check("tr(A·C_" + std::to_string(l) + ")", a, build_C(l, m)));
      }
      break;
    case RegimeTag::L_LE_K_ODD:
    case RegimeTag::TRIVIAL_L1:
      v.checks.push_back(symmetry_check(a, L));
      v.checks.push_back(skew_check(a));
      break;
    case RegimeTag::L_LE_K_EVEN:
      v.checks.push_back(symmetry_check(a, L));
      v.checks.push_back(skew_check(a));
      if (!r.full()) {
        MembershipCheck c = trace_check("tr(A·Z^{⊗m})", a, Operator::z_string(full_mask(m), m));
        c.alias = "tr(A·C_m)";
        v.checks.push_back(std::move(c));
      }
      break;
  }
  v.member = true;
  for (const auto& c : v.checks) v.member = v.member && c.ok;
  return v;
}

DimsReport dims_report(int m, int k, const Order& L) {
  DimsReport d;
  d.regime = classify(m, k, L);
  d.h_m = h_m_dim(m, L);
  d.gap = predicted_gap(m, k, L);
  d.h_k = d.h_m - d.gap;
  return d;
}

Json verdict_to_json(const MembershipVerdict& v) {
  Json checks = Json::array();
  for (const auto& c : v.checks) {
    Json j{{"name", c.name}, {"value", c.value.to_string()}, {"ok", c.ok}};
    if (c.alias) j["alias"] = *c.alias;
    checks.push_back(std::move(j));
  }
  return {{"member", v.member}, {"checks", checks}};
}

Json dims_to_json(const DimsReport& d) {
  return {{"m", d.regime.m},       {"k", d.regime.k},   {"L", d.regime.L.to_string()},
          {"regime", regime_tag_name(d.regime.tag)},  {"h_m_dim", d.h_m},
          {"h_k_dim", d.h_k},      {"gap", d.gap}};
}

}  // namespace symlie
