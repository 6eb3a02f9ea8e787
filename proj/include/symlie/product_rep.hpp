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
#include <string>
#include <vector>

#include "symlie/bitstring.hpp"
#include "symlie/closure.hpp"
#include "symlie/symmetry.hpp"
#include "symlie/synthesis.hpp"

namespace symlie {

enum class InvolutionTag { PLUS_I, MINUS_I, Z_LIKE, MINUS_Z_LIKE };

std::string involution_tag_name(InvolutionTag tag);

/** P u P† equals the tagged matrix (I, -I, Z or -Z). */
struct InvolutionClass {
  InvolutionTag tag = InvolutionTag::PLUS_I;
  Mat2 P = mat2_identity();

  bool z_like() const noexcept {
    return tag == InvolutionTag::Z_LIKE || tag == InvolutionTag::MINUS_Z_LIKE;
  }
};

inline constexpr double kInvolutionTolerance = 1e-8;

/** Throws NotInvolution unless u is unitary with u² = I. */
InvolutionClass classify_involution(const Mat2& u);

/**
 * Single-qubit involution by name (I, X, Y, Z, H, each optionally prefixed
 * by '-') or as a JSON 2×2 matrix of [re, im] pairs.
 */
Mat2 parse_involution(const std::string& text);

/** "[Z,Z,I,I]", "Z,Z,I,I" or a JSON array of names or matrices. */
std::vector<Mat2> parse_involution_list(const std::string& text);

/** b_j = 1 iff u^(j) has eigenvalues {+1, -1}; qubit 1 first. */
BitString involution_mask(const std::vector<InvolutionClass>& classes);

/** At most k of the involutions are Z-like. */
bool universality_predicate(const std::vector<InvolutionClass>& classes, int k);

/**
 * iZ^d from k-local generators commuting with Z^bmask. Requires
 * weight(bmask) <= k and k >= 2 whenever weight(d) > k.
 */
Expr synth_product_diag(const BitString& d, const BitString& bmask, int m, int k,
                        ExprPool* pool = nullptr);

struct ProductReport {
  std::vector<InvolutionClass> classes;
  BitString bmask;
  int k = 2;
  bool predicate = false;
  bool oracle_ran = false;
  bool universal = false;
  std::uint64_t h_k_dim = 0;
  std::uint64_t h_m_dim = 0;
};

/** Classification and predicate only. */
ProductReport product_report(const std::vector<InvolutionClass>& classes, int k);

/**
 * Adds closure-oracle dims for k and m under the rotated-frame symmetry
 * Z^bmask; universal is their equality. m <= 5.
 */
ProductReport product_closure_check(const std::vector<InvolutionClass>& classes, int m, int k,
                                    const ClosureOptions& options = {});

/** {"classes": [...], "bmask": "0101", "universal": bool, "dims": {...}} */
Json product_report_to_json(const ProductReport& r);

}  // namespace symlie
