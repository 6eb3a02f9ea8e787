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
#include <initializer_list>
#include <utility>
#include <vector>

#include "symlie/bitstring.hpp"
#include "symlie/rational.hpp"

namespace symlie {

/** Coefficient of the matrix unit |bra><ket|. */
struct Term {
  Word bra = 0;
  Word ket = 0;
  ComplexRational coeff;

  friend bool operator==(const Term&, const Term&) = default;
};

/**
 * coeff · ∏_j σ_j where σ_j is I, X, Z or Y according to the (x, z) bits at
 * qubit j: (0,0) I, (1,0) X, (0,1) Z, (1,1) Y.
 */
struct PauliTerm {
  BitString x_mask;
  BitString z_mask;
  ComplexRational coeff;

  BitString support() const { return x_mask | z_mask; }
};

/**
 * Sparse operator on m qubits with exact Gaussian-rational coefficients,
 * stored as matrix units |bra><ket| sorted lexicographically by (bra, ket).
 * No stored coefficient is ever zero.
 */
class Operator {
 public:
  explicit Operator(int m = 1);

  /** Sorts, merges repeated units and drops zeros. */
  static Operator from_terms(int m, std::vector<Term> terms);

  static Operator identity(int m);
  static Operator matrix_unit(Word bra, Word ket, int m, ComplexRational coeff = Rational(1));
  /** Z^b: product of Z on the set bits of `mask`. */
  static Operator z_string(Word mask, int m);
  static Operator from_pauli(const PauliTerm& term);
  /** Single-qubit Pauli ('I', 'X', 'Y', 'Z') on `qubit`, identity elsewhere. */
  static Operator pauli(char which, int qubit, int m);

  int m() const noexcept { return m_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_diagonal() const noexcept;

  ComplexRational coeff(Word bra, Word ket) const;

  Operator operator-() const;
  Operator& operator*=(const ComplexRational& scalar);
  friend Operator operator*(const ComplexRational& scalar, Operator op) {
    op *= scalar;
    return op;
  }
  friend Operator operator+(const Operator& a, const Operator& b);
  friend Operator operator-(const Operator& a, const Operator& b);
  friend bool operator==(const Operator&, const Operator&) = default;

  std::size_t hash() const noexcept;

 private:
  int m_;
  std::vector<Term> terms_;
};

struct ScaledOperator {
  ComplexRational scalar;
  const Operator* op;
};

/** Σ scalar·op over all pairs; operands must share m. */
Operator linear_combine(const std::vector<std::pair<ComplexRational, Operator>>& pairs);
Operator linear_combine(const std::vector<ScaledOperator>& pairs);

Operator op_mul(const Operator& a, const Operator& b);
/** AB − BA. */
Operator commutator(const Operator& a, const Operator& b);
Operator dagger(const Operator& a);
bool is_skew_hermitian(const Operator& a);

/** tr(A†B). */
ComplexRational hs_inner(const Operator& a, const Operator& b);
ComplexRational trace(const Operator& a);

/** Mask of qubits on which the operator acts non-trivially. */
Word support_mask(const Operator& a);
/** 1-based indices of the qubits on which the operator acts non-trivially. */
std::vector<int> support(const Operator& a);
inline bool is_k_local(const Operator& a, int k) { return popcount(support_mask(a)) <= k; }

/**
 * Places W (acting on |S| qubits, its qubit t mapped to S[t-1]) into an
 * m-qubit register with identity on the remaining qubits.
 */
Operator embed_local(const Operator& w, const std::vector<int>& qubits, int m);

/** C_l = Σ_{w(b)=l} Z^b, a diagonal operator. */
Operator build_C(int l, int m);

/** Exact Pauli-basis expansion, sorted by (x_mask, z_mask). */
std::vector<PauliTerm> pauli_expand(const Operator& a);
Operator pauli_reassemble(int m, const std::vector<PauliTerm>& terms);

}  // namespace symlie
