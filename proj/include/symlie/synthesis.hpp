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

#include <cstddef>
#include <memory>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "symlie/bitstring.hpp"
#include "symlie/operator.hpp"
#include "symlie/operator_io.hpp"
#include "symlie/symmetry.hpp"

namespace symlie {

enum class ExprKind { Leaf, Bracket, LinComb };

/** Generator leaves are k-local symmetric; auxiliary leaves are i|b><b|. */
enum class LeafTag { Generator, AuxDiagonal };

struct ExprNode;
using Expr = std::shared_ptr<const ExprNode>;

struct ExprNode {
  ExprKind kind = ExprKind::Leaf;
  LeafTag tag = LeafTag::Generator;
  Operator op;
  Expr left;
  Expr right;
  std::vector<std::pair<Rational, Expr>> terms;
  std::size_t hash = 0;
};

/**
 * Builds expression nodes with structural sharing: a node equal in content
 * to one already built is returned instead of a copy.
 */
class ExprPool {
 public:
  Expr leaf(Operator op, LeafTag tag = LeafTag::Generator);
  Expr bracket(const Expr& left, const Expr& right);
  Expr lincomb(std::vector<std::pair<Rational, Expr>> terms);
  Expr scale(const Rational& s, const Expr& e) { return lincomb({{s, e}}); }
  std::size_t size() const noexcept { return count_; }

 private:
  Expr intern(ExprNode node);

  std::unordered_map<std::size_t, std::vector<Expr>> table_;
  std::size_t count_ = 0;
};

/** Memoised evaluation; shared subexpressions are evaluated once. */
class Evaluator {
 public:
  explicit Evaluator(int m) : m_(m) {}
  const Operator& eval(const Expr& e);

 private:
  int m_;
  std::unordered_map<const ExprNode*, Operator> memo_;
};

/** Throws MalformedExpression on null children or mixed qubit counts. */
Operator eval_expr(const Expr& e, int m);

struct ExprStats {
  std::size_t nodes = 0;
  std::size_t generator_leaves = 0;
  std::size_t aux_leaves = 0;
  std::size_t brackets = 0;
  std::size_t depth = 0;
};

/** Counts distinct nodes of the shared graph. */
ExprStats expr_stats(const Expr& e);

enum class Parity { Odd, Even };

/**
 * E = |0..0><1..1| on supp(b), alpha = (i/2)(E + E†), beta = (1/2)(E - E†).
 * Even: A = (i/2)(|0..0><0..0| - |1..1><1..1|) on supp(b).
 * Odd: A = i|0..0><0..0| on supp(b) minus its last qubit.
 */
struct LadderTriple {
  BitString b;
  int n = 0;
  Parity parity = Parity::Odd;
  Operator A;
  Operator alpha;
  Operator beta;
  /** [alpha, beta] */
  Operator alpha_beta;
  /** Pauli coefficient of Z^b in [alpha, beta]. */
  ComplexRational z_coefficient;
};

/**
 * Builds the triple and checks [A, alpha] = -beta and [A, beta] = alpha
 * exactly. Requires weight(b) = n >= 2.
 */
LadderTriple ladder_triple(const BitString& b, int n, Parity parity);

/** iZ^b from m-qubit generators symmetric under L = n; n odd, n <= k, n < m. */
Expr synth_diag_odd(const BitString& b, int m, int n, int k, ExprPool* pool = nullptr);

/** iZ^b for n even, n <= k, n < m and weight(b) < m (EXCLUDED_TARGET otherwise). */
Expr synth_diag_even(const BitString& b, int m, int n, int k, ExprPool* pool = nullptr);

/** Dispatches on the parity of n. */
Expr synth_diag(const BitString& b, int m, int n, int k, ExprPool* pool = nullptr);

/**
 * F(b, b') = |b><b'| - |b'><b| from transpositions, weight-raising ladders
 * and auxiliary diagonal leaves i|c><c|.
 */
Expr synth_offdiag(const BitString& b, const BitString& b2, int m, int n, int k,
                   ExprPool* pool = nullptr);

/** F(b, b') = |b><b'| - |b'><b|. */
Operator f_operator(const BitString& b, const BitString& b2);

/** "Z:1110" for iZ^b, "F:1100:0011" for F(b, b'). */
struct TargetSpec {
  enum class Kind { ZString, Flip } kind = Kind::ZString;
  BitString b;
  BitString b2;

  static TargetSpec parse(const std::string& text);
  Operator op() const;
  std::string to_string() const;
};

struct Certificate {
  int m = 1;
  int k = 1;
  ChargeRule symmetry;
  Operator target;
  Expr root;
};

struct CertificateCheck {
  bool ok = false;
  bool value_matches = false;
  ExprStats stats;
  std::vector<std::string> problems;
};

/**
 * Re-checks a certificate from the tree alone: generator leaves are k-local,
 * skew-Hermitian and symmetric; auxiliary leaves are i|c><c|; the evaluated
 * root equals the target.
 */
CertificateCheck verify_certificate(const Certificate& cert);

/**
 * {"m", "k", "symmetry": {"mask", "modulus"}, "target": operator, "root": node}
 * with node = {"kind": "leaf", "tag": "generator"|"aux_diagonal", "op"} |
 * {"kind": "bracket", "left", "right"} | {"kind": "lincomb", "terms":
 * [{"scalar", "expr"}]}. A shared node carries "id" at its first occurrence
 * and later occurrences are {"ref": id}.
 */
Json certificate_to_json(const Certificate& cert);
Certificate certificate_from_json(const Json& j);

Json expr_to_json(const Expr& e);
Expr expr_from_json(const Json& j, ExprPool& pool);

}  // namespace symlie
