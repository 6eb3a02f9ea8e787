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

#include "symlie/synthesis.hpp"

#include <algorithm>
#include <functional>
#include <unordered_set>

#include "symlie/characterization.hpp"
#include "symlie/errors.hpp"
#include "symlie/product_rep.hpp"

namespace symlie {

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

bool same_node(const ExprNode& a, const ExprNode& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case ExprKind::Leaf: return a.tag == b.tag && a.op == b.op;
    case ExprKind::Bracket: return a.left == b.left && a.right == b.right;
    case ExprKind::LinComb:
      if (a.terms.size() != b.terms.size()) return false;
      for (std::size_t i = 0; i < a.terms.size(); ++i) {
        if (a.terms[i].second != b.terms[i].second || a.terms[i].first != b.terms[i].first) {
          return false;
        }
      }
      return true;
  }
  return false;
}

std::size_t ptr_hash(const Expr& e) { return std::hash<const ExprNode*>{}(e.get()); }

}  // namespace

Expr ExprPool::intern(ExprNode node) {
  auto& bucket = table_[node.hash];
  for (const Expr& e : bucket) {
    if (same_node(*e, node)) return e;
  }
  Expr e = std::make_shared<const ExprNode>(std::move(node));
  bucket.push_back(e);
  ++count_;
  return e;
}

Expr ExprPool::leaf(Operator op, LeafTag tag) {
  ExprNode n;
  n.kind = ExprKind::Leaf;
  n.tag = tag;
  n.hash = mix(mix(1, static_cast<std::size_t>(tag)), op.hash());
  n.op = std::move(op);
  return intern(std::move(n));
}

Expr ExprPool::bracket(const Expr& left, const Expr& right) {
  if (!left || !right) throw Error(ErrorCode::MalformedExpression, "bracket with a missing operand");
  ExprNode n;
  n.kind = ExprKind::Bracket;
  n.left = left;
  n.right = right;
  n.hash = mix(mix(2, ptr_hash(left)), ptr_hash(right));
  return intern(std::move(n));
}

Expr ExprPool::lincomb(std::vector<std::pair<Rational, Expr>> terms) {
  ExprNode n;
  n.kind = ExprKind::LinComb;
  for (auto& [s, e] : terms) {
    if (!e) throw Error(ErrorCode::MalformedExpression, "linear combination with a missing term");
    if (s.is_zero()) continue;
    auto it = std::find_if(n.terms.begin(), n.terms.end(),
                           [&](const auto& t) { return t.second == e; });
    if (it != n.terms.end()) {
      it->first += s;
    } else {
      n.terms.emplace_back(std::move(s), std::move(e));
    }
  }
  std::erase_if(n.terms, [](const auto& t) { return t.first.is_zero(); });
  n.hash = 3;
  for (const auto& [s, e] : n.terms) n.hash = mix(mix(n.hash, s.hash()), ptr_hash(e));
  return intern(std::move(n));
}

const Operator& Evaluator::eval(const Expr& e) {
  if (!e) throw Error(ErrorCode::MalformedExpression, "missing expression node");
  auto it = memo_.find(e.get());
  if (it != memo_.end()) return it->second;
  Operator value(m_);
  switch (e->kind) {
    case ExprKind::Leaf:
      if (e->op.m() != m_) {
        throw Error(ErrorCode::MalformedExpression,
                    "leaf on " + std::to_string(e->op.m()) + " qubits in an m=" +
                        std::to_string(m_) + " expression");
      }
      value = e->op;
      break;
    case ExprKind::Bracket: {
      const Operator& l = eval(e->left);
      const Operator& r = eval(e->right);
      value = commutator(l, r);
      break;
    }
    case ExprKind::LinComb: {
      std::vector<ScaledOperator> parts;
      for (const auto& [s, child] : e->terms) parts.push_back({ComplexRational(s), &eval(child)});
      if (!parts.empty()) value = linear_combine(parts);
      break;
    }
  }
  return memo_.emplace(e.get(), std::move(value)).first->second;
}

Operator eval_expr(const Expr& e, int m) {
  Evaluator ev(m);
  return ev.eval(e);
}

namespace {

void for_each_node(const Expr& root, const std::function<void(const Expr&)>& fn) {
  std::unordered_set<const ExprNode*> seen;
  std::vector<Expr> stack{root};
  while (!stack.empty()) {
    Expr e = stack.back();
    stack.pop_back();
    if (!e || !seen.insert(e.get()).second) continue;
    fn(e);
    if (e->kind == ExprKind::Bracket) {
      stack.push_back(e->right);
      stack.push_back(e->left);
    } else if (e->kind == ExprKind::LinComb) {
      for (auto it = e->terms.rbegin(); it != e->terms.rend(); ++it) stack.push_back(it->second);
    }
  }
}

}  // namespace

ExprStats expr_stats(const Expr& e) {
  ExprStats s;
  std::unordered_map<const ExprNode*, std::size_t> depth;
  std::function<std::size_t(const Expr&)> depth_of = [&](const Expr& x) -> std::size_t {
    if (!x) return 0;
    auto it = depth.find(x.get());
    if (it != depth.end()) return it->second;
    std::size_t d = 0;
    if (x->kind == ExprKind::Bracket) {
      d = std::max(depth_of(x->left), depth_of(x->right));
    } else if (x->kind == ExprKind::LinComb) {
      for (const auto& t : x->terms) d = std::max(d, depth_of(t.second));
    }
    return depth[x.get()] = d + 1;
  };
  for_each_node(e, [&](const Expr& x) {
    ++s.nodes;
    if (x->kind == ExprKind::Bracket) ++s.brackets;
    if (x->kind == ExprKind::Leaf) {
      if (x->tag == LeafTag::Generator) {
        ++s.generator_leaves;
      } else {
        ++s.aux_leaves;
      }
    }
  });
  s.depth = depth_of(e);
  return s;
}

namespace {

const ComplexRational kI = ComplexRational::i();

Operator iz(Word b, int m) {
  Operator z = Operator::z_string(b, m);
  z *= kI;
  return z;
}

std::vector<int> qubits_of(Word w, int m) { return BitString(w, m).support(); }

/** X = Σ r_d iZ^d for diagonal skew-Hermitian X. */
std::vector<std::pair<Word, Rational>> iz_coefficients(const Operator& x) {
  std::vector<std::pair<Word, Rational>> out;
  for (const PauliTerm& t : pauli_expand(x)) {
    if (t.x_mask.bits() != 0 || !t.coeff.re.is_zero()) {
      throw Error(ErrorCode::Internal, "expected a diagonal skew-Hermitian intermediate");
    }
    out.emplace_back(t.z_mask.bits(), t.coeff.im);
  }
  return out;
}

void require(bool cond, ErrorCode code, const std::string& what) {
  if (!cond) throw Error(code, what);
}

void check_common(const BitString& b, int m, int n, int k) {
  require(b.m() == m, ErrorCode::DimensionMismatch, "target width differs from m");
  require(m >= 2 && m <= 8, ErrorCode::OutOfRange, "synthesis supports 2 <= m <= 8");
  require(k >= 1 && k <= m, ErrorCode::RegimeViolation, "locality k must satisfy 1 <= k <= m");
  require(n >= 1 && n <= k, ErrorCode::RegimeViolation,
          "order n=" + std::to_string(n) + " must satisfy 1 <= n <= k=" + std::to_string(k));
  require(n < m, ErrorCode::RegimeViolation, "order n must be smaller than m");
}

class DiagSynth {
 public:
  DiagSynth(int m, int n, int k, ExprPool& pool) : m_(m), n_(n), k_(k), pool_(pool), ev_(m) {}

  Expr z(Word b) {
    auto it = memo_.find(b);
    if (it != memo_.end()) return it->second;
    Expr e;
    if (popcount(b) <= k_) {
      e = pool_.leaf(iz(b, m_));
    } else if (n_ % 2 == 1 && n_ == 1) {
      e = synth_product_diag(BitString(b, m_), BitString(0, m_), m_, k_, &pool_);
    } else if (n_ % 2 == 1) {
      e = odd_step(b);
    } else {
      if (popcount(b) == m_) {
        throw Error(ErrorCode::ExcludedTarget,
                    "iZ^" + word_to_string(b, m_) + " has weight m and is excluded for even order");
      }
      e = even_step(b);
    }
    memo_.emplace(b, e);
    return e;
  }

 private:
  Expr expand(const Operator& x) {
    std::vector<std::pair<Rational, Expr>> terms;
    for (auto& [d, r] : iz_coefficients(x)) terms.emplace_back(r, z(d));
    return pool_.lincomb(std::move(terms));
  }

  /**
   * Subtracts every iZ^d outside `keep` (all lighter than `weight`) and
   * rescales so the kept strings have coefficient one each.
   */
  Expr isolate(const Expr& e, const std::vector<Word>& keep, int weight) {
    std::vector<std::pair<Rational, Expr>> terms{{Rational(1), e}};
    std::optional<Rational> kappa;
    std::size_t kept = 0;
    for (auto& [d, r] : iz_coefficients(ev_.eval(e))) {
      if (std::find(keep.begin(), keep.end(), d) != keep.end()) {
        if (kappa && *kappa != r) throw Error(ErrorCode::Internal, "unequal top-weight coefficients");
        kappa = r;
        ++kept;
        continue;
      }
      if (popcount(d) >= weight) throw Error(ErrorCode::Internal, "unexpected heavy remainder term");
      terms.emplace_back(-r, z(d));
    }
    if (!kappa || kept != keep.size()) throw Error(ErrorCode::Internal, "target direction vanished");
    Rational inv = kappa->reciprocal();
    for (auto& t : terms) t.first *= inv;
    return pool_.lincomb(std::move(terms));
  }

  Expr odd_step(Word b) {
    auto q = qubits_of(b, m_);
    Word b1 = 0;
    for (int i = 0; i < n_; ++i) b1 |= qubit_bit(q[static_cast<std::size_t>(i)], m_);
    Word b2 = b & ~b1;
    LadderTriple t = ladder_triple(BitString(b1, m_), n_, Parity::Odd);
    Expr e1 = expand(op_mul(t.A, Operator::z_string(b2, m_)));
    Expr beta = pool_.leaf(t.beta);
    Expr e3 = pool_.bracket(pool_.bracket(e1, beta), beta);
    return isolate(e3, {b}, popcount(b));
  }

  /** Σ_{x in A} iZ^{J \ x} through the ladder on A. */
  Expr t_sum(Word J, Word A) {
    auto rest = qubits_of(J & ~A, m_);
    Word j = qubit_bit(rest.back(), m_);
    Word b2 = J & ~A & ~j;
    LadderTriple t = ladder_triple(BitString(A, m_), n_, Parity::Even);
    Expr alpha = pool_.leaf(t.alpha);
    Expr beta = pool_.leaf(t.beta);
    Expr e1 = expand(op_mul(t.A, Operator::z_string(b2, m_)));
    Expr e2 = pool_.bracket(e1, beta);
    Expr e3 = pool_.bracket(e2, expand(op_mul(t.A, Operator::z_string(j, m_))));
    Expr e4 = pool_.bracket(e3, alpha);
    std::vector<Word> keep;
    for (int x : qubits_of(A, m_)) keep.push_back(J & ~qubit_bit(x, m_));
    return isolate(e4, keep, popcount(J) - 1);
  }

  Expr even_step(Word b) {
    const int l = popcount(b);
    int p = 1;
    while ((b & qubit_bit(p, m_)) != 0) ++p;
    const Word pbit = qubit_bit(p, m_);
    const Word J = b | pbit;
    const Rational c1 = Rational(static_cast<std::int64_t>(binomial(l, n_ - 1)));
    const Rational c2 = Rational(static_cast<std::int64_t>(binomial(l - 1, n_ - 2)));
    const Rational c3 = Rational(static_cast<std::int64_t>(binomial(l - 1, n_ - 1)));
    const Rational with_p = c1.reciprocal();
    const Rational without_p = -(c2 / (c3 * c1));
    std::vector<std::pair<Rational, Expr>> terms;
    // Subsets A of J with |A| = n, in increasing order of their bit words.
    for (Word A = J; A != 0; A = (A - 1) & J) {
      if (popcount(A) != n_) continue;
      terms.emplace_back((A & pbit) != 0 ? with_p : without_p, t_sum(J, A));
    }
    std::reverse(terms.begin(), terms.end());
    Expr e = pool_.lincomb(std::move(terms));
    if (ev_.eval(e) != iz(b, m_)) throw Error(ErrorCode::Internal, "even elimination mismatch");
    return e;
  }

  int m_;
  int n_;
  int k_;
  ExprPool& pool_;
  Evaluator ev_;
  std::unordered_map<Word, Expr> memo_;
};

Expr run_diag(const BitString& b, int m, int n, int k, ExprPool* pool) {
  ExprPool local;
  ExprPool& p = pool != nullptr ? *pool : local;
  DiagSynth s(m, n, k, p);
  return s.z(b.bits());
}

}  // namespace

LadderTriple ladder_triple(const BitString& b, int n, Parity parity) {
  require(b.weight() == n, ErrorCode::WeightMismatch,
          "weight(" + b.to_string() + ") != n=" + std::to_string(n));
  require(n >= 2, ErrorCode::RegimeViolation, "ladder triples need n >= 2");
  const int m = b.m();
  const auto q = b.support();
  const Word all = full_mask(n);
  const ComplexRational half(Rational(1, 2));
  const ComplexRational ihalf(Rational(0), Rational(1, 2));

  LadderTriple t;
  t.b = b;
  t.n = n;
  t.parity = parity;
  Operator E = embed_local(Operator::matrix_unit(0, all, n), q, m);
  Operator Ed = dagger(E);
  t.alpha = ihalf * (E + Ed);
  t.beta = half * (E - Ed);
  if (parity == Parity::Even) {
    t.A = embed_local(Operator::from_terms(n, {{0, 0, ihalf}, {all, all, -ihalf}}), q, m);
  } else {
    std::vector<int> head(q.begin(), q.end() - 1);
    t.A = embed_local(Operator::matrix_unit(0, 0, n - 1, kI), head, m);
  }
  if (commutator(t.A, t.alpha) != -t.beta || commutator(t.A, t.beta) != t.alpha) {
    throw Error(ErrorCode::Internal, "ladder relations fail for b=" + b.to_string());
  }
  t.alpha_beta = commutator(t.alpha, t.beta);
  for (const PauliTerm& p : pauli_expand(t.alpha_beta)) {
    if (p.x_mask.bits() == 0 && p.z_mask == b) t.z_coefficient = p.coeff;
  }
  return t;
}

Expr synth_diag_odd(const BitString& b, int m, int n, int k, ExprPool* pool) {
  check_common(b, m, n, k);
  require(n % 2 == 1, ErrorCode::RegimeViolation, "synth_diag_odd needs odd n");
  return run_diag(b, m, n, k, pool);
}

Expr synth_diag_even(const BitString& b, int m, int n, int k, ExprPool* pool) {
  check_common(b, m, n, k);
  require(n % 2 == 0, ErrorCode::RegimeViolation, "synth_diag_even needs even n");
  if (b.weight() == m) {
    throw Error(ErrorCode::ExcludedTarget,
                "iZ^" + b.to_string() + " has weight m and is excluded for even order");
  }
  return run_diag(b, m, n, k, pool);
}

Expr synth_diag(const BitString& b, int m, int n, int k, ExprPool* pool) {
  return n % 2 == 1 ? synth_diag_odd(b, m, n, k, pool) : synth_diag_even(b, m, n, k, pool);
}

Operator f_operator(const BitString& b, const BitString& b2) {
  require(b.m() == b2.m(), ErrorCode::DimensionMismatch, "bitstrings of different widths");
  return Operator::from_terms(b.m(), {{b.bits(), b2.bits(), Rational(1)},
                                      {b2.bits(), b.bits(), Rational(-1)}});
}

namespace {

/** F(c, c') for one transposition or one weight-n raise or lowering. */
Expr offdiag_move(Word c, Word c2, int m, ExprPool& pool, Evaluator& ev) {
  Word diff = c ^ c2;
  Expr e;
  if (popcount(c) == popcount(c2)) {
    Operator swap = Operator::from_terms(2, {{1, 2, kI}, {2, 1, kI}});
    e = pool.bracket(pool.leaf(embed_local(swap, qubits_of(diff, m), m)),
                     pool.leaf(Operator::matrix_unit(c, c, m, kI), LeafTag::AuxDiagonal));
  } else {
    Word low = popcount(c) < popcount(c2) ? c : c2;
    int n = popcount(diff);
    Operator E = embed_local(Operator::matrix_unit(0, full_mask(n), n), qubits_of(diff, m), m);
    Operator alpha = ComplexRational(Rational(0), Rational(1, 2)) * (E + dagger(E));
    e = pool.scale(Rational(2), pool.bracket(pool.leaf(alpha),
                                             pool.leaf(Operator::matrix_unit(low, low, m, kI),
                                                       LeafTag::AuxDiagonal)));
  }
  Operator want = f_operator(BitString(c, m), BitString(c2, m));
  const Operator& got = ev.eval(e);
  if (got == want) return e;
  if (got == -want) return pool.scale(Rational(-1), e);
  throw Error(ErrorCode::Internal, "elementary move has the wrong shape");
}

}  // namespace

Expr synth_offdiag(const BitString& b, const BitString& b2, int m, int n, int k, ExprPool* pool) {
  check_common(b, m, n, k);
  require(b2.m() == m, ErrorCode::DimensionMismatch, "target width differs from m");
  require(b != b2, ErrorCode::RegimeViolation, "F(b, b) is zero; b and b' must differ");
  require(k >= 2, ErrorCode::RegimeViolation, "transpositions need k >= 2");
  require((b.weight() - b2.weight()) % n == 0, ErrorCode::WeightMismatch,
          "weights of " + b.to_string() + " and " + b2.to_string() + " differ mod " +
              std::to_string(n));
  ExprPool local;
  ExprPool& p = pool != nullptr ? *pool : local;
  if (b.weight() > b2.weight()) return p.scale(Rational(-1), synth_offdiag(b2, b, m, n, k, &p));

  const Word target = b2.bits();
  std::vector<Word> path{b.bits()};
  Word c = b.bits();
  while (popcount(c) < popcount(target)) {
    Word d = 0;
    int need = n;
    for (bool prefer : {true, false}) {
      for (int q = 1; q <= m && need > 0; ++q) {
        Word bit = qubit_bit(q, m);
        if ((c & bit) != 0 || (d & bit) != 0) continue;
        if (((target & bit) != 0) != prefer) continue;
        d |= bit;
        --need;
      }
    }
    c |= d;
    path.push_back(c);
  }
  while (c != target) {
    Word extra = c & ~target;
    Word missing = target & ~c;
    Word r = qubit_bit(qubits_of(extra, m).front(), m);
    Word s = qubit_bit(qubits_of(missing, m).front(), m);
    c ^= r | s;
    path.push_back(c);
  }

  Evaluator ev(m);
  Expr e = offdiag_move(path[0], path[1], m, p, ev);
  for (std::size_t i = 2; i < path.size(); ++i) {
    e = p.bracket(e, offdiag_move(path[i - 1], path[i], m, p, ev));
  }
  if (ev.eval(e) != f_operator(b, b2)) throw Error(ErrorCode::Internal, "transitivity chain mismatch");
  return e;
}

TargetSpec TargetSpec::parse(const std::string& text) {
  TargetSpec t;
  auto fail = [&] { throw Error(ErrorCode::Parse, "target must be Z:<bits> or F:<bits>:<bits>, got '" + text + "'"); };
  if (text.size() < 3 || text[1] != ':') fail();
  if (text[0] == 'Z') {
    t.kind = Kind::ZString;
    t.b = BitString::parse(text.substr(2));
    t.b2 = t.b;
  } else if (text[0] == 'F') {
    auto colon = text.find(':', 2);
    if (colon == std::string::npos) fail();
    t.kind = Kind::Flip;
    t.b = BitString::parse(text.substr(2, colon - 2));
    t.b2 = BitString::parse(text.substr(colon + 1));
    if (t.b.m() != t.b2.m()) throw Error(ErrorCode::DimensionMismatch, "target bitstrings differ in width");
  } else {
    fail();
  }
  return t;
}

Operator TargetSpec::op() const {
  return kind == Kind::ZString ? iz(b.bits(), b.m()) : f_operator(b, b2);
}

std::string TargetSpec::to_string() const {
  return kind == Kind::ZString ? "Z:" + b.to_string() : "F:" + b.to_string() + ":" + b2.to_string();
}

CertificateCheck verify_certificate(const Certificate& cert) {
  CertificateCheck out;
  if (!cert.root) {
    out.problems.push_back("certificate has no root expression");
    return out;
  }
  out.stats = expr_stats(cert.root);
  std::size_t index = 0;
  for_each_node(cert.root, [&](const Expr& e) {
    if (e->kind != ExprKind::Leaf) return;
    const Operator& op = e->op;
    std::string where = "leaf " + std::to_string(index++);
    if (op.m() != cert.m) {
      out.problems.push_back(where + ": acts on " + std::to_string(op.m()) + " qubits");
      return;
    }
    if (e->tag == LeafTag::Generator) {
      if (!is_k_local(op, cert.k)) {
        out.problems.push_back(where + ": support " + std::to_string(popcount(support_mask(op))) +
                               " exceeds k=" + std::to_string(cert.k));
      }
      if (!is_skew_hermitian(op)) out.problems.push_back(where + ": not skew-Hermitian");
      if (!is_symmetric(op, cert.symmetry)) out.problems.push_back(where + ": not symmetric");
    } else {
      bool ok = op.size() == 1 && op.terms()[0].bra == op.terms()[0].ket &&
                op.terms()[0].coeff == kI;
      if (!ok) out.problems.push_back(where + ": auxiliary leaf is not i|c><c|");
    }
  });
  try {
    out.value_matches = eval_expr(cert.root, cert.m) == cert.target;
    if (!out.value_matches) out.problems.push_back("evaluated certificate differs from its target");
  } catch (const Error& err) {
    out.problems.push_back(std::string("evaluation failed: ") + err.what());
  }
  out.ok = out.problems.empty() && out.value_matches;
  return out;
}

Json expr_to_json(const Expr& root) {
  std::unordered_map<const ExprNode*, std::size_t> uses;
  std::function<void(const Expr&)> count = [&](const Expr& e) {
    if (++uses[e.get()] > 1) return;
    if (e->kind == ExprKind::Bracket) {
      count(e->left);
      count(e->right);
    } else if (e->kind == ExprKind::LinComb) {
      for (const auto& t : e->terms) count(t.second);
    }
  };
  if (!root) throw Error(ErrorCode::MalformedExpression, "missing expression node");
  count(root);

  std::unordered_map<const ExprNode*, std::size_t> ids;
  std::function<Json(const Expr&)> emit = [&](const Expr& e) -> Json {
    auto found = ids.find(e.get());
    if (found != ids.end()) return {{"ref", found->second}};
    Json j;
    switch (e->kind) {
      case ExprKind::Leaf:
        j = {{"kind", "leaf"},
             {"tag", e->tag == LeafTag::Generator ? "generator" : "aux_diagonal"},
             {"op", operator_to_json(e->op)}};
        break;
      case ExprKind::Bracket:
        j = {{"kind", "bracket"}};
        j["left"] = emit(e->left);
        j["right"] = emit(e->right);
        break;
      case ExprKind::LinComb: {
        Json terms = Json::array();
        for (const auto& [s, child] : e->terms) {
          Json t{{"scalar", rational_to_json(s)}};
          t["expr"] = emit(child);
          terms.push_back(std::move(t));
        }
        j = {{"kind", "lincomb"}, {"terms", std::move(terms)}};
        break;
      }
    }
    if (uses[e.get()] > 1) {
      std::size_t id = ids.size();
      ids.emplace(e.get(), id);
      j["id"] = id;
    }
    return j;
  };
  return emit(root);
}

Expr expr_from_json(const Json& root, ExprPool& pool) {
  std::unordered_map<std::size_t, Expr> ids;
  std::function<Expr(const Json&)> parse = [&](const Json& j) -> Expr {
    if (j.contains("ref")) {
      auto it = ids.find(j.at("ref").get<std::size_t>());
      if (it == ids.end()) throw Error(ErrorCode::MalformedExpression, "reference to an unknown node");
      return it->second;
    }
    std::string kind = j.at("kind").get<std::string>();
    Expr e;
    if (kind == "leaf") {
      std::string tag = j.at("tag").get<std::string>();
      if (tag != "generator" && tag != "aux_diagonal") {
        throw Error(ErrorCode::MalformedExpression, "unknown leaf tag '" + tag + "'");
      }
      e = pool.leaf(operator_from_json(j.at("op")),
                    tag == "generator" ? LeafTag::Generator : LeafTag::AuxDiagonal);
    } else if (kind == "bracket") {
      Expr l = parse(j.at("left"));
      Expr r = parse(j.at("right"));
      e = pool.bracket(l, r);
    } else if (kind == "lincomb") {
      std::vector<std::pair<Rational, Expr>> terms;
      for (const Json& t : j.at("terms")) {
        Rational s = rational_from_json(t.at("scalar"));
        terms.emplace_back(std::move(s), parse(t.at("expr")));
      }
      e = pool.lincomb(std::move(terms));
    } else {
      throw Error(ErrorCode::MalformedExpression, "unknown node kind '" + kind + "'");
    }
    if (j.contains("id")) ids[j.at("id").get<std::size_t>()] = e;
    return e;
  };
  try {
    return parse(root);
  } catch (const Json::exception& err) {
    throw Error(ErrorCode::Parse, std::string("malformed certificate: ") + err.what());
  }
}

Json certificate_to_json(const Certificate& cert) {
  return {{"m", cert.m},
          {"k", cert.k},
          {"symmetry",
           {{"mask", word_to_string(cert.symmetry.mask, cert.m)},
            {"modulus", cert.symmetry.modulus.to_string()}}},
          {"target", operator_to_json(cert.target)},
          {"root", expr_to_json(cert.root)}};
}

Certificate certificate_from_json(const Json& j) {
  try {
    Certificate c;
    c.m = j.at("m").get<int>();
    c.k = j.at("k").get<int>();
    const Json& s = j.at("symmetry");
    BitString mask = BitString::parse(s.at("mask").get<std::string>());
    if (mask.m() != c.m) throw Error(ErrorCode::DimensionMismatch, "symmetry mask width differs from m");
    c.symmetry = ChargeRule{c.m, mask.bits(), Order::parse(s.at("modulus").get<std::string>())};
    c.target = operator_from_json(j.at("target"));
    ExprPool pool;
    c.root = expr_from_json(j.at("root"), pool);
    return c;
  } catch (const Json::exception& err) {
    throw Error(ErrorCode::Parse, std::string("malformed certificate: ") + err.what());
  }
}

}  // namespace symlie
