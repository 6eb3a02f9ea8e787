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

#include "symlie/operator.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "symlie/errors.hpp"

namespace symlie {

namespace {

constexpr std::uint64_t key_of(Word bra, Word ket) {
  return (static_cast<std::uint64_t>(bra) << 32) | ket;
}

void check_width(int m) {
  if (m < 1 || m > kMaxQubits) {
    throw Error(ErrorCode::OutOfRange, "qubit count " + std::to_string(m) + " unsupported");
  }
}

void check_same_m(const Operator& a, const Operator& b) {
  if (a.m() != b.m()) {
    throw Error(ErrorCode::DimensionMismatch, "operators act on " + std::to_string(a.m()) +
                                                  " and " + std::to_string(b.m()) + " qubits");
  }
}

// Sorts by (bra, ket), sums duplicates and prunes zeros in place.
void canonicalize(std::vector<Term>& terms) {
  std::sort(terms.begin(), terms.end(), [](const Term& x, const Term& y) {
    return key_of(x.bra, x.ket) < key_of(y.bra, y.ket);
  });
  std::size_t out = 0;
  for (std::size_t i = 0; i < terms.size();) {
    std::size_t j = i + 1;
    ComplexRational sum = std::move(terms[i].coeff);
    while (j < terms.size() && terms[j].bra == terms[i].bra && terms[j].ket == terms[i].ket) {
      sum += terms[j].coeff;
      ++j;
    }
    if (!sum.is_zero()) {
      Word bra = terms[i].bra;
      Word ket = terms[i].ket;
      terms[out++] = Term{bra, ket, std::move(sum)};
    }
    i = j;
  }
  terms.resize(out);
}

// i^p for p mod 4.
ComplexRational i_power(int p) {
  switch (p & 3) {
    case 0: return {Rational(1)};
    case 1: return {Rational(0), Rational(1)};
    case 2: return {Rational(-1)};
    default: return {Rational(0), Rational(-1)};
  }
}

}  // namespace

Operator::Operator(int m) : m_(m) { check_width(m); }

Operator Operator::from_terms(int m, std::vector<Term> terms) {
  Operator op(m);
  Word mask = full_mask(m);
  for (const Term& t : terms) {
    if ((t.bra & ~mask) != 0 || (t.ket & ~mask) != 0) {
      throw Error(ErrorCode::OutOfRange, "matrix unit outside the " + std::to_string(m) +
                                             "-qubit register");
    }
  }
  canonicalize(terms);
  op.terms_ = std::move(terms);
  return op;
}

Operator Operator::identity(int m) {
  check_width(m);
  std::vector<Term> terms;
  terms.reserve(std::size_t{1} << m);
  for (Word b = 0; b < (Word{1} << m); ++b) terms.push_back({b, b, Rational(1)});
  Operator op(m);
  op.terms_ = std::move(terms);
  return op;
}

Operator Operator::matrix_unit(Word bra, Word ket, int m, ComplexRational coeff) {
  return from_terms(m, {Term{bra, ket, std::move(coeff)}});
}

Operator Operator::z_string(Word mask, int m) {
  check_width(m);
  if ((mask & ~full_mask(m)) != 0) throw Error(ErrorCode::OutOfRange, "Z mask too wide");
  Operator op(m);
  op.terms_.reserve(std::size_t{1} << m);
  for (Word b = 0; b < (Word{1} << m); ++b) {
    op.terms_.push_back({b, b, Rational(popcount(b & mask) % 2 == 0 ? 1 : -1)});
  }
  return op;
}

Operator Operator::from_pauli(const PauliTerm& term) {
  int m = term.x_mask.m();
  if (term.z_mask.m() != m) throw Error(ErrorCode::DimensionMismatch, "Pauli masks of unequal width");
  Operator op(m);
  if (term.coeff.is_zero()) return op;
  Word x = term.x_mask.bits();
  Word z = term.z_mask.bits();
  ComplexRational phase = term.coeff * i_power(popcount(x & z));
  std::vector<Term> terms;
  terms.reserve(std::size_t{1} << m);
  for (Word c = 0; c < (Word{1} << m); ++c) {
    terms.push_back({c ^ x, c, popcount(c & z) % 2 == 0 ? phase : -phase});
  }
  canonicalize(terms);
  op.terms_ = std::move(terms);
  return op;
}

Operator Operator::pauli(char which, int qubit, int m) {
  check_width(m);
  if (qubit < 1 || qubit > m) throw Error(ErrorCode::OutOfRange, "qubit index out of range");
  Word bit = qubit_bit(qubit, m);
  Word x = 0;
  Word z = 0;
  switch (which) {
    case 'I': break;
    case 'X': x = bit; break;
    case 'Y': x = bit; z = bit; break;
    case 'Z': z = bit; break;
    default: throw Error(ErrorCode::Parse, std::string("unknown Pauli '") + which + "'");
  }
  return from_pauli({BitString(x, m), BitString(z, m), Rational(1)});
}

bool Operator::is_diagonal() const noexcept {
  return std::all_of(terms_.begin(), terms_.end(), [](const Term& t) { return t.bra == t.ket; });
}

ComplexRational Operator::coeff(Word bra, Word ket) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), key_of(bra, ket),
                             [](const Term& t, std::uint64_t k) { return key_of(t.bra, t.ket) < k; });
  if (it != terms_.end() && it->bra == bra && it->ket == ket) return it->coeff;
  return {};
}

Operator Operator::operator-() const {
  Operator out(*this);
  for (Term& t : out.terms_) t.coeff = -t.coeff;
  return out;
}

Operator& Operator::operator*=(const ComplexRational& scalar) {
  if (scalar.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (Term& t : terms_) t.coeff = t.coeff * scalar;
  return *this;
}

Operator operator+(const Operator& a, const Operator& b) {
  return linear_combine(std::vector<ScaledOperator>{{Rational(1), &a}, {Rational(1), &b}});
}

Operator operator-(const Operator& a, const Operator& b) {
  return linear_combine(std::vector<ScaledOperator>{{Rational(1), &a}, {Rational(-1), &b}});
}

std::size_t Operator::hash() const noexcept {
  std::size_t h = static_cast<std::size_t>(m_);
  for (const Term& t : terms_) {
    h = h * 1000003 ^ key_of(t.bra, t.ket);
    h = h * 1000003 ^ t.coeff.hash();
  }
  return h;
}

Operator linear_combine(const std::vector<ScaledOperator>& pairs) {
  if (pairs.empty()) throw Error(ErrorCode::EmptyInput, "linear_combine of nothing");
  int m = pairs.front().op->m();
  std::size_t total = 0;
  for (const auto& p : pairs) {
    check_same_m(*pairs.front().op, *p.op);
    total += p.op->size();
  }
  std::vector<Term> terms;
  terms.reserve(total);
  for (const auto& p : pairs) {
    if (p.scalar.is_zero()) continue;
    for (const Term& t : p.op->terms()) terms.push_back({t.bra, t.ket, t.coeff * p.scalar});
  }
  return Operator::from_terms(m, std::move(terms));
}

Operator linear_combine(const std::vector<std::pair<ComplexRational, Operator>>& pairs) {
  std::vector<ScaledOperator> refs;
  refs.reserve(pairs.size());
  for (const auto& [s, op] : pairs) refs.push_back({s, &op});
  return linear_combine(refs);
}

namespace {

// Appends sign·(a·b) unit products to `out`.
void accumulate_product(const Operator& a, const Operator& b, bool negate, std::vector<Term>& out) {
  const auto& bt = b.terms();
  for (const Term& x : a.terms()) {
    auto lo = std::lower_bound(bt.begin(), bt.end(), x.ket,
                               [](const Term& t, Word bra) { return t.bra < bra; });
    for (auto it = lo; it != bt.end() && it->bra == x.ket; ++it) {
      ComplexRational c = x.coeff * it->coeff;
      out.push_back({x.bra, it->ket, negate ? -c : std::move(c)});
    }
  }
}

}  // namespace

Operator op_mul(const Operator& a, const Operator& b) {
  check_same_m(a, b);
  std::vector<Term> out;
  accumulate_product(a, b, false, out);
  return Operator::from_terms(a.m(), std::move(out));
}

Operator commutator(const Operator& a, const Operator& b) {
  check_same_m(a, b);
  std::vector<Term> out;
  accumulate_product(a, b, false, out);
  accumulate_product(b, a, true, out);
  return Operator::from_terms(a.m(), std::move(out));
}

Operator dagger(const Operator& a) {
  std::vector<Term> terms;
  terms.reserve(a.size());
  for (const Term& t : a.terms()) terms.push_back({t.ket, t.bra, t.coeff.conj()});
  return Operator::from_terms(a.m(), std::move(terms));
}

bool is_skew_hermitian(const Operator& a) {
  for (const Term& t : a.terms()) {
    if (t.bra == t.ket) {
      if (!t.coeff.re.is_zero()) return false;
    } else if (!(a.coeff(t.ket, t.bra) == -t.coeff.conj())) {
      return false;
    }
  }
  return true;
}

ComplexRational hs_inner(const Operator& a, const Operator& b) {
  check_same_m(a, b);
  ComplexRational sum;
  const auto& at = a.terms();
  const auto& bt = b.terms();
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < at.size() && j < bt.size()) {
    std::uint64_t ka = key_of(at[i].bra, at[i].ket);
    std::uint64_t kb = key_of(bt[j].bra, bt[j].ket);
    if (ka < kb) {
      ++i;
    } else if (kb < ka) {
      ++j;
    } else {
      sum += at[i].coeff.conj() * bt[j].coeff;
      ++i;
      ++j;
    }
  }
  return sum;
}

ComplexRational trace(const Operator& a) {
  ComplexRational sum;
  for (const Term& t : a.terms()) {
    if (t.bra == t.ket) sum += t.coeff;
  }
  return sum;
}

Word support_mask(const Operator& a) {
  // Qubit q is idle iff every unit is diagonal on q and the coefficient is
  // invariant under flipping q on both sides, i.e. A = I_q ⊗ A'.
  Word mask = 0;
  for (int q = 1; q <= a.m(); ++q) {
    Word bit = qubit_bit(q, a.m());
    bool idle = true;
    for (const Term& t : a.terms()) {
      if (((t.bra ^ t.ket) & bit) != 0 || !(a.coeff(t.bra ^ bit, t.ket ^ bit) == t.coeff)) {
        idle = false;
        break;
      }
    }
    if (!idle) mask |= bit;
  }
  return mask;
}

std::vector<int> support(const Operator& a) { return BitString(support_mask(a), a.m()).support(); }

Operator embed_local(const Operator& w, const std::vector<int>& qubits, int m) {
  check_width(m);
  int q = static_cast<int>(qubits.size());
  if (q != w.m()) {
    throw Error(ErrorCode::DimensionMismatch, "local operator on " + std::to_string(w.m()) +
                                                  " qubits placed on " + std::to_string(q));
  }
  Word used = 0;
  for (int s : qubits) {
    if (s < 1 || s > m) throw Error(ErrorCode::OutOfRange, "qubit index " + std::to_string(s) + " out of range");
    if ((used & qubit_bit(s, m)) != 0) {
      throw Error(ErrorCode::DuplicateIndex, "qubit " + std::to_string(s) + " listed twice");
    }
    used |= qubit_bit(s, m);
  }
  std::vector<Word> rest_bits;
  for (int r = 1; r <= m; ++r) {
    if ((used & qubit_bit(r, m)) == 0) rest_bits.push_back(qubit_bit(r, m));
  }
  auto scatter = [&](Word local) {
    Word out = 0;
    for (int t = 1; t <= q; ++t) {
      if ((local & qubit_bit(t, q)) != 0) out |= qubit_bit(qubits[static_cast<std::size_t>(t - 1)], m);
    }
    return out;
  };
  std::vector<Term> terms;
  terms.reserve(w.size() << rest_bits.size());
  for (const Term& t : w.terms()) {
    Word bra = scatter(t.bra);
    Word ket = scatter(t.ket);
    for (Word r = 0; r < (Word{1} << rest_bits.size()); ++r) {
      Word extra = 0;
      for (std::size_t i = 0; i < rest_bits.size(); ++i) {
        if ((r >> i) & 1) extra |= rest_bits[i];
      }
      terms.push_back({bra | extra, ket | extra, t.coeff});
    }
  }
  return Operator::from_terms(m, std::move(terms));
}

Operator build_C(int l, int m) {
  check_width(m);
  if (l < 0 || l > m) throw Error(ErrorCode::OutOfRange, "weight " + std::to_string(l) + " outside 0..m");
  auto binom = [](int n, int r) -> std::int64_t {
    if (r < 0 || r > n) return 0;
    std::int64_t v = 1;
    for (int i = 1; i <= r; ++i) v = v * (n - r + i) / i;
    return v;
  };
  // Diagonal entry at a state of weight w is the Krawtchouk value
  // Σ_j (-1)^j C(w, j) C(m - w, l - j).
  std::vector<std::int64_t> by_weight(static_cast<std::size_t>(m + 1));
  for (int w = 0; w <= m; ++w) {
    std::int64_t v = 0;
    for (int j = 0; j <= l; ++j) v += (j % 2 == 0 ? 1 : -1) * binom(w, j) * binom(m - w, l - j);
    by_weight[static_cast<std::size_t>(w)] = v;
  }
  std::vector<Term> terms;
  for (Word b = 0; b < (Word{1} << m); ++b) {
    std::int64_t v = by_weight[static_cast<std::size_t>(popcount(b))];
    if (v != 0) terms.push_back({b, b, Rational(v)});
  }
  return Operator::from_terms(m, std::move(terms));
}

std::vector<PauliTerm> pauli_expand(const Operator& a) {
  int m = a.m();
  std::map<std::uint64_t, ComplexRational> acc;
  ComplexRational scale{Rational::pow2(-m)};
  for (const Term& t : a.terms()) {
    Word x = t.bra ^ t.ket;
    ComplexRational base = t.coeff * scale;
    for (Word z = 0; z < (Word{1} << m); ++z) {
      // A[b,b'] contributes A[b,b'] · P[b',b] / 2^m to the coefficient of P.
      int phase = popcount(x & z) + 2 * (popcount(t.bra & z) & 1);
      acc[key_of(x, z)] += base * i_power(phase);
    }
  }
  std::vector<PauliTerm> out;
  for (auto& [key, c] : acc) {
    if (c.is_zero()) continue;
    out.push_back({BitString(static_cast<Word>(key >> 32), m),
                   BitString(static_cast<Word>(key & 0xffffffffu), m), std::move(c)});
  }
  return out;
}

Operator pauli_reassemble(int m, const std::vector<PauliTerm>& terms) {
  std::vector<Term> all;
  for (const PauliTerm& p : terms) {
    if (p.x_mask.m() != m) throw Error(ErrorCode::DimensionMismatch, "Pauli term width mismatch");
    Operator piece = Operator::from_pauli(p);
    all.insert(all.end(), piece.terms().begin(), piece.terms().end());
  }
  return Operator::from_terms(m, std::move(all));
}

}  // namespace symlie
