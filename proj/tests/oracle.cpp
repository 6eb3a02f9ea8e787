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

#include "oracle.hpp"

#include <stdexcept>

namespace oracle {

Matrix identity(std::size_t n) {
  Matrix out(n);
  for (std::size_t i = 0; i < n; ++i) out.at(i, i) = Rational(1);
  return out;
}

Matrix unit(std::size_t n, std::size_t r, std::size_t c, ComplexRational v) {
  Matrix out(n);
  out.at(r, c) = v;
  return out;
}

Matrix add(const Matrix& x, const Matrix& y) {
  Matrix out(x.n);
  for (std::size_t i = 0; i < x.a.size(); ++i) out.a[i] = x.a[i] + y.a[i];
  return out;
}

Matrix sub(const Matrix& x, const Matrix& y) {
  Matrix out(x.n);
  for (std::size_t i = 0; i < x.a.size(); ++i) out.a[i] = x.a[i] - y.a[i];
  return out;
}

Matrix scale(const ComplexRational& s, const Matrix& x) {
  Matrix out(x.n);
  for (std::size_t i = 0; i < x.a.size(); ++i) out.a[i] = s * x.a[i];
  return out;
}

Matrix mul(const Matrix& x, const Matrix& y) {
  Matrix out(x.n);
  for (std::size_t i = 0; i < x.n; ++i) {
    for (std::size_t k = 0; k < x.n; ++k) {
      const ComplexRational& xik = x.at(i, k);
      if (xik.is_zero()) continue;
      for (std::size_t j = 0; j < x.n; ++j) {
        if (!y.at(k, j).is_zero()) out.at(i, j) += xik * y.at(k, j);
      }
    }
  }
  return out;
}

Matrix bracket(const Matrix& x, const Matrix& y) { return sub(mul(x, y), mul(y, x)); }

Matrix adjoint(const Matrix& x) {
  Matrix out(x.n);
  for (std::size_t i = 0; i < x.n; ++i) {
    for (std::size_t j = 0; j < x.n; ++j) out.at(j, i) = x.at(i, j).conj();
  }
  return out;
}

ComplexRational trace(const Matrix& x) {
  ComplexRational t;
  for (std::size_t i = 0; i < x.n; ++i) t += x.at(i, i);
  return t;
}

Matrix kron(const Matrix& x, const Matrix& y) {
  Matrix out(x.n * y.n);
  for (std::size_t a = 0; a < x.n; ++a) {
    for (std::size_t b = 0; b < x.n; ++b) {
      for (std::size_t c = 0; c < y.n; ++c) {
        for (std::size_t d = 0; d < y.n; ++d) out.at(a * y.n + c, b * y.n + d) = x.at(a, b) * y.at(c, d);
      }
    }
  }
  return out;
}

namespace {

Matrix single(char p) {
  Matrix out(2);
  const ComplexRational i = ComplexRational::i();
  switch (p) {
    case 'I': out.at(0, 0) = Rational(1); out.at(1, 1) = Rational(1); break;
    case 'X': out.at(0, 1) = Rational(1); out.at(1, 0) = Rational(1); break;
    case 'Y': out.at(0, 1) = -i; out.at(1, 0) = i; break;
    case 'Z': out.at(0, 0) = Rational(1); out.at(1, 1) = Rational(-1); break;
    default: throw std::invalid_argument("bad Pauli letter");
  }
  return out;
}

}  // namespace

Matrix pauli_string(const std::string& s) {
  Matrix out = identity(1);
  for (char c : s) out = kron(out, single(c));
  return out;
}

Matrix z_mask(unsigned mask, int m) {
  std::string s;
  for (int q = 1; q <= m; ++q) s += (mask >> (m - q)) & 1U ? 'Z' : 'I';
  return pauli_string(s);
}

Matrix on_qubits(const Matrix& w, const std::vector<int>& qubits, int m) {
  const std::size_t n = std::size_t{1} << m;
  const int q = static_cast<int>(qubits.size());
  auto bit = [m](std::size_t x, int qubit) { return (x >> (m - qubit)) & 1U; };
  auto local = [&](std::size_t x) {
    std::size_t l = 0;
    for (int t = 0; t < q; ++t) l = (l << 1) | bit(x, qubits[static_cast<std::size_t>(t)]);
    return l;
  };
  std::size_t outside = 0;
  for (int qubit = 1; qubit <= m; ++qubit) {
    bool in = false;
    for (int s : qubits) in = in || s == qubit;
    if (!in) outside |= std::size_t{1} << (m - qubit);
  }
  Matrix out(n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      if ((r & outside) != (c & outside)) continue;
      out.at(r, c) = w.at(local(r), local(c));
    }
  }
  return out;
}

Matrix from_operator(const symlie::Operator& op) {
  Matrix out(std::size_t{1} << op.m());
  for (const auto& t : op.terms()) out.at(t.bra, t.ket) = t.coeff;
  return out;
}

int popcount(unsigned x) {
  int c = 0;
  for (; x != 0; x &= x - 1) ++c;
  return c;
}

std::vector<Matrix> local_generators(int m, int k,
                                     const std::function<bool(unsigned, unsigned)>& allowed) {
  std::vector<Matrix> out;
  const std::size_t d = std::size_t{1} << k;
  const ComplexRational i = ComplexRational::i();
  for (unsigned subset = 0; subset < (1U << m); ++subset) {
    if (popcount(subset) != k) continue;
    std::vector<int> qubits;
    for (int q = 1; q <= m; ++q) {
      if ((subset >> (m - q)) & 1U) qubits.push_back(q);
    }
    for (std::size_t r = 0; r < d; ++r) {
      for (std::size_t c = r; c < d; ++c) {
        // Allowed-ness is judged on the global indices the local pair maps into.
        Matrix probe = on_qubits(unit(d, r, c), qubits, m);
        bool ok = true;
        for (std::size_t x = 0; x < probe.n && ok; ++x) {
          for (std::size_t y = 0; y < probe.n && ok; ++y) {
            if (!probe.at(x, y).is_zero()) ok = allowed(static_cast<unsigned>(x), static_cast<unsigned>(y));
          }
        }
        if (!ok) continue;
        if (r == c) {
          out.push_back(on_qubits(unit(d, r, r, i), qubits, m));
        } else {
          out.push_back(on_qubits(add(unit(d, r, c, i), unit(d, c, r, i)), qubits, m));
          out.push_back(on_qubits(sub(unit(d, r, c), unit(d, c, r)), qubits, m));
        }
      }
    }
  }
  return out;
}

std::uint64_t count_allowed(int m, const std::function<bool(unsigned, unsigned)>& allowed) {
  std::uint64_t count = 0;
  for (unsigned b = 0; b < (1U << m); ++b) {
    for (unsigned c = 0; c < (1U << m); ++c) count += allowed(b, c) ? 1 : 0;
  }
  return count;
}

std::vector<Rational> Span::coords(const Matrix& x) const {
  std::vector<Rational> v;
  v.reserve(n_ * n_);
  for (std::size_t r = 0; r < n_; ++r) {
    for (std::size_t c = 0; c < n_; ++c) {
      if (r < c) {
        v.push_back(x.at(r, c).re);
        v.push_back(x.at(r, c).im);
      } else if (r == c) {
        v.push_back(x.at(r, c).im);
      }
    }
  }
  return v;
}

std::vector<Rational> Span::residual(std::vector<Rational> v) const {
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const Rational f = v[pivots_[i]];
    if (f.is_zero()) continue;
    for (std::size_t j = 0; j < v.size(); ++j) {
      if (!rows_[i][j].is_zero()) v[j] -= f * rows_[i][j];
    }
  }
  return v;
}

bool Span::add(const Matrix& x) {
  std::vector<Rational> v = residual(coords(x));
  std::size_t p = 0;
  while (p < v.size() && v[p].is_zero()) ++p;
  if (p == v.size()) return false;
  Rational inv = v[p].reciprocal();
  for (auto& e : v) e *= inv;
  for (auto& row : rows_) {
    Rational f = row[p];
    if (f.is_zero()) continue;
    for (std::size_t j = 0; j < v.size(); ++j) {
      if (!v[j].is_zero()) row[j] -= f * v[j];
    }
  }
  rows_.push_back(std::move(v));
  pivots_.push_back(p);
  return true;
}

bool Span::contains(const Matrix& x) const {
  for (const auto& e : residual(coords(x))) {
    if (!e.is_zero()) return false;
  }
  return true;
}

Closure closure(const std::vector<Matrix>& gens) {
  if (gens.empty()) throw std::invalid_argument("no generators");
  Closure c{Span(gens.front().n), {}};
  for (const auto& g : gens) {
    if (c.span.add(g)) c.elements.push_back(g);
  }
  for (std::size_t next = 0; next < c.elements.size(); ++next) {
    for (std::size_t j = 0; j < next; ++j) {
      Matrix b = bracket(c.elements[next], c.elements[j]);
      if (c.span.add(b)) c.elements.push_back(std::move(b));
    }
  }
  return c;
}

ComplexRational z_coefficient(const Matrix& x, unsigned mask, int m) {
  ComplexRational t = trace(mul(z_mask(mask, m), x));
  return t * ComplexRational(Rational(1, std::int64_t{1} << m));
}

}  // namespace oracle
