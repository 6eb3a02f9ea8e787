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

// Dense exact reference implementation used to derive expected values.
// Shares only the scalar type with the library under test.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "symlie/operator.hpp"
#include "symlie/rational.hpp"

namespace oracle {

using symlie::ComplexRational;
using symlie::Rational;

struct Matrix {
  std::size_t n = 0;
  std::vector<ComplexRational> a;

  Matrix() = default;
  explicit Matrix(std::size_t dim) : n(dim), a(dim * dim) {}

  ComplexRational& at(std::size_t r, std::size_t c) { return a[r * n + c]; }
  const ComplexRational& at(std::size_t r, std::size_t c) const { return a[r * n + c]; }
  bool operator==(const Matrix& o) const { return n == o.n && a == o.a; }
};

Matrix identity(std::size_t n);
Matrix unit(std::size_t n, std::size_t r, std::size_t c, ComplexRational v = Rational(1));
Matrix add(const Matrix& x, const Matrix& y);
Matrix sub(const Matrix& x, const Matrix& y);
Matrix scale(const ComplexRational& s, const Matrix& x);
Matrix mul(const Matrix& x, const Matrix& y);
Matrix bracket(const Matrix& x, const Matrix& y);
Matrix adjoint(const Matrix& x);
ComplexRational trace(const Matrix& x);
Matrix kron(const Matrix& x, const Matrix& y);

/** Kronecker product of 'I', 'X', 'Y', 'Z' factors, leftmost factor first. */
Matrix pauli_string(const std::string& s);

/** Z on every qubit set in `mask` (qubit 1 leftmost). */
Matrix z_mask(unsigned mask, int m);

/** W on the listed qubits (1-based, in order), identity elsewhere. */
Matrix on_qubits(const Matrix& w, const std::vector<int>& qubits, int m);

Matrix from_operator(const symlie::Operator& op);

int popcount(unsigned x);

/**
 * Skew-Hermitian basis of every k-local operator allowed by `allowed(b, b')`
 * on each k-subset (local indices).
 */
std::vector<Matrix> local_generators(int m, int k,
                                     const std::function<bool(unsigned, unsigned)>& allowed);

/** Real dimension of skew-Hermitian matrices supported on allowed units. */
std::uint64_t count_allowed(int m, const std::function<bool(unsigned, unsigned)>& allowed);

/** Exact real span of skew-Hermitian matrices, dense elimination. */
class Span {
 public:
  explicit Span(std::size_t n) : n_(n) {}
  bool add(const Matrix& x);
  bool contains(const Matrix& x) const;
  std::size_t dim() const { return rows_.size(); }

 private:
  std::vector<Rational> coords(const Matrix& x) const;
  std::vector<Rational> residual(std::vector<Rational> v) const;

  std::size_t n_;
  std::vector<std::vector<Rational>> rows_;
  std::vector<std::size_t> pivots_;
};

/** Bracket every new element with every element until nothing is added. */
struct Closure {
  Span span;
  std::vector<Matrix> elements;
};
Closure closure(const std::vector<Matrix>& gens);

/** Coefficient of the Pauli string Z^mask in x: tr(Z^mask x) / 2^m. */
ComplexRational z_coefficient(const Matrix& x, unsigned mask, int m);

}  // namespace oracle
