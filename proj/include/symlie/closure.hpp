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
#include <functional>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "symlie/operator.hpp"
#include "symlie/operator_io.hpp"
#include "symlie/symmetry.hpp"

namespace symlie {

/** k-local symmetric skew-Hermitian generators in deterministic order. */
struct GeneratorSet {
  int m = 1;
  int k = 1;
  ChargeRule rule;
  std::vector<Operator> ops;
};

/**
 * Enumerates, for every qubit subset S of size min(k, m) in lexicographic
 * order, the local symmetric basis on S: i|c><c| on the diagonal and the
 * pair i(|c><c'| + |c'><c|), |c><c'| - |c'><c| for c < c'.
 */
GeneratorSet generator_basis(int m, int k, const Order& L);
GeneratorSet generator_basis(int m, int k, const ChargeRule& rule);

/** Sparse vector over Q, entries sorted by column. */
using SparseVector = std::vector<std::pair<std::uint32_t, Rational>>;

/**
 * Real coordinates of a skew-Hermitian operator in the matrix-unit basis:
 * for b < b' the pair (Re A[b,b'], Im A[b,b']) and Im A[b,b] on the diagonal.
 * There are exactly 4^m coordinates, so the map is a real isomorphism.
 */
SparseVector real_coordinates(const Operator& a);

/**
 * Subspace of Q^n in reduced row echelon form.
 *
 * Every row has a unit pivot, and no other row has an entry in that column,
 * so reducing a vector is a single pass over its pivot entries. The form is
 * unique for a given span, which keeps results independent of the order in
 * which spanning vectors arrive.
 */
class EchelonBasis {
 public:
  explicit EchelonBasis(std::size_t columns = 0);

  std::size_t columns() const noexcept { return row_of_pivot_.size(); }
  std::size_t rank() const noexcept { return rows_.size(); }
  const std::vector<SparseVector>& rows() const noexcept { return rows_; }

  /** v minus its projection along the pivot columns; zero iff v is in the span. */
  SparseVector reduce(const SparseVector& v) const;
  /** Inserts a vector already reduced against this basis; ignores zero. */
  bool insert_reduced(SparseVector residual);
  bool insert(const SparseVector& v) { return insert_reduced(reduce(v)); }

 private:
  std::vector<std::int32_t> row_of_pivot_;
  std::vector<SparseVector> rows_;
};

/**
 * Real span of skew-Hermitian operators on m qubits.
 *
 * `basis()` holds the linearly independent operators in insertion order; an
 * echelon form of their coordinates answers membership exactly.
 */
class Subspace {
 public:
  explicit Subspace(int m = 1);

  int m() const noexcept { return m_; }
  std::size_t dim() const noexcept { return basis_.size(); }
  const std::vector<Operator>& basis() const noexcept { return basis_; }
  const EchelonBasis& echelon() const noexcept { return echelon_; }

  /** Adds `op` when it is outside the span; returns whether dim grew. */
  bool insert(const Operator& op);
  /** Inserts `op` given its coordinates already reduced against this span. */
  bool insert_with_residual(const Operator& op, SparseVector residual);
  bool contains(const Operator& op) const;

 private:
  int m_;
  std::vector<Operator> basis_;
  EchelonBasis echelon_;
};

/** True iff op lies in the real span of S.basis. */
bool subspace_contains(const Subspace& s, const Operator& op);

struct ClosureOptions {
  unsigned threads = 1;
  /** Seed the generators in reverse enumeration order. */
  bool reverse_generators = false;
  /**
   * Stop as soon as the span fills the whole symmetric space, which cannot
   * grow further.
   */
  bool stop_at_ambient = true;
  /** Called after each processed frontier element with (processed, dim). */
  std::function<void(std::size_t, std::size_t)> progress;
};

struct ClosureStats {
  std::size_t independent_generators = 0;
  std::size_t brackets = 0;
  std::size_t frontier_processed = 0;
  bool reached_ambient = false;
};

/**
 * Smallest bracket-closed real subspace containing the generators.
 *
 * The span is seeded with the generators; every inserted element is then
 * bracketed with each linearly independent generator and nonzero residuals
 * are inserted, in creation order, until nothing new appears. Brackets run
 * concurrently while insertion stays sequential, so the result is identical
 * for every thread count.
 */
Subspace lie_closure(const GeneratorSet& gens, const ClosureOptions& options = {},
                     ClosureStats* stats = nullptr);

/**
 * Floating-point cross-check of dim lie_closure: same saturation with an
 * orthonormal basis and rank tolerance 1e-9 relative to the largest norm.
 */
std::size_t lie_closure_dim_float(const GeneratorSet& gens, const ClosureOptions& options = {});

/**
 * Random real rational combination of `ops`: each operator is kept with
 * probability `density` and weighted by p/q, |p| <= 5, 1 <= q <= 4.
 */
Operator random_combination(const std::vector<Operator>& ops, std::mt19937_64& rng,
                            double density = 0.5);

/** {"m": int, "dim": int, "basis": [operator...]} */
Json subspace_to_json(const Subspace& s);
Subspace subspace_from_json(const Json& j);

}  // namespace symlie
