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

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "symlie/operator.hpp"
#include "symlie/operator_io.hpp"

namespace symlie {

/** Multiplicative order of a phase: a positive integer or infinite. */
class Order {
 public:
  static Order infinite() { return Order(0); }
  static Order finite(std::uint64_t n);
  /** "INF" (any case) or a positive integer. */
  static Order parse(const std::string& text);

  bool is_infinite() const noexcept { return value_ == 0; }
  bool is_finite() const noexcept { return value_ != 0; }
  /** Throws for the infinite order. */
  std::uint64_t value() const;

  /** a ≡ b (mod L); plain equality when L is infinite. */
  bool congruent(std::int64_t a, std::int64_t b) const noexcept {
    if (value_ == 0) return a == b;
    std::int64_t d = a - b;
    return d % static_cast<std::int64_t>(value_) == 0;
  }

  /** lcm, absorbing infinity. */
  Order lcm(const Order& other) const;
  std::string to_string() const;

  friend bool operator==(const Order&, const Order&) = default;

 private:
  explicit Order(std::uint64_t v) : value_(v) {}
  std::uint64_t value_;  // 0 encodes infinity
};

/**
 * Additive charge used to decide symmetry of matrix units: the unit
 * |b><b'| is symmetric iff w(b & mask) ≡ w(b' & mask) (mod modulus).
 * Uniform cyclic symmetries use mask = all qubits; the per-qubit Z/2Z
 * product symmetries use mask = the set of Z-like qubits and modulus 2.
 */
struct ChargeRule {
  int m = 1;
  Word mask = 1;
  Order modulus = Order::finite(1);

  static ChargeRule cyclic(int m, Order L) { return {m, full_mask(m), L}; }
  static ChargeRule product(int m, Word z_like_mask) { return {m, z_like_mask, Order::finite(2)}; }

  int charge(Word b) const noexcept { return popcount(b & mask); }
  bool allows(Word bra, Word ket) const noexcept {
    return modulus.congruent(charge(bra), charge(ket));
  }

  /** Number of residue classes that occur among basis states. */
  std::vector<std::uint64_t> class_sizes() const;
  /** Real dimension of the symmetric skew-Hermitian operators, by counting. */
  std::uint64_t ambient_dim() const;

  friend bool operator==(const ChargeRule&, const ChargeRule&) = default;
};

using Complex = std::complex<double>;
/** Row-major 2×2 complex matrix. */
using Mat2 = std::array<Complex, 4>;

Mat2 mat2_identity();
Mat2 mat2_mul(const Mat2& a, const Mat2& b);
Mat2 mat2_adjoint(const Mat2& a);

/** One generator of the single-qubit representation u(g). */
struct GeneratorDesc {
  enum class Kind { Matrix, Phases, Irrational };
  Kind kind = Kind::Matrix;
  Mat2 matrix = mat2_identity();
  /** Phases form: diag(e^{2πi·phase1}, e^{2πi·phase2}). */
  Rational phase1;
  Rational phase2;
  /** Irrational form: relative phase e^{i·angle}, of infinite order. */
  double angle = 0.0;

  static GeneratorDesc from_matrix(const Mat2& m);
  static GeneratorDesc from_phases(Rational p1, Rational p2);
  static GeneratorDesc irrational(double angle);

  /** Floating matrix of the generator in the standard basis. */
  Mat2 as_matrix() const;
};

struct GroupSpec {
  std::vector<GeneratorDesc> generators;
};

/** (P, L) after simultaneous diagonalisation. */
struct ReducedSymmetry {
  Mat2 P = mat2_identity();
  /** True when P is exactly the identity and no basis change is needed. */
  bool identity_frame = true;
  Order L = Order::finite(1);
  /** Fraction of a turn of a phase of exact order L (1/L), when L is finite. */
  std::optional<Rational> omega_exponent;
  /** n(g) per input generator. */
  std::vector<Order> generator_orders;
};

inline constexpr double kCommuteTolerance = 1e-10;
inline constexpr double kUnitaryTolerance = 1e-8;
inline constexpr double kOrderTolerance = 1e-9;
inline constexpr std::uint64_t kOrderDenominatorCap = 4096;
inline constexpr double kSnapTolerance = 1e-9;

/**
 * Unitary P with P·u(g)·P† diagonal for all generators. Exact identity when
 * every generator is already diagonal; otherwise built from the eigenvectors
 * of the first non-diagonal generator, eigenvalues sorted by principal
 * argument in [0, 2π) with ties kept in input order.
 */
Mat2 simultaneous_diagonalize(const GroupSpec& spec);
Order compute_L(const GroupSpec& spec);
ReducedSymmetry reduce(const GroupSpec& spec);

/**
 * Order of e^{iθ}: continued-fraction approximation of θ/2π with denominator
 * at most 4096 accepted within 1e-9, otherwise infinite.
 */
Order phase_order(double theta);

/** Every stored unit satisfies w(bra) ≡ w(ket) mod L (rotated frame). */
bool is_symmetric(const Operator& a, const Order& L);
bool is_symmetric(const Operator& a, const ChargeRule& rule);

/** Diagonal projector onto states of weight ≡ l (mod L); L finite. */
Operator sector_projector(int l, const Order& L, int m);
/** Diagonal projector onto states of weight exactly w. */
Operator weight_projector(int w, int m);

struct SectorGrading {
  Order L;
  int m;
  std::vector<Operator> projectors;
};

/** Π_0..Π_{L-1} for finite L, or the m+1 exact-weight projectors for L = INF. */
SectorGrading sector_grading(const Order& L, int m);

/**
 * Conjugates an operator by P^{⊗m} (or its inverse) in floating point and
 * snaps every entry back to a nearby rational; fails when some entry is not
 * within 1e-9 of a rational with denominator ≤ 2^20.
 */
Operator to_rotated_frame(const Operator& a, const ReducedSymmetry& sym);
Operator from_rotated_frame(const Operator& a, const ReducedSymmetry& sym);

/** Nearest rational within `tol` with denominator ≤ cap, if any. */
std::optional<Rational> snap_rational(double value, double tol, std::uint64_t cap);

GroupSpec group_spec_from_json(const Json& j);
Json reduced_to_json(const ReducedSymmetry& r);

}  // namespace symlie
