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

#include "symlie/symmetry.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <numeric>

#include "symlie/errors.hpp"

namespace symlie {

Order Order::finite(std::uint64_t n) {
  if (n == 0) throw Error(ErrorCode::OutOfRange, "order must be a positive integer");
  return Order(n);
}

Order Order::parse(const std::string& text) {
  std::string upper;
  for (char c : text) upper.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
  if (upper == "INF" || upper == "INFINITY") return infinite();
  if (upper.empty() || !std::all_of(upper.begin(), upper.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
    throw Error(ErrorCode::Parse, "order must be a positive integer or INF, got '" + text + "'");
  }
  return finite(std::stoull(upper));
}

std::uint64_t Order::value() const {
  if (value_ == 0) throw Error(ErrorCode::OutOfRange, "infinite order has no integer value");
  return value_;
}

Order Order::lcm(const Order& other) const {
  if (is_infinite() || other.is_infinite()) return infinite();
  return Order(std::lcm(value_, other.value_));
}

std::string Order::to_string() const { return value_ == 0 ? "INF" : std::to_string(value_); }

std::vector<std::uint64_t> ChargeRule::class_sizes() const {
  std::vector<std::uint64_t> sizes;
  int max_charge = popcount(mask);
  std::vector<std::uint64_t> by_charge(static_cast<std::size_t>(max_charge + 1));
  for (Word b = 0; b < (Word{1} << m); ++b) ++by_charge[static_cast<std::size_t>(charge(b))];
  if (modulus.is_infinite()) return by_charge;
  std::uint64_t L = modulus.value();
  sizes.assign(static_cast<std::size_t>(std::min<std::uint64_t>(L, by_charge.size())), 0);
  for (std::size_t c = 0; c < by_charge.size(); ++c) sizes[c % L] += by_charge[c];
  return sizes;
}

std::uint64_t ChargeRule::ambient_dim() const {
  std::uint64_t total = 0;
  for (std::uint64_t s : class_sizes()) total += s * s;
  return total;
}

Mat2 mat2_identity() { return {Complex(1), Complex(0), Complex(0), Complex(1)}; }

Mat2 mat2_mul(const Mat2& a, const Mat2& b) {
  return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
          a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}

Mat2 mat2_adjoint(const Mat2& a) {
  return {std::conj(a[0]), std::conj(a[2]), std::conj(a[1]), std::conj(a[3])};
}

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double max_abs_diff(const Mat2& a, const Mat2& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < 4; ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

bool is_diagonal(const Mat2& u) {
  return std::abs(u[1]) <= kCommuteTolerance && std::abs(u[2]) <= kCommuteTolerance;
}

double principal_arg(Complex z) {
  double a = std::arg(z);
  if (a < 0) a += kTwoPi;
  if (a >= kTwoPi) a -= kTwoPi;
  return a;
}

// Fractional part in [0, 1).
Rational frac(const Rational& r) {
  Rational f = r;
  double approx = std::floor(r.to_double());
  f -= Rational(static_cast<std::int64_t>(approx));
  while (f.sign() < 0) f += Rational(1);
  while (f >= Rational(1)) f -= Rational(1);
  return f;
}

Order order_of_turn_fraction(const Rational& turns) {
  Rational f = frac(turns);
  if (f.is_zero()) return Order::finite(1);
  // f = p/q in lowest terms: order is q.
  return Order::finite(static_cast<std::uint64_t>(f.denominator()));
}

}  // namespace

GeneratorDesc GeneratorDesc::from_matrix(const Mat2& m) {
  GeneratorDesc g;
  g.kind = Kind::Matrix;
  g.matrix = m;
  return g;
}

GeneratorDesc GeneratorDesc::from_phases(Rational p1, Rational p2) {
  GeneratorDesc g;
  g.kind = Kind::Phases;
  g.phase1 = std::move(p1);
  g.phase2 = std::move(p2);
  g.matrix = {std::polar(1.0, kTwoPi * g.phase1.to_double()), Complex(0), Complex(0),
              std::polar(1.0, kTwoPi * g.phase2.to_double())};
  return g;
}

GeneratorDesc GeneratorDesc::irrational(double angle) {
  GeneratorDesc g;
  g.kind = Kind::Irrational;
  g.angle = angle;
  g.matrix = {Complex(1), Complex(0), Complex(0), std::polar(1.0, angle)};
  return g;
}

Mat2 GeneratorDesc::as_matrix() const { return matrix; }

Mat2 simultaneous_diagonalize(const GroupSpec& spec) {
  const auto& gens = spec.generators;
  for (const auto& g : gens) {
    if (g.kind != GeneratorDesc::Kind::Matrix) continue;
    Mat2 u = g.matrix;
    if (max_abs_diff(mat2_mul(u, mat2_adjoint(u)), mat2_identity()) > kUnitaryTolerance) {
      throw Error(ErrorCode::NonUnitary, "generator is not unitary");
    }
  }
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      Mat2 a = gens[i].as_matrix();
      Mat2 b = gens[j].as_matrix();
      if (max_abs_diff(mat2_mul(a, b), mat2_mul(b, a)) > kCommuteTolerance) {
        throw Error(ErrorCode::NonCommuting, "generators " + std::to_string(i) + " and " +
                                                 std::to_string(j) + " do not commute");
      }
    }
  }
  auto pivot = std::find_if(gens.begin(), gens.end(), [](const GeneratorDesc& g) {
    return !is_diagonal(g.as_matrix());
  });
  if (pivot == gens.end()) return mat2_identity();

  Mat2 u = pivot->as_matrix();
  Complex half_tr = (u[0] + u[3]) / 2.0;
  Complex det = u[0] * u[3] - u[1] * u[2];
  Complex disc = std::sqrt(half_tr * half_tr - det);
  std::array<Complex, 2> eig = {half_tr + disc, half_tr - disc};
  if (principal_arg(eig[1]) < principal_arg(eig[0])) std::swap(eig[0], eig[1]);

  // Eigenvector of the first eigenvalue; the second is its orthogonal complement.
  Complex v0;
  Complex v1;
  if (std::abs(u[1]) >= std::abs(u[2])) {
    v0 = u[1];
    v1 = eig[0] - u[0];
  } else {
    v0 = eig[0] - u[3];
    v1 = u[2];
  }
  double norm = std::sqrt(std::norm(v0) + std::norm(v1));
  v0 /= norm;
  v1 /= norm;
  // Rows of P are the conjugated eigenvectors.
  return {std::conj(v0), std::conj(v1), -v1, v0};
}

Order phase_order(double theta) {
  double turns = theta / kTwoPi;
  turns -= std::floor(turns);
  auto r = snap_rational(turns, kOrderTolerance, kOrderDenominatorCap);
  if (!r) return Order::infinite();
  return order_of_turn_fraction(*r);
}

ReducedSymmetry reduce(const GroupSpec& spec) {
  ReducedSymmetry out;
  out.P = simultaneous_diagonalize(spec);
  out.identity_frame = max_abs_diff(out.P, mat2_identity()) == 0.0;
  Order L = Order::finite(1);
  for (const auto& g : spec.generators) {
    Order n = Order::finite(1);
    switch (g.kind) {
      case GeneratorDesc::Kind::Phases:
        if (out.identity_frame) {
          n = order_of_turn_fraction(g.phase2 - g.phase1);
          break;
        }
        [[fallthrough]];
      case GeneratorDesc::Kind::Matrix: {
        Mat2 d = mat2_mul(mat2_mul(out.P, g.as_matrix()), mat2_adjoint(out.P));
        if (!is_diagonal(d)) {
          throw Error(ErrorCode::NonCommuting, "generator not diagonal in the common eigenbasis");
        }
        n = phase_order(std::arg(d[3] / d[0]));
        break;
      }
      case GeneratorDesc::Kind::Irrational:
        n = Order::infinite();
        break;
    }
    out.generator_orders.push_back(n);
    L = L.lcm(n);
  }
  out.L = L;
  if (L.is_finite()) out.omega_exponent = Rational(1, static_cast<std::int64_t>(L.value()));
  return out;
}

Order compute_L(const GroupSpec& spec) { return reduce(spec).L; }

bool is_symmetric(const Operator& a, const Order& L) {
  return is_symmetric(a, ChargeRule::cyclic(a.m(), L));
}

bool is_symmetric(const Operator& a, const ChargeRule& rule) {
  return std::all_of(a.terms().begin(), a.terms().end(),
                     [&](const Term& t) { return rule.allows(t.bra, t.ket); });
}

Operator sector_projector(int l, const Order& L, int m) {
  if (L.is_infinite()) {
    throw Error(ErrorCode::OutOfRange, "sector projectors need finite L; use weight_projector");
  }
  if (l < 0 || static_cast<std::uint64_t>(l) >= L.value()) {
    throw Error(ErrorCode::OutOfRange, "residue " + std::to_string(l) + " outside 0..L-1");
  }
  std::vector<Term> terms;
  for (Word b = 0; b < (Word{1} << m); ++b) {
    if (L.congruent(popcount(b), l)) terms.push_back({b, b, Rational(1)});
  }
  return Operator::from_terms(m, std::move(terms));
}

Operator weight_projector(int w, int m) {
  if (w < 0 || w > m) throw Error(ErrorCode::OutOfRange, "weight outside 0..m");
  std::vector<Term> terms;
  for (Word b = 0; b < (Word{1} << m); ++b) {
    if (popcount(b) == w) terms.push_back({b, b, Rational(1)});
  }
  return Operator::from_terms(m, std::move(terms));
}

SectorGrading sector_grading(const Order& L, int m) {
  SectorGrading g{L, m, {}};
  if (L.is_infinite()) {
    for (int w = 0; w <= m; ++w) g.projectors.push_back(weight_projector(w, m));
  } else {
    for (std::uint64_t l = 0; l < L.value(); ++l) {
      g.projectors.push_back(sector_projector(static_cast<int>(l), L, m));
    }
  }
  return g;
}

std::optional<Rational> snap_rational(double value, double tol, std::uint64_t cap) {
  if (!std::isfinite(value)) return std::nullopt;
  if (std::abs(value) <= tol) return Rational();
  bool negative = value < 0;
  double x = std::abs(value);
  // Convergents h/k of the continued fraction of x.
  std::int64_t h_prev = 1, h = static_cast<std::int64_t>(std::floor(x));
  std::int64_t k_prev = 0, k = 1;
  double rem = x - std::floor(x);
  for (int iter = 0; iter < 64; ++iter) {
    if (std::abs(x - static_cast<double>(h) / static_cast<double>(k)) <= tol) {
      Rational r(h, k);
      return negative ? -r : r;
    }
    if (rem < 1e-300) break;
    double inv = 1.0 / rem;
    double a = std::floor(inv);
    rem = inv - a;
    auto ai = static_cast<std::int64_t>(a);
    std::int64_t h_next = ai * h + h_prev;
    std::int64_t k_next = ai * k + k_prev;
    if (k_next > static_cast<std::int64_t>(cap) || k_next <= 0) break;
    h_prev = h;
    h = h_next;
    k_prev = k;
    k = k_next;
  }
  return std::nullopt;
}

namespace {

using Dense = std::vector<Complex>;

// Dense P^{⊗m} in the register's basis ordering (qubit 1 most significant).
Dense tensor_power(const Mat2& p, int m) {
  std::size_t dim = std::size_t{1} << m;
  Dense out(dim * dim);
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) {
      Complex v(1);
      for (int q = 1; q <= m; ++q) {
        auto rb = (r >> (m - q)) & 1;
        auto cb = (c >> (m - q)) & 1;
        v *= p[rb * 2 + cb];
      }
      out[r * dim + c] = v;
    }
  }
  return out;
}

Dense dense_mul(const Dense& a, const Dense& b, std::size_t dim) {
  Dense out(dim * dim);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t k = 0; k < dim; ++k) {
      Complex aik = a[i * dim + k];
      if (aik == Complex(0)) continue;
      for (std::size_t j = 0; j < dim; ++j) out[i * dim + j] += aik * b[k * dim + j];
    }
  }
  return out;
}

Operator conjugate_and_snap(const Operator& a, const Mat2& p) {
  int m = a.m();
  if (m > 10) throw Error(ErrorCode::TooLarge, "frame change limited to m <= 10");
  std::size_t dim = std::size_t{1} << m;
  Dense pm = tensor_power(p, m);
  Dense pm_adj(dim * dim);
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) pm_adj[c * dim + r] = std::conj(pm[r * dim + c]);
  }
  Dense da(dim * dim);
  for (const Term& t : a.terms()) {
    da[t.bra * dim + t.ket] = Complex(t.coeff.re.to_double(), t.coeff.im.to_double());
  }
  Dense rotated = dense_mul(dense_mul(pm, da, dim), pm_adj, dim);
  std::vector<Term> terms;
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) {
      Complex v = rotated[r * dim + c];
      auto re = snap_rational(v.real(), kSnapTolerance, std::uint64_t{1} << 20);
      auto im = snap_rational(v.imag(), kSnapTolerance, std::uint64_t{1} << 20);
      if (!re || !im) {
        throw Error(ErrorCode::SnapFailure, "rotated operator entry is not close to a rational");
      }
      ComplexRational z(*re, *im);
      if (!z.is_zero()) terms.push_back({static_cast<Word>(r), static_cast<Word>(c), z});
    }
  }
  return Operator::from_terms(m, std::move(terms));
}

}  // namespace

Operator to_rotated_frame(const Operator& a, const ReducedSymmetry& sym) {
  if (sym.identity_frame) return a;
  return conjugate_and_snap(a, sym.P);
}

Operator from_rotated_frame(const Operator& a, const ReducedSymmetry& sym) {
  if (sym.identity_frame) return a;
  return conjugate_and_snap(a, mat2_adjoint(sym.P));
}

GroupSpec group_spec_from_json(const Json& j) {
  GroupSpec spec;
  try {
    for (const Json& g : j.at("generators")) {
      if (g.contains("matrix")) {
        const Json& entries = g.at("matrix");
        if (entries.size() != 4) throw Error(ErrorCode::Parse, "matrix needs 4 [re, im] entries");
        Mat2 u;
        for (std::size_t i = 0; i < 4; ++i) {
          u[i] = Complex(entries[i].at(0).get<double>(), entries[i].at(1).get<double>());
        }
        spec.generators.push_back(GeneratorDesc::from_matrix(u));
      } else if (g.contains("phases")) {
        const Json& ph = g.at("phases");
        if (ph.size() != 2) throw Error(ErrorCode::Parse, "phases needs two fractions of a turn");
        spec.generators.push_back(
            GeneratorDesc::from_phases(rational_from_json(ph[0]), rational_from_json(ph[1])));
      } else if (g.contains("irrational_angle")) {
        spec.generators.push_back(GeneratorDesc::irrational(g.at("irrational_angle").get<double>()));
      } else {
        throw Error(ErrorCode::Parse, "generator must have matrix, phases or irrational_angle");
      }
    }
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("malformed group spec: ") + e.what());
  }
  if (spec.generators.empty()) throw Error(ErrorCode::EmptyInput, "group spec has no generators");
  return spec;
}

Json reduced_to_json(const ReducedSymmetry& r) {
  Json p = Json::array();
  for (const Complex& z : r.P) p.push_back({z.real() + 0.0, z.imag() + 0.0});
  Json orders = Json::array();
  for (const Order& o : r.generator_orders) orders.push_back(o.to_string());
  Json out = {{"P", p}, {"identity_frame", r.identity_frame}, {"L", r.L.to_string()},
              {"generator_orders", orders}};
  out["omega_exponent"] = r.omega_exponent ? Json(r.omega_exponent->to_string()) : Json(nullptr);
  return out;
}

}  // namespace symlie
