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

#include "symlie/product_rep.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <unordered_map>

#include "symlie/errors.hpp"

namespace symlie {

std::string involution_tag_name(InvolutionTag tag) {
  switch (tag) {
    case InvolutionTag::PLUS_I: return "PLUS_I";
    case InvolutionTag::MINUS_I: return "MINUS_I";
    case InvolutionTag::Z_LIKE: return "Z_LIKE";
    case InvolutionTag::MINUS_Z_LIKE: return "MINUS_Z_LIKE";
  }
  return "UNKNOWN";
}

namespace {

double distance(const Mat2& a, const Mat2& b) {
  double d = 0;
  for (std::size_t i = 0; i < 4; ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

Mat2 diag(Complex a, Complex b) { return {a, 0.0, 0.0, b}; }

/** Unit eigenvector spanning the range of the rank-one projector p. */
std::array<Complex, 2> range_vector(const Mat2& p) {
  double n0 = std::hypot(std::abs(p[0]), std::abs(p[2]));
  double n1 = std::hypot(std::abs(p[1]), std::abs(p[3]));
  std::array<Complex, 2> v = n0 >= n1 ? std::array<Complex, 2>{p[0], p[2]}
                                      : std::array<Complex, 2>{p[1], p[3]};
  double n = std::max(n0, n1);
  // Fix the phase so the larger component is real and positive.
  Complex lead = std::abs(v[0]) >= std::abs(v[1]) ? v[0] : v[1];
  Complex phase = lead / std::abs(lead);
  for (Complex& x : v) x /= n * phase;
  return v;
}

}  // namespace

InvolutionClass classify_involution(const Mat2& u) {
  const Mat2 id = mat2_identity();
  if (distance(mat2_mul(u, mat2_adjoint(u)), id) > kInvolutionTolerance) {
    throw Error(ErrorCode::NonUnitary, "involution is not unitary");
  }
  if (distance(mat2_mul(u, u), id) > kInvolutionTolerance) {
    throw Error(ErrorCode::NotInvolution, "u*u differs from the identity");
  }
  InvolutionClass c;
  if (distance(u, id) <= kInvolutionTolerance) return c;
  if (distance(u, diag(-1.0, -1.0)) <= kInvolutionTolerance) {
    c.tag = InvolutionTag::MINUS_I;
    return c;
  }
  if (distance(u, diag(1.0, -1.0)) <= kInvolutionTolerance) {
    c.tag = InvolutionTag::Z_LIKE;
    return c;
  }
  if (distance(u, diag(-1.0, 1.0)) <= kInvolutionTolerance) {
    c.tag = InvolutionTag::MINUS_Z_LIKE;
    return c;
  }
  Mat2 plus;
  Mat2 minus;
  for (std::size_t i = 0; i < 4; ++i) {
    plus[i] = (id[i] + u[i]) / 2.0;
    minus[i] = (id[i] - u[i]) / 2.0;
  }
  auto vp = range_vector(plus);
  auto vm = range_vector(minus);
  c.tag = InvolutionTag::Z_LIKE;
  c.P = {std::conj(vp[0]), std::conj(vp[1]), std::conj(vm[0]), std::conj(vm[1])};
  Mat2 check = mat2_mul(mat2_mul(c.P, u), mat2_adjoint(c.P));
  if (distance(check, diag(1.0, -1.0)) > kInvolutionTolerance) {
    throw Error(ErrorCode::Internal, "involution diagonaliser failed");
  }
  return c;
}

namespace {

std::string trim(std::string s) {
  auto issp = [](unsigned char ch) { return std::isspace(ch) != 0; };
  while (!s.empty() && issp(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
  while (!s.empty() && issp(static_cast<unsigned char>(s.back()))) s.pop_back();
  return s;
}

Mat2 matrix_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2) throw Error(ErrorCode::Parse, "involution matrix must be 2x2");
  Mat2 out;
  for (std::size_t r = 0; r < 2; ++r) {
    const Json& row = j.at(r);
    if (!row.is_array() || row.size() != 2) throw Error(ErrorCode::Parse, "involution matrix must be 2x2");
    for (std::size_t c = 0; c < 2; ++c) {
      const Json& e = row.at(c);
      if (e.is_array()) {
        out[2 * r + c] = Complex(e.at(0).get<double>(), e.at(1).get<double>());
      } else {
        out[2 * r + c] = Complex(e.get<double>(), 0.0);
      }
    }
  }
  return out;
}

Mat2 named(const std::string& text) {
  std::string name = text;
  double sign = 1.0;
  if (name.rfind("−", 0) == 0) {
    sign = -1.0;
    name = name.substr(3);
  } else if (!name.empty() && name[0] == '-') {
    sign = -1.0;
    name = name.substr(1);
  } else if (!name.empty() && name[0] == '+') {
    name = name.substr(1);
  }
  const double h = 1.0 / std::sqrt(2.0);
  static const std::unordered_map<std::string, Mat2> table = {
      {"I", {1.0, 0.0, 0.0, 1.0}},
      {"X", {0.0, 1.0, 1.0, 0.0}},
      {"Y", {0.0, Complex(0, -1), Complex(0, 1), 0.0}},
      {"Z", {1.0, 0.0, 0.0, -1.0}},
      {"H", {h, h, h, -h}},
  };
  auto it = table.find(name);
  if (it == table.end()) throw Error(ErrorCode::Parse, "unknown involution '" + text + "'");
  Mat2 out = it->second;
  for (Complex& z : out) z *= sign;
  return out;
}

}  // namespace

Mat2 parse_involution(const std::string& text) {
  std::string t = trim(text);
  if (!t.empty() && t[0] == '[') {
    try {
      return matrix_from_json(Json::parse(t));
    } catch (const Json::exception& err) {
      throw Error(ErrorCode::Parse, std::string("bad involution matrix: ") + err.what());
    }
  }
  return named(t);
}

std::vector<Mat2> parse_involution_list(const std::string& text) {
  std::string t = trim(text);
  std::vector<Mat2> out;
  Json j = Json::parse(t, nullptr, false);
  if (!j.is_discarded() && j.is_array()) {
    for (const Json& e : j) out.push_back(e.is_string() ? named(trim(e.get<std::string>())) : matrix_from_json(e));
  } else {
    if (!t.empty() && t.front() == '[') t.erase(t.begin());
    if (!t.empty() && t.back() == ']') t.pop_back();
    std::size_t start = 0;
    while (start <= t.size()) {
      std::size_t comma = t.find(',', start);
      std::string item = trim(t.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
      if (item.empty()) throw Error(ErrorCode::Parse, "empty entry in involution list");
      out.push_back(named(item));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
  }
  if (out.empty()) throw Error(ErrorCode::EmptyInput, "empty involution list");
  return out;
}

BitString involution_mask(const std::vector<InvolutionClass>& classes) {
  int m = static_cast<int>(classes.size());
  if (m < 1 || m > static_cast<int>(kMaxQubits)) throw Error(ErrorCode::OutOfRange, "bad qubit count");
  Word bits = 0;
  for (int q = 1; q <= m; ++q) {
    if (classes[static_cast<std::size_t>(q - 1)].z_like()) bits |= qubit_bit(q, m);
  }
  return {bits, m};
}

bool universality_predicate(const std::vector<InvolutionClass>& classes, int k) {
  auto z = std::count_if(classes.begin(), classes.end(), [](const auto& c) { return c.z_like(); });
  return z <= k;
}

namespace {

class ProductSynth {
 public:
  ProductSynth(Word mask, int m, int k, ExprPool& pool) : mask_(mask), m_(m), k_(k), pool_(pool), ev_(m) {}

  Expr z(Word d) {
    auto it = memo_.find(d);
    if (it != memo_.end()) return it->second;
    Expr e;
    if (popcount(d) <= k_) {
      e = pool_.leaf(i_times(Operator::z_string(d, m_)));
    } else {
      auto q = BitString(d, m_).support();
      // Largest qubit of d on which the symmetry acts trivially.
      auto lt = std::find_if(q.rbegin(), q.rend(), [&](int x) { return (mask_ & qubit_bit(x, m_)) == 0; });
      if (lt == q.rend()) throw Error(ErrorCode::Internal, "no trivially acted qubit in support");
      int last = *lt;
      int prev = *std::find_if(q.rbegin(), q.rend(), [&](int x) { return x != last; });
      Operator zy = i_times(op_mul(Operator::pauli('Z', prev, m_), Operator::pauli('Y', last, m_)));
      Operator y = i_times(Operator::pauli('Y', last, m_));
      Expr inner = z(d & ~qubit_bit(prev, m_));
      Expr raw = pool_.bracket(pool_.bracket(inner, pool_.leaf(zy)), pool_.leaf(y));
      Operator target = i_times(Operator::z_string(d, m_));
      ComplexRational c = hs_inner(target, ev_.eval(raw));
      Rational scale = c.re / hs_inner(target, target).re;
      if (!c.im.is_zero() || scale.is_zero()) throw Error(ErrorCode::Internal, "product ladder lost its target");
      e = pool_.scale(scale.reciprocal(), raw);
      if (ev_.eval(e) != target) throw Error(ErrorCode::Internal, "product ladder left a remainder");
    }
    memo_.emplace(d, e);
    return e;
  }

 private:
  static Operator i_times(Operator op) {
    op *= ComplexRational::i();
    return op;
  }

  Word mask_;
  int m_;
  int k_;
  ExprPool& pool_;
  Evaluator ev_;
  std::unordered_map<Word, Expr> memo_;
};

}  // namespace

Expr synth_product_diag(const BitString& d, const BitString& bmask, int m, int k, ExprPool* pool) {
  if (d.m() != m || bmask.m() != m) throw Error(ErrorCode::DimensionMismatch, "bitstring width differs from m");
  if (k < 1 || k > m) throw Error(ErrorCode::RegimeViolation, "locality k must satisfy 1 <= k <= m");
  if (bmask.weight() > k) {
    throw Error(ErrorCode::RegimeViolation, "weight(bmask)=" + std::to_string(bmask.weight()) +
                                                " exceeds k=" + std::to_string(k));
  }
  if (d.weight() > k && k < 2) throw Error(ErrorCode::RegimeViolation, "raising a Z-string needs k >= 2");
  ExprPool local;
  ProductSynth s(bmask.bits(), m, k, pool != nullptr ? *pool : local);
  return s.z(d.bits());
}

ProductReport product_report(const std::vector<InvolutionClass>& classes, int k) {
  ProductReport r;
  r.classes = classes;
  r.bmask = involution_mask(classes);
  r.k = k;
  r.predicate = universality_predicate(classes, k);
  r.universal = r.predicate;
  return r;
}

ProductReport product_closure_check(const std::vector<InvolutionClass>& classes, int m, int k,
                                    const ClosureOptions& options) {
  if (static_cast<int>(classes.size()) != m) {
    throw Error(ErrorCode::DimensionMismatch, "need one involution per qubit");
  }
  if (m > 5) throw Error(ErrorCode::TooLarge, "closure oracle limited to m <= 5 here");
  ProductReport r = product_report(classes, k);
  ChargeRule rule = ChargeRule::product(m, r.bmask.bits());
  r.h_k_dim = lie_closure(generator_basis(m, k, rule), options).dim();
  r.h_m_dim = lie_closure(generator_basis(m, m, rule), options).dim();
  r.oracle_ran = true;
  r.universal = r.h_k_dim == r.h_m_dim;
  return r;
}

Json product_report_to_json(const ProductReport& r) {
  Json classes = Json::array();
  for (const auto& c : r.classes) {
    Json p = Json::array();
    for (std::size_t row = 0; row < 2; ++row) {
      Json jr = Json::array();
      for (std::size_t col = 0; col < 2; ++col) {
        Complex z = c.P[2 * row + col];
        jr.push_back({z.real() + 0.0, z.imag() + 0.0});
      }
      p.push_back(jr);
    }
    classes.push_back({{"tag", involution_tag_name(c.tag)}, {"P", p}});
  }
  Json j{{"classes", classes},
         {"bmask", r.bmask.to_string()},
         {"k", r.k},
         {"predicate", r.predicate},
         {"universal", r.universal}};
  if (r.oracle_ran) {
    j["dims"] = {{"h_k_dim", r.h_k_dim}, {"h_m_dim", r.h_m_dim}, {"gap", r.h_m_dim - r.h_k_dim}};
  }
  return j;
}

}  // namespace symlie
