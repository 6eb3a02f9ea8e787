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

#include <cmath>
#include <functional>
#include <set>

#include "doctest.h"
#include "symlie/closure.hpp"
#include "symlie/errors.hpp"
#include "symlie/product_rep.hpp"

using namespace symlie;

namespace {

const Mat2 kI = mat2_identity();
const Mat2 kZ = {1.0, 0.0, 0.0, -1.0};
const Mat2 kX = {0.0, 1.0, 1.0, 0.0};

double dist(const Mat2& a, const Mat2& b) {
  double d = 0;
  for (std::size_t i = 0; i < 4; ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

Mat2 neg(const Mat2& a) {
  Mat2 out = a;
  for (auto& z : out) z = -z;
  return out;
}

std::vector<InvolutionClass> classes_of_mask(Word mask, int m) {
  std::vector<InvolutionClass> out;
  for (int q = 1; q <= m; ++q) out.push_back(classify_involution(mask & qubit_bit(q, m) ? kZ : kI));
  return out;
}

bool leaves_valid(const Expr& root, int k, const ChargeRule& rule) {
  std::set<const ExprNode*> seen;
  bool ok = true;
  std::function<void(const Expr&)> walk = [&](const Expr& e) {
    if (!seen.insert(e.get()).second) return;
    if (e->kind == ExprKind::Leaf) {
      ok = ok && e->tag == LeafTag::Generator && is_k_local(e->op, k) && is_skew_hermitian(e->op) &&
           is_symmetric(e->op, rule);
    } else if (e->kind == ExprKind::Bracket) {
      walk(e->left);
      walk(e->right);
    } else {
      for (const auto& [s, c] : e->terms) walk(c);
    }
  };
  walk(root);
  return ok;
}

Operator iz(Word b, int m) { return ComplexRational::i() * Operator::z_string(b, m); }

}  // namespace

TEST_SUITE("product_rep") {
  TEST_CASE("classify_involution examples") {
    InvolutionClass z = classify_involution(kZ);
    CHECK(z.tag == InvolutionTag::Z_LIKE);
    CHECK(z.P == kI);
    InvolutionClass x = classify_involution(kX);
    CHECK(x.tag == InvolutionTag::Z_LIKE);
    CHECK(dist(mat2_mul(mat2_mul(x.P, kX), mat2_adjoint(x.P)), kZ) < 1e-9);
    InvolutionClass mi = classify_involution(neg(kI));
    CHECK(mi.tag == InvolutionTag::MINUS_I);
    CHECK(mi.P == kI);
    CHECK(classify_involution(neg(kZ)).tag == InvolutionTag::MINUS_Z_LIKE);
    CHECK(classify_involution(kI).tag == InvolutionTag::PLUS_I);
  }

  TEST_CASE("classify_involution diagonalises named involutions") {
    for (const char* name : {"X", "Y", "Z", "H", "-X", "-Y", "-H", "I", "-I", "-Z"}) {
      CAPTURE(std::string(name));
      Mat2 u = parse_involution(name);
      InvolutionClass c = classify_involution(u);
      Mat2 target = c.tag == InvolutionTag::PLUS_I    ? kI
                    : c.tag == InvolutionTag::MINUS_I ? neg(kI)
                    : c.tag == InvolutionTag::Z_LIKE  ? kZ
                                                      : neg(kZ);
      CHECK(dist(mat2_mul(mat2_mul(c.P, u), mat2_adjoint(c.P)), target) < 1e-9);
      CHECK(dist(mat2_mul(c.P, mat2_adjoint(c.P)), kI) < 1e-9);
      bool pm = std::string(name) != "I" && std::string(name) != "-I";
      CHECK(c.z_like() == pm);
    }
  }

  TEST_CASE("classify_involution errors") {
    try {
      classify_involution({1.0, 0.0, 0.0, Complex(0, 1)});
      FAIL("expected NotInvolution");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NotInvolution);
    }
    try {
      classify_involution({2.0, 0.0, 0.0, 0.5});
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK((e.code() == ErrorCode::NonUnitary || e.code() == ErrorCode::NotInvolution));
    }
    CHECK_THROWS_AS(parse_involution("Q"), Error);
  }

  TEST_CASE("involution lists") {
    auto list = parse_involution_list("[Z,Z,I,I]");
    REQUIRE(list.size() == 4);
    CHECK(list[0] == kZ);
    CHECK(list[3] == kI);
    auto json = parse_involution_list(R"([[[0, 1], [1, [0, 0]]], "Z"])");
    REQUIRE(json.size() == 2);
    CHECK(json[0] == kX);
    std::vector<InvolutionClass> cls;
    for (const auto& u : list) cls.push_back(classify_involution(u));
    CHECK(involution_mask(cls).to_string() == "1100");
  }

  TEST_CASE("universality_predicate examples") {
    auto cls = [](std::initializer_list<Mat2> us) {
      std::vector<InvolutionClass> out;
      for (const auto& u : us) out.push_back(classify_involution(u));
      return out;
    };
    CHECK_FALSE(universality_predicate(cls({kZ, kZ, kZ, kI}), 2));
    CHECK(universality_predicate(cls({kZ, kZ, kI, kI}), 2));
    CHECK(universality_predicate(cls({kI, kI, neg(kI), kI}), 2));
    CHECK(universality_predicate(cls({kX, neg(kZ), kI}), 2));
  }

  TEST_CASE("synth_product_diag examples") {
    BitString bm = BitString::parse("1100");
    Expr leaf = synth_product_diag(BitString::parse("0011"), bm, 4, 2);
    CHECK(leaf->kind == ExprKind::Leaf);
    CHECK(eval_expr(synth_product_diag(BitString::parse("1110"), bm, 4, 2), 4) == iz(0b1110, 4));
    CHECK(eval_expr(synth_product_diag(BitString::parse("1111"), bm, 4, 2), 4) == iz(0b1111, 4));
    try {
      synth_product_diag(BitString::parse("1111"), BitString::parse("1110"), 4, 2);
      FAIL("expected RegimeViolation");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::RegimeViolation);
    }
  }

  TEST_CASE("synth_product_diag certificates") {
    for (int m = 3; m <= 5; ++m) {
      for (int k = 2; k <= 3; ++k) {
        for (Word bm = 0; bm <= full_mask(m); ++bm) {
          if (popcount(bm) > k) continue;
          ChargeRule rule = ChargeRule::product(m, bm);
          ExprPool pool;
          for (Word d = 0; d <= full_mask(m); ++d) {
            Expr e = synth_product_diag(BitString(d, m), BitString(bm, m), m, k, &pool);
            CHECK(eval_expr(e, m) == iz(d, m));
            CHECK(leaves_valid(e, k, rule));
          }
        }
      }
    }
  }

  TEST_CASE("product_closure_check examples") {
    ProductReport triv = product_closure_check(classes_of_mask(0, 3), 3, 2);
    CHECK(triv.universal);
    CHECK(triv.h_k_dim == 64);
    CHECK(triv.h_m_dim == 64);
    ProductReport two = product_closure_check(classes_of_mask(0b1100, 4), 4, 2);
    CHECK(two.universal);
    CHECK(two.h_k_dim == two.h_m_dim);
    ProductReport three = product_closure_check(classes_of_mask(0b1110, 4), 4, 2);
    CHECK_FALSE(three.universal);
    CHECK(three.h_m_dim >= three.h_k_dim + 1);
    CHECK_THROWS_AS(product_closure_check(classes_of_mask(0, 6), 6, 2), Error);
  }

  TEST_CASE("exhaustive masks on four qubits") {
    for (Word bm = 0; bm < 16; ++bm) {
      auto cls = classes_of_mask(bm, 4);
      ProductReport r = product_closure_check(cls, 4, 2);
      CHECK(r.oracle_ran);
      CHECK(r.universal == universality_predicate(cls, 2));
      CHECK(r.universal == (popcount(bm) <= 2));
      CHECK(r.h_m_dim == ChargeRule::product(4, bm).ambient_dim());
    }
  }

  TEST_CASE("necessity trace on the closure") {
    for (Word bm : {0b1110u, 0b0111u, 0b1111u}) {
      Subspace s = lie_closure(generator_basis(4, 2, ChargeRule::product(4, bm)));
      Operator z = Operator::z_string(bm, 4);
      for (const auto& b : s.basis()) CHECK(trace(op_mul(z, b)) == ComplexRational(Rational(0)));
    }
  }

  TEST_CASE("product report json") {
    ProductReport r = product_closure_check(classes_of_mask(0b1010, 4), 4, 2);
    Json j = product_report_to_json(r);
    CHECK(j["bmask"] == "1010");
    CHECK(j["universal"] == true);
    CHECK(j["classes"].size() == 4);
    CHECK(j["classes"][0]["tag"] == "Z_LIKE");
    CHECK(j["dims"]["gap"] == 0);
  }
}
