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

// Acceptance suite: six criteria, one PASS/FAIL line each.

#include <chrono>
#include <cstdint>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "oracle.hpp"
#include "symlie/characterization.hpp"
#include "symlie/closure.hpp"
#include "symlie/errors.hpp"
#include "symlie/product_rep.hpp"
#include "symlie/synthesis.hpp"

using namespace symlie;

namespace {

// All comparisons are exact; these fix the sampling and the grid.
constexpr std::uint64_t kSeed = 20260101;
constexpr int kRandomSamples = 100;
constexpr int kBasisSamples = 20;
const std::vector<int> kGridM = {3, 4, 5};
const std::vector<const char*> kGridL = {"1", "2", "3", "4", "INF"};
const std::vector<const char*> kMemberL = {"1", "2", "3", "4", "5", "INF"};
const std::vector<unsigned> kThreadCounts = {1, 4};

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void fail(const std::string& why) {
    pass = false;
    notes.push_back("FAIL " + why);
  }
  void note(const std::string& text) { notes.push_back(text); }
};

std::string point(int m, int k, const std::string& L) {
  return "(m=" + std::to_string(m) + ", k=" + std::to_string(k) + ", L=" + L + ")";
}

Subspace closure_of(int m, int k, const Order& L, unsigned threads = 1, bool reverse = false) {
  ClosureOptions opt;
  opt.threads = threads;
  opt.reverse_generators = reverse;
  return lie_closure(generator_basis(m, k, L), opt);
}

bool supported(int m, int k, const Order& L) {
  try {
    classify(m, k, L);
    return true;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::UnsupportedRegime) return false;
    throw;
  }
}

// Grid points of criterion 1.
struct GridPoint {
  int m, k;
  Order L;
  std::string Ls;
};

std::vector<GridPoint> grid() {
  std::vector<GridPoint> out;
  for (int m : kGridM) {
    for (int k = 2; k < m; ++k) {
      for (const char* L : kGridL) out.push_back({m, k, Order::parse(L), L});
    }
  }
  return out;
}

Outcome criterion1() {
  Outcome o;
  std::size_t points = 0;
  for (const auto& g : grid()) {
    DimsReport d = dims_report(g.m, g.k, g.L);
    std::size_t hk = closure_of(g.m, g.k, g.L).dim();
    std::size_t hm = closure_of(g.m, g.m, g.L).dim();
    ++points;
    if (hk != d.h_k || hm != d.h_m) {
      o.fail(point(g.m, g.k, g.Ls) + ": predicted " + std::to_string(d.h_m) + "/" + std::to_string(d.h_k) +
             ", oracle " + std::to_string(hm) + "/" + std::to_string(hk));
    }
  }
  struct Anchor {
    int m, k;
    const char* L;
    std::uint64_t h_m, h_k;
  };
  for (const Anchor& a : {Anchor{3, 2, "2", 32, 31}, {4, 2, "3", 86, 68}, {4, 3, "3", 86, 86},
                          {4, 2, "2", 128, 127}, {3, 2, "INF", 20, 19}}) {
    Order L = Order::parse(a.L);
    std::size_t hk = closure_of(a.m, a.k, L).dim();
    std::size_t hm = closure_of(a.m, a.m, L).dim();
    DimsReport d = dims_report(a.m, a.k, L);
    bool ok = hk == a.h_k && hm == a.h_m && d.h_k == a.h_k && d.h_m == a.h_m;
    o.note("anchor " + point(a.m, a.k, a.L) + " -> " + std::to_string(hm) + "/" + std::to_string(hk) +
           (ok ? "" : " expected " + std::to_string(a.h_m) + "/" + std::to_string(a.h_k)));
    if (!ok) o.fail("anchor " + point(a.m, a.k, a.L));
  }
  o.note(std::to_string(points) + " grid points compared");
  return o;
}

// Verdicts for criterion 2 at one regime under one closure.
std::vector<bool> sampled_verdicts(int m, int k, const Order& L, const Subspace& closure,
                                   std::vector<Operator>* samples, Outcome& o, const std::string& where) {
  std::vector<bool> contains;
  for (std::size_t i = 0; i < samples->size(); ++i) {
    const Operator& a = (*samples)[i];
    bool in_span = closure.contains(a);
    bool member = membership(a, m, k, L).member;
    if (member != in_span) o.fail(where + " sample " + std::to_string(i) + ": verdict " + std::to_string(member) +
                                  " vs span " + std::to_string(in_span));
    contains.push_back(in_span);
  }
  return contains;
}

std::vector<Operator> draw_samples(int m, int k, const Order& L, const Subspace& closure, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  GeneratorSet full = generator_basis(m, m, L);
  GeneratorSet local = generator_basis(m, k, L);
  std::vector<Operator> out;
  for (int i = 0; i < kRandomSamples; ++i) {
    out.push_back(random_combination(i % 2 ? local.ops : full.ops, rng));
  }
  std::uniform_int_distribution<std::size_t> pick(0, closure.dim() - 1);
  for (int i = 0; i < kBasisSamples; ++i) out.push_back(closure.basis()[pick(rng)]);
  return out;
}

struct MemberRegime {
  int m, k;
  Order L;
  std::string Ls;
};

std::vector<MemberRegime> member_regimes() {
  std::vector<MemberRegime> out;
  for (int m : {3, 4}) {
    for (int k = 2; k < m; ++k) {
      for (const char* L : kMemberL) {
        Order o = Order::parse(L);
        if (supported(m, k, o)) out.push_back({m, k, o, L});
      }
    }
  }
  return out;
}

Outcome criterion2() {
  Outcome o;
  std::size_t checked = 0;
  std::size_t members = 0;
  std::uint64_t seed = kSeed;
  for (const auto& r : member_regimes()) {
    Subspace closure = closure_of(r.m, r.k, r.L);
    auto samples = draw_samples(r.m, r.k, r.L, closure, seed++);
    auto verdicts = sampled_verdicts(r.m, r.k, r.L, closure, &samples, o, point(r.m, r.k, r.Ls));
    checked += verdicts.size();
    for (bool v : verdicts) members += v;
  }
  o.note(std::to_string(checked) + " operators over " + std::to_string(member_regimes().size()) + " regimes, " +
         std::to_string(members) + " members");
  return o;
}

bool diag_span_ok(int m, int n, int k, std::size_t expect_dim, bool orth_to_full, Outcome& o) {
  oracle::Span span(std::size_t{1} << m);
  oracle::Matrix zfull = oracle::z_mask(static_cast<unsigned>(full_mask(m)), m);
  bool ok = true;
  ExprPool pool;
  for (Word b = 0; b <= full_mask(m); ++b) {
    if (n % 2 == 0 && b == full_mask(m)) continue;
    oracle::Matrix v = oracle::from_operator(eval_expr(synth_diag(BitString(b, m), m, n, k, &pool), m));
    if (orth_to_full && oracle::trace(oracle::mul(v, zfull)) != ComplexRational(Rational(0))) ok = false;
    span.add(v);
  }
  if (orth_to_full && span.contains(oracle::scale(ComplexRational::i(), zfull))) ok = false;
  ok = ok && span.dim() == expect_dim;
  o.note("diagonal span (m=" + std::to_string(m) + ", n=" + std::to_string(n) + ", k=" + std::to_string(k) +
         ") has dim " + std::to_string(span.dim()));
  return ok;
}

Outcome criterion3() {
  Outcome o;
  std::size_t certs = 0;
  auto check = [&](const Certificate& c, const std::string& what) {
    ++certs;
    CertificateCheck r = verify_certificate(c);
    if (!r.ok) {
      std::string why = what;
      for (const auto& p : r.problems) why += "; " + p;
      o.fail(why);
    }
  };
  struct Diag {
    int m, n, k;
  };
  for (const Diag d : {Diag{4, 3, 3}, {4, 2, 2}, {4, 2, 3}, {5, 3, 3}, {5, 2, 2}, {5, 4, 4}, {3, 2, 2}}) {
    ExprPool pool;
    ChargeRule rule = ChargeRule::cyclic(d.m, Order::finite(static_cast<std::uint64_t>(d.n)));
    for (Word b = 0; b <= full_mask(d.m); ++b) {
      if (d.n % 2 == 0 && b == full_mask(d.m)) continue;
      BitString bs(b, d.m);
      Certificate c{d.m, d.k, rule, ComplexRational::i() * Operator::z_string(b, d.m),
                    synth_diag(bs, d.m, d.n, d.k, &pool)};
      check(c, "Z:" + bs.to_string());
    }
  }
  for (const Diag d : {Diag{4, 2, 2}, {4, 3, 3}, {3, 2, 2}}) {
    ExprPool pool;
    Order L = Order::finite(static_cast<std::uint64_t>(d.n));
    ChargeRule rule = ChargeRule::cyclic(d.m, L);
    for (Word b = 0; b <= full_mask(d.m); ++b) {
      for (Word b2 = 0; b2 <= full_mask(d.m); ++b2) {
        if (b == b2 || !L.congruent(popcount(b), popcount(b2))) continue;
        BitString x(b, d.m);
        BitString y(b2, d.m);
        check({d.m, d.k, rule, f_operator(x, y), synth_offdiag(x, y, d.m, d.n, d.k, &pool)},
              "F:" + x.to_string() + ":" + y.to_string());
      }
    }
  }
  for (Word bm = 0; bm < 16; ++bm) {
    if (popcount(bm) > 2) continue;
    ExprPool pool;
    for (Word d = 0; d < 16; ++d) {
      check({4, 2, ChargeRule::product(4, bm), ComplexRational::i() * Operator::z_string(d, 4),
             synth_product_diag(BitString(d, 4), BitString(bm, 4), 4, 2, &pool)},
            "product Z:" + BitString(d, 4).to_string());
    }
  }
  if (!diag_span_ok(4, 3, 3, 16, false, o)) o.fail("odd coverage");
  if (!diag_span_ok(4, 2, 2, 15, true, o)) o.fail("even coverage");
  o.note(std::to_string(certs) + " certificates re-evaluated");
  return o;
}

std::string show(const ComplexRational& z) { return z.to_string(); }

Outcome criterion4() {
  Outcome o;
  std::size_t triples = 0;
  for (int n : {2, 3, 4}) {
    int m = n + 1;
    Parity parity = n % 2 ? Parity::Odd : Parity::Even;
    ComplexRational reference(Rational(0), Rational(-1, std::int64_t{1} << m));
    bool zero_seen = false;
    ComplexRational value;
    for (Word b = 0; b <= full_mask(m); ++b) {
      if (popcount(b) != n) continue;
      ++triples;
      LadderTriple t = ladder_triple(BitString(b, m), n, parity);
      oracle::Matrix A = oracle::from_operator(t.A);
      oracle::Matrix al = oracle::from_operator(t.alpha);
      oracle::Matrix be = oracle::from_operator(t.beta);
      std::string where = "b=" + BitString(b, m).to_string();
      if (oracle::bracket(A, al) != oracle::scale(Rational(-1), be)) o.fail(where + ": [A, alpha] != -beta");
      if (oracle::bracket(A, be) != al) o.fail(where + ": [A, beta] != alpha");
      value = oracle::z_coefficient(oracle::bracket(al, be), static_cast<unsigned>(b), m);
      if (value != t.z_coefficient) o.fail(where + ": stored coefficient differs from dense value");
      if (value.is_zero()) zero_seen = true;
    }
    o.note("n=" + std::to_string(n) + ", m=" + std::to_string(m) + ": Z^b coefficient of [alpha, beta] = " +
           show(value) + " (closed form -i/2^m = " + show(reference) + ")");
    if (zero_seen) o.fail("n=" + std::to_string(n) + ": Z^b coefficient of [alpha, beta] is zero");
  }
  o.note(std::to_string(triples) + " ladder triples checked");
  return o;
}

Outcome criterion5() {
  Outcome o;
  for (Word bm = 0; bm < 16; ++bm) {
    std::vector<InvolutionClass> classes;
    for (int q = 1; q <= 4; ++q) {
      Mat2 u = bm & qubit_bit(q, 4) ? Mat2{1.0, 0.0, 0.0, -1.0} : mat2_identity();
      classes.push_back(classify_involution(u));
    }
    ProductReport r = product_closure_check(classes, 4, 2);
    std::string where = "bmask=" + BitString(bm, 4).to_string();
    bool expect = popcount(bm) <= 2;
    if (r.universal != expect || r.predicate != expect) {
      o.fail(where + ": universal=" + std::to_string(r.universal) + " predicate=" + std::to_string(r.predicate));
    }
    if (popcount(bm) > 2) {
      Subspace s = lie_closure(generator_basis(4, 2, ChargeRule::product(4, bm)));
      Operator z = Operator::z_string(bm, 4);
      for (const auto& b : s.basis()) {
        if (!trace(op_mul(z, b)).is_zero()) {
          o.fail(where + ": closure element with tr(A Z^bmask) != 0");
          break;
        }
      }
      o.note(where + ": dims " + std::to_string(r.h_m_dim) + "/" + std::to_string(r.h_k_dim) +
             ", trace condition checked on " + std::to_string(s.dim()) + " basis elements");
    }
  }
  return o;
}

bool mutually_contained(const Subspace& a, const Subspace& b) {
  if (a.dim() != b.dim()) return false;
  for (const auto& x : a.basis()) {
    if (!b.contains(x)) return false;
  }
  for (const auto& x : b.basis()) {
    if (!a.contains(x)) return false;
  }
  return true;
}

Outcome criterion6() {
  Outcome o;
  std::size_t variants = 0;
  for (const auto& g : grid()) {
    Subspace base = closure_of(g.m, g.k, g.L);
    for (unsigned threads : kThreadCounts) {
      for (bool reverse : {false, true}) {
        if (threads == 1 && !reverse) continue;
        ++variants;
        Subspace other = closure_of(g.m, g.k, g.L, threads, reverse);
        if (!mutually_contained(base, other)) {
          o.fail(point(g.m, g.k, g.Ls) + " threads=" + std::to_string(threads) +
                 (reverse ? " reversed" : "") + ": spans differ");
        }
      }
    }
  }
  std::uint64_t seed = kSeed;
  for (const auto& r : member_regimes()) {
    Subspace base = closure_of(r.m, r.k, r.L);
    auto samples = draw_samples(r.m, r.k, r.L, base, seed++);
    Outcome scratch;
    auto expect = sampled_verdicts(r.m, r.k, r.L, base, &samples, scratch, point(r.m, r.k, r.Ls));
    for (unsigned threads : kThreadCounts) {
      for (bool reverse : {false, true}) {
        Subspace other = closure_of(r.m, r.k, r.L, threads, reverse);
        auto got = sampled_verdicts(r.m, r.k, r.L, other, &samples, scratch, point(r.m, r.k, r.Ls));
        ++variants;
        if (got != expect) o.fail(point(r.m, r.k, r.Ls) + ": membership answers depend on the run");
      }
    }
  }
  o.note(std::to_string(variants) + " repeated runs compared");
  return o;
}

struct Criterion {
  int id;
  const char* title;
  std::function<Outcome()> run;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all = {
      {1, "dimension-gap grid", criterion1},
      {2, "membership agrees with span", criterion2},
      {3, "synthesis soundness and coverage", criterion3},
      {4, "ladder relations", criterion4},
      {5, "product representation masks", criterion5},
      {6, "determinism across threads and order", criterion6},
  };
  return all;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"symlie acceptance criteria"};
  int only = 0;
  app.add_option("--criterion", only, "Run a single criterion (1-6)")->check(CLI::Range(1, 6));
  CLI11_PARSE(app, argc, argv);

  bool all_pass = true;
  for (const auto& c : criteria()) {
    if (only != 0 && c.id != only) continue;
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    for (const auto& n : o.notes) std::cout << "  " << n << "\n";
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.title << " ("
              << std::fixed << std::setprecision(2) << secs << " s)\n";
    all_pass = all_pass && o.pass;
  }
  return all_pass ? 0 : 1;
}
