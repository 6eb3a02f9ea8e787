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

#include "symlie/closure.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "symlie/errors.hpp"

namespace symlie {

namespace {

// Lexicographic k-subsets of {1..m}.
std::vector<std::vector<int>> subsets(int m, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> current(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) current[static_cast<std::size_t>(i)] = i + 1;
  while (true) {
    out.push_back(current);
    int i = k - 1;
    while (i >= 0 && current[static_cast<std::size_t>(i)] == m - k + i + 1) --i;
    if (i < 0) break;
    ++current[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) {
      current[static_cast<std::size_t>(j)] = current[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
  return out;
}

}  // namespace

GeneratorSet generator_basis(int m, int k, const Order& L) {
  return generator_basis(m, k, ChargeRule::cyclic(m, L));
}

GeneratorSet generator_basis(int m, int k, const ChargeRule& rule) {
  if (k < 1 || k > m) {
    throw Error(ErrorCode::OutOfRange, "locality k=" + std::to_string(k) + " outside 1..m");
  }
  if (rule.m != m) throw Error(ErrorCode::DimensionMismatch, "charge rule width differs from m");
  GeneratorSet set{m, k, rule, {}};
  int q = std::min(k, m);
  const ComplexRational i = ComplexRational::i();
  for (const auto& s : subsets(m, q)) {
    Word local_mask = 0;
    for (int t = 1; t <= q; ++t) {
      if ((rule.mask & qubit_bit(s[static_cast<std::size_t>(t - 1)], m)) != 0) local_mask |= qubit_bit(t, q);
    }
    ChargeRule local{q, local_mask, rule.modulus};
    for (Word c = 0; c < (Word{1} << q); ++c) {
      for (Word c2 = c; c2 < (Word{1} << q); ++c2) {
        if (!local.allows(c, c2)) continue;
        if (c == c2) {
          set.ops.push_back(embed_local(Operator::matrix_unit(c, c, q, i), s, m));
          continue;
        }
        Operator sym = Operator::from_terms(q, {{c, c2, i}, {c2, c, i}});
        Operator anti = Operator::from_terms(q, {{c, c2, Rational(1)}, {c2, c, Rational(-1)}});
        set.ops.push_back(embed_local(sym, s, m));
        set.ops.push_back(embed_local(anti, s, m));
      }
    }
  }
  return set;
}

SparseVector real_coordinates(const Operator& a) {
  int m = a.m();
  SparseVector v;
  v.reserve(a.size());
  for (const Term& t : a.terms()) {
    if (t.bra == t.ket) {
      if (!t.coeff.im.is_zero()) v.emplace_back((t.bra << m) | t.bra, t.coeff.im);
    } else if (t.bra < t.ket) {
      if (!t.coeff.re.is_zero()) v.emplace_back((t.bra << m) | t.ket, t.coeff.re);
      if (!t.coeff.im.is_zero()) v.emplace_back((t.ket << m) | t.bra, t.coeff.im);
    }
  }
  std::sort(v.begin(), v.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  return v;
}

EchelonBasis::EchelonBasis(std::size_t columns) : row_of_pivot_(columns, -1) {}

namespace {

struct Scratch {
  std::vector<Rational> acc;
  std::vector<char> mark;
  std::vector<std::uint32_t> touched;

  void ensure(std::size_t n) {
    if (acc.size() < n) {
      acc.resize(n);
      mark.resize(n, 0);
    }
  }
  void touch(std::uint32_t c) {
    if (!mark[c]) {
      mark[c] = 1;
      touched.push_back(c);
    }
  }
};

thread_local Scratch tls_scratch;

}  // namespace

SparseVector EchelonBasis::reduce(const SparseVector& v) const {
  Scratch& s = tls_scratch;
  s.ensure(columns());
  for (const auto& [c, val] : v) {
    if (c >= columns()) throw Error(ErrorCode::DimensionMismatch, "vector longer than basis space");
    s.acc[c] = val;
    s.touch(c);
  }
  for (const auto& [c, val] : v) {
    std::int32_t r = row_of_pivot_[c];
    if (r < 0) continue;
    for (const auto& [cc, rv] : rows_[static_cast<std::size_t>(r)]) {
      s.acc[cc] -= val * rv;
      s.touch(cc);
    }
  }
  std::sort(s.touched.begin(), s.touched.end());
  SparseVector out;
  for (std::uint32_t c : s.touched) {
    if (!s.acc[c].is_zero()) out.emplace_back(c, std::move(s.acc[c]));
    s.acc[c] = Rational();
    s.mark[c] = 0;
  }
  s.touched.clear();
  return out;
}

namespace {

// a - f·b for sorted sparse vectors.
SparseVector axpy(const SparseVector& a, const Rational& f, const SparseVector& b) {
  SparseVector out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.emplace_back(b[j].first, -(f * b[j].second));
      ++j;
    } else {
      Rational v = a[i].second - f * b[j].second;
      if (!v.is_zero()) out.emplace_back(a[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

bool EchelonBasis::insert_reduced(SparseVector residual) {
  if (residual.empty()) return false;
  std::uint32_t pivot = residual.front().first;
  if (row_of_pivot_[pivot] >= 0) {
    throw Error(ErrorCode::MalformedExpression, "insert_reduced given an unreduced vector");
  }
  Rational inv = residual.front().second.reciprocal();
  for (auto& entry : residual) entry.second *= inv;
  for (auto& row : rows_) {
    auto it = std::lower_bound(row.begin(), row.end(), pivot,
                               [](const auto& e, std::uint32_t c) { return e.first < c; });
    if (it != row.end() && it->first == pivot) {
      Rational f = it->second;
      row = axpy(row, f, residual);
    }
  }
  row_of_pivot_[pivot] = static_cast<std::int32_t>(rows_.size());
  rows_.push_back(std::move(residual));
  return true;
}

Subspace::Subspace(int m) : m_(m), echelon_(std::size_t{1} << (2 * m)) {
  if (m < 1 || m > 8) throw Error(ErrorCode::TooLarge, "subspaces are limited to m <= 8");
}

bool Subspace::insert(const Operator& op) {
  if (op.m() != m_) throw Error(ErrorCode::DimensionMismatch, "operator width differs from subspace");
  if (!is_skew_hermitian(op)) {
    throw Error(ErrorCode::OutOfRange, "subspaces hold skew-Hermitian operators only");
  }
  return insert_with_residual(op, echelon_.reduce(real_coordinates(op)));
}

bool Subspace::insert_with_residual(const Operator& op, SparseVector residual) {
  if (!echelon_.insert_reduced(std::move(residual))) return false;
  basis_.push_back(op);
  return true;
}

bool Subspace::contains(const Operator& op) const {
  if (op.m() != m_) throw Error(ErrorCode::DimensionMismatch, "operator width differs from subspace");
  if (!is_skew_hermitian(op)) return false;
  return echelon_.reduce(real_coordinates(op)).empty();
}

bool subspace_contains(const Subspace& s, const Operator& op) { return s.contains(op); }

namespace {

// Runs fn(job) for job in [0, n) on up to `threads` workers.
template <typename Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
  unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

constexpr std::size_t kJobsPerBatch = 2048;

void check_ambient(std::size_t dim, std::uint64_t ambient) {
  if (dim > ambient) {
    throw Error(ErrorCode::OutOfRange, "closure dimension " + std::to_string(dim) +
                                           " exceeds the symmetric ambient dimension " +
                                           std::to_string(ambient));
  }
}

std::vector<const Operator*> seed_order(const GeneratorSet& gens, bool reverse) {
  if (gens.ops.empty()) throw Error(ErrorCode::EmptyInput, "closure of an empty generator set");
  std::vector<const Operator*> order;
  for (const auto& op : gens.ops) {
    if (op.m() != gens.m) throw Error(ErrorCode::DimensionMismatch, "generator width differs from m");
    order.push_back(&op);
  }
  if (reverse) std::reverse(order.begin(), order.end());
  return order;
}

}  // namespace

Subspace lie_closure(const GeneratorSet& gens, const ClosureOptions& options, ClosureStats* stats) {
  ClosureStats local_stats;
  ClosureStats& st = stats != nullptr ? *stats : local_stats;
  st = ClosureStats{};
  const std::uint64_t ambient = gens.rule.ambient_dim();

  Subspace span(gens.m);
  std::vector<Operator> independent;
  for (const Operator* g : seed_order(gens, options.reverse_generators)) {
    if (span.insert(*g)) {
      independent.push_back(*g);
      check_ambient(span.dim(), ambient);
    }
  }
  const std::size_t seeds = independent.size();
  st.independent_generators = seeds;

  struct Job {
    std::size_t frontier;
    std::size_t generator;
    Operator bracket;
    SparseVector residual;
  };

  auto full = [&] { return options.stop_at_ambient && span.dim() == ambient; };
  std::size_t next = 0;
  while (next < span.dim() && !full()) {
    std::size_t per_element = std::max<std::size_t>(1, independent.size());
    std::size_t batch = std::max<std::size_t>(1, kJobsPerBatch / per_element);
    std::size_t end = std::min(span.dim(), next + batch);

    std::vector<Job> jobs;
    for (std::size_t f = next; f < end; ++f) {
      // Seed pairs (i, j) with j < i were covered as (j, i).
      std::size_t first = f < seeds ? f + 1 : 0;
      for (std::size_t g = first; g < independent.size(); ++g) jobs.push_back({f, g, Operator(gens.m), {}});
    }
    const auto& basis = span.basis();
    const EchelonBasis& snapshot = span.echelon();
    parallel_for(jobs.size(), options.threads, [&](std::size_t j) {
      Job& job = jobs[j];
      job.bracket = commutator(basis[job.frontier], independent[job.generator]);
      if (!job.bracket.is_zero()) job.residual = snapshot.reduce(real_coordinates(job.bracket));
    });
    st.brackets += jobs.size();

    for (Job& job : jobs) {
      if (full()) break;
      if (job.residual.empty()) continue;
      SparseVector residual = span.echelon().reduce(job.residual);
      if (span.insert_with_residual(job.bracket, std::move(residual))) {
        check_ambient(span.dim(), ambient);
      }
    }
    st.frontier_processed = end;
    next = end;
    if (options.progress) options.progress(next, span.dim());
  }
  st.reached_ambient = span.dim() == ambient;
  return span;
}

namespace {

using Dense = std::vector<Complex>;

// Property-free floating state for the cross-check.
struct FloatOps {
  int m;
  std::size_t dim;

  Dense to_dense(const Operator& op) const {
    Dense d(dim * dim);
    for (const Term& t : op.terms()) {
      d[t.bra * dim + t.ket] = Complex(t.coeff.re.to_double(), t.coeff.im.to_double());
    }
    return d;
  }

  Dense bracket(const Dense& x, const Dense& y) const {
    Dense out(dim * dim);
    for (std::size_t i = 0; i < dim; ++i) {
      for (std::size_t k = 0; k < dim; ++k) {
        Complex xik = x[i * dim + k];
        Complex yik = y[i * dim + k];
        if (xik == Complex(0) && yik == Complex(0)) continue;
        for (std::size_t j = 0; j < dim; ++j) {
          out[i * dim + j] += xik * y[k * dim + j] - yik * x[k * dim + j];
        }
      }
    }
    return out;
  }

  std::vector<double> coords(const Dense& a) const {
    std::vector<double> v(dim * dim);
    for (std::size_t r = 0; r < dim; ++r) {
      for (std::size_t c = 0; c < dim; ++c) {
        Complex z = a[r * dim + c];
        // Off-diagonal pairs carry weight 2 in the Hilbert–Schmidt norm.
        if (r == c) {
          v[(r << m) | c] = z.imag();
        } else if (r < c) {
          v[(r << m) | c] = std::sqrt(2.0) * z.real();
          v[(c << m) | r] = std::sqrt(2.0) * z.imag();
        }
      }
    }
    return v;
  }
};

double norm2(const std::vector<double>& v) {
  double s = 0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

}  // namespace

std::size_t lie_closure_dim_float(const GeneratorSet& gens, const ClosureOptions& options) {
  if (gens.m > 6) throw Error(ErrorCode::TooLarge, "floating closure limited to m <= 6");
  FloatOps fo{gens.m, std::size_t{1} << gens.m};
  const std::uint64_t ambient = gens.rule.ambient_dim();
  std::vector<std::vector<double>> ortho;
  std::vector<Dense> elements;
  double max_norm = 0.0;

  auto try_insert = [&](const Dense& a) {
    std::vector<double> v = fo.coords(a);
    double n0 = norm2(v);
    max_norm = std::max(max_norm, n0);
    if (n0 <= 1e-9 * max_norm || n0 == 0.0) return false;
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& q : ortho) {
        double d = 0;
        for (std::size_t i = 0; i < v.size(); ++i) d += q[i] * v[i];
        for (std::size_t i = 0; i < v.size(); ++i) v[i] -= d * q[i];
      }
    }
    double n = norm2(v);
    if (n <= 1e-9 * max_norm) return false;
    for (double& x : v) x /= n;
    ortho.push_back(std::move(v));
    Dense scaled = a;
    for (Complex& z : scaled) z /= n0;
    elements.push_back(std::move(scaled));
    return true;
  };

  std::vector<Dense> independent;
  for (const Operator* g : seed_order(gens, options.reverse_generators)) {
    Dense d = fo.to_dense(*g);
    if (try_insert(d)) independent.push_back(elements.back());
  }
  const std::size_t seeds = independent.size();
  std::size_t next = 0;
  while (next < elements.size()) {
    if (options.stop_at_ambient && elements.size() == ambient) break;
    std::size_t first = next < seeds ? next + 1 : 0;
    std::size_t count = independent.size() - std::min(first, independent.size());
    std::vector<Dense> results(count);
    const Dense x = elements[next];
    parallel_for(count, options.threads, [&](std::size_t j) {
      results[j] = fo.bracket(x, independent[first + j]);
    });
    for (const Dense& r : results) {
      if (options.stop_at_ambient && elements.size() == ambient) break;
      try_insert(r);
    }
    ++next;
  }
  return elements.size();
}

Operator random_combination(const std::vector<Operator>& ops, std::mt19937_64& rng,
                            double density) {
  if (ops.empty()) throw Error(ErrorCode::EmptyInput, "random combination of nothing");
  std::bernoulli_distribution keep(density);
  std::uniform_int_distribution<std::int64_t> num(-5, 5);
  std::uniform_int_distribution<std::int64_t> den(1, 4);
  std::vector<ScaledOperator> parts;
  std::vector<ComplexRational> scalars;
  scalars.reserve(ops.size());
  for (const auto& op : ops) {
    if (!keep(rng)) continue;
    std::int64_t p = num(rng);
    std::int64_t q = den(rng);
    if (p == 0) continue;
    scalars.emplace_back(Rational(p, q));
    parts.push_back({scalars.back(), &op});
  }
  if (parts.empty()) return Operator(ops.front().m());
  return linear_combine(parts);
}

Json subspace_to_json(const Subspace& s) {
  Json basis = Json::array();
  for (const auto& op : s.basis()) basis.push_back(operator_to_json(op));
  return {{"m", s.m()}, {"dim", s.dim()}, {"basis", basis}};
}

Subspace subspace_from_json(const Json& j) {
  try {
    Subspace s(j.at("m").get<int>());
    for (const Json& op : j.at("basis")) s.insert(operator_from_json(op));
    if (j.contains("dim") && j.at("dim").get<std::size_t>() != s.dim()) {
      throw Error(ErrorCode::Parse, "basis is not linearly independent: declared dim " +
                                        std::to_string(j.at("dim").get<std::size_t>()) +
                                        ", rank " + std::to_string(s.dim()));
    }
    return s;
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("malformed subspace JSON: ") + e.what());
  }
}

}  // namespace symlie
