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

#include "symlie/cli.hpp"

#include <cstdlib>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "symlie/characterization.hpp"
#include "symlie/closure.hpp"
#include "symlie/errors.hpp"
#include "symlie/operator_io.hpp"
#include "symlie/product_rep.hpp"
#include "symlie/synthesis.hpp"

namespace symlie::cli {

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

int parse_int(const std::string& s) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) throw Error(ErrorCode::Parse, "expected an integer, got '" + s + "'");
  return v;
}

}  // namespace

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  for (const std::string& part : split(text, ',')) {
    auto dots = part.find("..");
    if (dots == std::string::npos) {
      out.push_back(parse_int(part));
      continue;
    }
    int lo = parse_int(part.substr(0, dots));
    int hi = parse_int(part.substr(dots + 2));
    if (lo > hi) throw Error(ErrorCode::Parse, "empty range '" + part + "'");
    for (int v = lo; v <= hi; ++v) out.push_back(v);
  }
  if (out.empty()) throw Error(ErrorCode::Parse, "empty list '" + text + "'");
  return out;
}

std::vector<Order> parse_order_list(const std::string& text) {
  std::vector<Order> out;
  for (const std::string& part : split(text, ',')) {
    if (part.find("..") != std::string::npos) {
      for (int v : parse_int_list(part)) out.push_back(Order::finite(static_cast<std::uint64_t>(v)));
    } else {
      out.push_back(Order::parse(part));
    }
  }
  if (out.empty()) throw Error(ErrorCode::Parse, "empty list '" + text + "'");
  return out;
}

unsigned default_threads() {
  const char* env = std::getenv("SYMLIE_THREADS");
  if (env == nullptr || *env == '\0') return 1;
  int v = parse_int(env);
  if (v < 1) throw Error(ErrorCode::OutOfRange, "SYMLIE_THREADS must be positive");
  return static_cast<unsigned>(v);
}

namespace {

enum class Mode { Exact, Float, Both };

/** Parsed command line, validated before dispatch. */
struct RunConfig {
  std::string command;
  std::string m = "";
  std::string k = "";
  std::string L = "";
  std::string group;
  std::string op;
  std::string bmask;
  std::string format = "json";
  std::string mode = "exact";
  std::string target;
  std::string cert;
  std::string out;
  std::string involutions;
  int n = 0;
  int sample = 0;
  std::uint64_t seed = 1;
  unsigned threads = 1;
  bool verify = false;
  bool reverse = false;
};

Mode parse_mode(const std::string& s) {
  if (s == "exact") return Mode::Exact;
  if (s == "float") return Mode::Float;
  if (s == "both") return Mode::Both;
  throw Error(ErrorCode::Parse, "mode must be exact, float or both");
}

int single_int(const std::string& text, const char* name) {
  auto v = parse_int_list(text);
  if (v.size() != 1) throw Error(ErrorCode::Parse, std::string("--") + name + " takes a single value here");
  return v.front();
}

Order single_order(const std::string& text) {
  auto v = parse_order_list(text);
  if (v.size() != 1) throw Error(ErrorCode::Parse, "--L takes a single value here");
  return v.front();
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

std::string csv_value(const Json& v) {
  if (v.is_null()) return "";
  if (v.is_string()) return csv_field(v.get<std::string>());
  return v.dump();
}

void emit(const Json& j, std::ostream& out) { out << j.dump(2) << "\n"; }

void emit_csv(const Json& rows, const std::vector<std::string>& columns, std::ostream& out) {
  for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << columns[i];
  out << "\n";
  for (const Json& row : rows) {
    for (std::size_t i = 0; i < columns.size(); ++i) {
      out << (i ? "," : "") << csv_value(row.value(columns[i], Json(nullptr)));
    }
    out << "\n";
  }
}

ClosureOptions closure_options(const RunConfig& c) {
  ClosureOptions o;
  o.threads = c.threads;
  o.reverse_generators = c.reverse;
  return o;
}

/** Oracle dim under the configured mode; Both throws on disagreement. */
struct OracleDims {
  std::optional<std::size_t> exact;
  std::optional<std::size_t> floating;
  std::size_t value() const { return exact ? *exact : *floating; }
};

OracleDims oracle_dims(const GeneratorSet& gens, Mode mode, const ClosureOptions& o) {
  OracleDims d;
  if (mode != Mode::Float) d.exact = lie_closure(gens, o).dim();
  if (mode != Mode::Exact) d.floating = lie_closure_dim_float(gens, o);
  if (d.exact && d.floating && *d.exact != *d.floating) {
    throw Error(ErrorCode::Internal, "exact/float closure disagreement: exact " +
                                         std::to_string(*d.exact) + ", float " +
                                         std::to_string(*d.floating));
  }
  return d;
}

int cmd_dims(const RunConfig& c, std::ostream& out) {
  const Mode mode = parse_mode(c.mode);
  const auto ms = parse_int_list(c.m);
  const auto ks = parse_int_list(c.k);
  const auto Ls = parse_order_list(c.L);
  Json rows = Json::array();
  bool all_agree = true;
  for (int m : ms) {
    if (m < 1 || m > 6) throw Error(ErrorCode::OutOfRange, "dims supports 1 <= m <= 6");
    for (int k : ks) {
      if (k < 1 || k > m) continue;
      for (const Order& L : Ls) {
        Json row{{"m", m}, {"k", k}, {"L", L.to_string()}};
        std::optional<std::uint64_t> predicted;
        try {
          DimsReport d = dims_report(m, k, L);
          row["regime"] = regime_tag_name(d.regime.tag);
          row["constraint"] = regime_constraint(d.regime);
          row["h_m_dim"] = d.h_m;
          row["predicted_h_k"] = d.h_k;
          row["gap"] = d.gap;
          predicted = d.h_k;
        } catch (const Error& e) {
          if (e.code() != ErrorCode::UnsupportedRegime) throw;
          row["regime"] = "oracle-only";
          row["constraint"] = "no closed form";
          row["h_m_dim"] = h_m_dim(m, L);
          row["predicted_h_k"] = nullptr;
          row["gap"] = nullptr;
        }
        row["oracle_h_k"] = nullptr;
        row["agree"] = nullptr;
        if ((c.verify || !predicted) && m <= 5) {
          OracleDims o = oracle_dims(generator_basis(m, k, L), mode, closure_options(c));
          row["oracle_h_k"] = o.value();
          if (predicted) {
            bool agree = o.value() == *predicted;
            row["agree"] = agree;
            all_agree = all_agree && agree;
          }
        }
        rows.push_back(std::move(row));
      }
    }
  }
  if (c.format == "csv") {
    emit_csv(rows, {"m", "k", "L", "regime", "constraint", "h_m_dim", "predicted_h_k", "gap",
                    "oracle_h_k", "agree"},
             out);
  } else {
    emit({{"rows", rows}}, out);
  }
  return all_agree ? kExitOk : kExitCheckFailed;
}

/** Rotated-frame order L from --L or --group, rotating `a` when needed. */
Order resolve_symmetry(const RunConfig& c, Operator* a, Json* info) {
  if (!c.group.empty() == !c.L.empty()) {
    throw Error(ErrorCode::Parse, "give exactly one of --L and --group");
  }
  if (!c.L.empty()) return single_order(c.L);
  ReducedSymmetry sym = reduce(group_spec_from_json(read_json_file(c.group)));
  if (a != nullptr) *a = to_rotated_frame(*a, sym);
  if (info != nullptr) (*info)["reduced"] = reduced_to_json(sym);
  return sym.L;
}

int cmd_member(const RunConfig& c, std::ostream& out) {
  const int k = single_int(c.k, "k");
  if (c.op.empty() == (c.sample == 0)) throw Error(ErrorCode::Parse, "give exactly one of --op and --sample");
  if (!c.op.empty()) {
    Operator a = operator_from_json(read_json_file(c.op));
    Json info;
    Order L = resolve_symmetry(c, &a, &info);
    MembershipVerdict v = membership(a, a.m(), k, L);
    Json j = verdict_to_json(v);
    j["m"] = a.m();
    j["k"] = k;
    j["L"] = L.to_string();
    j["regime"] = regime_tag_name(classify(a.m(), k, L).tag);
    if (info.contains("reduced")) j["reduced"] = info["reduced"];
    emit(j, out);
    return v.member ? kExitOk : kExitNonMember;
  }
  // Seeded cross-check of the closed form against the closure oracle.
  const int m = single_int(c.m, "m");
  Order L = resolve_symmetry(c, nullptr, nullptr);
  classify(m, k, L);
  std::mt19937_64 rng(c.seed);
  GeneratorSet local = generator_basis(m, k, L);
  GeneratorSet full = generator_basis(m, m, L);
  Subspace closure = lie_closure(local, closure_options(c));
  int agree = 0;
  int members = 0;
  for (int i = 0; i < c.sample; ++i) {
    Operator a = random_combination(i % 2 == 0 ? full.ops : local.ops, rng);
    bool verdict = membership(a, m, k, L).member;
    bool oracle = closure.contains(a);
    agree += verdict == oracle ? 1 : 0;
    members += verdict ? 1 : 0;
  }
  emit({{"m", m}, {"k", k}, {"L", L.to_string()}, {"seed", c.seed}, {"samples", c.sample},
        {"members", members}, {"agree", agree}},
       out);
  return agree == c.sample ? kExitOk : kExitCheckFailed;
}

int cmd_closure(const RunConfig& c, std::ostream& out) {
  const Mode mode = parse_mode(c.mode);
  const int m = single_int(c.m, "m");
  const int k = single_int(c.k, "k");
  ChargeRule rule;
  Json sym;
  if (!c.bmask.empty()) {
    if (!c.L.empty() || !c.group.empty()) throw Error(ErrorCode::Parse, "--bmask excludes --L and --group");
    BitString mask = BitString::parse(c.bmask);
    if (mask.m() != m) throw Error(ErrorCode::DimensionMismatch, "--bmask width differs from m");
    rule = ChargeRule::product(m, mask.bits());
    sym = {{"bmask", mask.to_string()}};
  } else {
    Json info;
    Order L = resolve_symmetry(c, nullptr, &info);
    rule = ChargeRule::cyclic(m, L);
    sym = {{"L", L.to_string()}};
    if (info.contains("reduced")) sym["reduced"] = info["reduced"];
  }
  if (m > 6) throw Error(ErrorCode::TooLarge, "closure supports m <= 6");
  GeneratorSet gens = generator_basis(m, k, rule);
  Json j{{"m", m}, {"k", k}, {"symmetry", sym}, {"generators", gens.ops.size()},
         {"ambient_dim", rule.ambient_dim()}};
  if (mode != Mode::Float) {
    ClosureStats st;
    Subspace s = lie_closure(gens, closure_options(c), &st);
    j["dim"] = s.dim();
    j["independent_generators"] = st.independent_generators;
    j["brackets"] = st.brackets;
    if (!c.out.empty()) write_json_file(c.out, subspace_to_json(s));
  }
  if (mode != Mode::Exact) {
    std::size_t f = lie_closure_dim_float(gens, closure_options(c));
    j["float_dim"] = f;
    if (mode == Mode::Both && j["dim"].get<std::size_t>() != f) {
      throw Error(ErrorCode::Internal, "exact/float closure disagreement: exact " +
                                           j["dim"].dump() + ", float " + std::to_string(f));
    }
  }
  if (c.format == "csv") {
    Json row = j;
    row["symmetry"] = sym.contains("bmask") ? "bmask=" + sym["bmask"].get<std::string>()
                                            : "L=" + sym["L"].get<std::string>();
    emit_csv(Json::array({row}), {"m", "k", "symmetry", "generators", "ambient_dim", "dim",
                                  "independent_generators", "brackets", "float_dim"},
             out);
  } else {
    emit(j, out);
  }
  return kExitOk;
}

Json check_to_json(const CertificateCheck& chk, const Expr& root) {
  Json aux = Json::array();
  std::vector<std::string> seen;
  std::function<void(const Expr&)> walk = [&](const Expr& e) {
    if (e->kind == ExprKind::Leaf) {
      if (e->tag == LeafTag::AuxDiagonal && e->op.size() == 1) {
        std::string s = word_to_string(e->op.terms()[0].bra, e->op.m());
        if (std::find(seen.begin(), seen.end(), s) == seen.end()) seen.push_back(s);
      }
    } else if (e->kind == ExprKind::Bracket) {
      walk(e->left);
      walk(e->right);
    } else {
      for (const auto& t : e->terms) walk(t.second);
    }
  };
  if (root) walk(root);
  for (const auto& s : seen) aux.push_back(s);
  return {{"verified", chk.ok},
          {"value_matches", chk.value_matches},
          {"problems", chk.problems},
          {"nodes", chk.stats.nodes},
          {"brackets", chk.stats.brackets},
          {"depth", chk.stats.depth},
          {"generator_leaves", chk.stats.generator_leaves},
          {"aux_diagonal_leaves", aux}};
}

int cmd_synth(const RunConfig& c, std::ostream& out) {
  TargetSpec t = TargetSpec::parse(c.target);
  const int m = c.m.empty() ? t.b.m() : single_int(c.m, "m");
  if (t.b.m() != m) throw Error(ErrorCode::DimensionMismatch, "target width differs from --m");
  const int k = single_int(c.k, "k");
  if (c.n < 1) throw Error(ErrorCode::Parse, "--n must be a positive order");
  ExprPool pool;
  Expr root = t.kind == TargetSpec::Kind::ZString ? synth_diag(t.b, m, c.n, k, &pool)
                                                  : synth_offdiag(t.b, t.b2, m, c.n, k, &pool);
  Certificate cert{m, k, ChargeRule::cyclic(m, Order::finite(static_cast<std::uint64_t>(c.n))),
                   t.op(), root};
  if (!c.out.empty()) write_json_file(c.out, certificate_to_json(cert));
  CertificateCheck chk = verify_certificate(cert);
  Json j = check_to_json(chk, root);
  j["target"] = t.to_string();
  j["m"] = m;
  j["n"] = c.n;
  j["k"] = k;
  if (!c.out.empty()) j["certificate"] = c.out;
  emit(j, out);
  return chk.ok ? kExitOk : kExitCheckFailed;
}

int cmd_verify_cert(const RunConfig& c, std::ostream& out) {
  Certificate cert = certificate_from_json(read_json_file(c.cert));
  CertificateCheck chk = verify_certificate(cert);
  Json j = check_to_json(chk, cert.root);
  j["m"] = cert.m;
  j["k"] = cert.k;
  emit(j, out);
  return chk.ok ? kExitOk : kExitCheckFailed;
}

int cmd_product_rep(const RunConfig& c, std::ostream& out) {
  std::vector<InvolutionClass> classes;
  for (const Mat2& u : parse_involution_list(c.involutions)) classes.push_back(classify_involution(u));
  const int m = static_cast<int>(classes.size());
  const int k = single_int(c.k, "k");
  if (k < 1 || k > m) throw Error(ErrorCode::OutOfRange, "k must satisfy 1 <= k <= m");
  ProductReport r = c.verify ? product_closure_check(classes, m, k, closure_options(c))
                             : product_report(classes, k);
  emit(product_report_to_json(r), out);
  return c.verify && r.universal != r.predicate ? kExitCheckFailed : kExitOk;
}

int cmd_reduce(const RunConfig& c, std::ostream& out) {
  if (c.group.empty()) throw Error(ErrorCode::Parse, "reduce needs --group");
  ReducedSymmetry sym = reduce(group_spec_from_json(read_json_file(c.group)));
  Json j = reduced_to_json(sym);
  if (!c.op.empty()) {
    j["rotated_op"] = operator_to_json(to_rotated_frame(operator_from_json(read_json_file(c.op)), sym));
  }
  emit(j, out);
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"Lie closures of local symmetric generators on qubits"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "symlie 1.0.0");
  try {
    c.threads = default_threads();
  } catch (const Error& e) {
    err << "error: " << error_code_name(e.code()) << ": " << e.what() << "\n";
    return kExitError;
  }

  auto add_threads = [&](CLI::App* s) {
    s->add_option("--threads", c.threads, "Worker threads for bracket evaluation")->check(CLI::PositiveNumber);
    s->add_flag("--reverse", c.reverse, "Seed generators in reverse order");
  };
  auto add_mode = [&](CLI::App* s) {
    s->add_option("--mode", c.mode, "exact, float or both")->check(CLI::IsMember({"exact", "float", "both"}));
  };

  auto* dims = app.add_subcommand("dims", "Predicted and oracle closure dimensions over a grid");
  dims->add_option("--m", c.m, "Qubit counts, e.g. 3..5")->required();
  dims->add_option("--k", c.k, "Localities, e.g. 2,3")->required();
  dims->add_option("--L", c.L, "Orders, e.g. 1..4,INF")->required();
  dims->add_flag("--verify", c.verify, "Run the closure oracle on every row");
  dims->add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  add_mode(dims);
  add_threads(dims);

  auto* member = app.add_subcommand("member", "Closed-form membership verdict");
  member->add_option("--op", c.op, "Operator file");
  member->add_option("--m", c.m, "Qubit count (with --sample)");
  member->add_option("--k", c.k, "Locality")->required();
  member->add_option("--L", c.L, "Order in the rotated frame");
  member->add_option("--group", c.group, "Group specification file");
  member->add_option("--sample", c.sample, "Check N seeded random operators against the oracle")
      ->check(CLI::PositiveNumber);
  member->add_option("--seed", c.seed, "Sampling seed");
  add_threads(member);

  auto* closure = app.add_subcommand("closure", "Closure oracle");
  closure->add_option("--m", c.m, "Qubit count")->required();
  closure->add_option("--k", c.k, "Locality")->required();
  closure->add_option("--L", c.L, "Order in the rotated frame");
  closure->add_option("--group", c.group, "Group specification file");
  closure->add_option("--bmask", c.bmask, "Product symmetry Z^bmask");
  closure->add_option("--out", c.out, "Write the basis as JSON");
  closure->add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  add_mode(closure);
  add_threads(closure);

  auto* synth = app.add_subcommand("synth", "Bracket certificate for iZ^b or F(b,b')");
  synth->add_option("--target", c.target, "Z:<bits> or F:<bits>:<bits>")->required();
  synth->add_option("--m", c.m, "Qubit count (defaults to the target width)");
  synth->add_option("--n", c.n, "Symmetry order")->required();
  synth->add_option("--k", c.k, "Locality")->required();
  synth->add_option("--out", c.out, "Certificate file");

  auto* verify = app.add_subcommand("verify-cert", "Re-check a certificate file");
  verify->add_option("--cert", c.cert, "Certificate file")->required();

  auto* product = app.add_subcommand("product-rep", "Per-qubit involution symmetry report");
  product->add_option("involutions,--involutions", c.involutions, "e.g. [Z,Z,I,I]");
  product->add_option("--k", c.k, "Locality")->required();
  product->add_flag("--verify", c.verify, "Compare with closure oracle dims");
  add_threads(product);

  auto* red = app.add_subcommand("reduce", "Diagonalising frame and order L of a group");
  red->add_option("--group", c.group, "Group specification file")->required();
  red->add_option("--op", c.op, "Operator file to rotate into the frame");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (c.format == "csv" && !(*dims || *closure)) {
      throw Error(ErrorCode::Parse, "--format csv is available for dims and closure only");
    }
    if (*dims) return cmd_dims(c, out);
    if (*member) return cmd_member(c, out);
    if (*closure) return cmd_closure(c, out);
    if (*synth) return cmd_synth(c, out);
    if (*verify) return cmd_verify_cert(c, out);
    if (*product) {
      if (c.involutions.empty()) throw Error(ErrorCode::Parse, "product-rep needs an involution list");
      return cmd_product_rep(c, out);
    }
    if (*red) return cmd_reduce(c, out);
  } catch (const Error& e) {
    err << "error: " << error_code_name(e.code()) << ": " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}

}  // namespace symlie::cli
