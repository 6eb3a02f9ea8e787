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

#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "symlie/cli.hpp"
#include "symlie/operator_io.hpp"

using namespace symlie;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "symlie");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "symlie_cli_tests";
  std::filesystem::create_directories(dir);
  return (dir / name).string();
}

std::string write_op(const std::string& name, const Operator& op) {
  std::string path = temp_file(name);
  write_json_file(path, operator_to_json(op));
  return path;
}

Json failing(const Json& verdict) {
  Json names = Json::array();
  for (const auto& c : verdict["checks"]) {
    if (!c["ok"].get<bool>()) names.push_back(c["name"]);
  }
  return names;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("argument helpers") {
    CHECK(cli::parse_int_list("3..5,7") == std::vector<int>{3, 4, 5, 7});
    auto orders = cli::parse_order_list("2,INF");
    REQUIRE(orders.size() == 2);
    CHECK(orders[1].is_infinite());
    CHECK_THROWS(cli::parse_int_list("5..3"));
  }

  TEST_CASE("dims examples") {
    Result a = run_cli({"dims", "--m", "4", "--k", "2", "--L", "2"});
    CHECK(a.code == cli::kExitOk);
    Json ja = Json::parse(a.out);
    CHECK(ja["rows"][0]["predicted_h_k"] == 127);
    Result b = run_cli({"dims", "--m", "3", "--k", "2", "--L", "INF"});
    CHECK(Json::parse(b.out)["rows"][0]["predicted_h_k"] == 19);
    Result grid = run_cli({"dims", "--m", "3..4", "--k", "2..3", "--L", "2,3,INF", "--verify"});
    CHECK(grid.code == cli::kExitOk);
    Json rows = Json::parse(grid.out)["rows"];
    CHECK(rows.size() == 12);
    for (const auto& r : rows) CHECK(r["agree"] == true);
  }

  TEST_CASE("dims csv and unsupported rows") {
    Result csv = run_cli({"dims", "--m", "4", "--k", "1..2", "--L", "2", "--format", "csv"});
    CHECK(csv.code == cli::kExitOk);
    std::istringstream lines(csv.out);
    std::string header, k1, k2;
    std::getline(lines, header);
    std::getline(lines, k1);
    std::getline(lines, k2);
    CHECK(header == "m,k,L,regime,constraint,h_m_dim,predicted_h_k,gap,oracle_h_k,agree");
    CHECK(k1.find("oracle-only") != std::string::npos);
    CHECK(k1.find(",5,") != std::string::npos);
    CHECK(k2.rfind("4,2,2,L_LE_K_EVEN,", 0) == 0);
    CHECK(run_cli({"dims", "--m", "7", "--k", "2", "--L", "2"}).code == cli::kExitError);
  }

  TEST_CASE("dims output is independent of threads") {
    std::vector<std::string> base = {"dims", "--m", "3..4", "--k", "2..3", "--L", "1,2,3,INF", "--verify",
                                     "--format", "csv"};
    auto with = [&](const char* t, bool reverse) {
      auto args = base;
      args.insert(args.end(), {"--threads", t});
      if (reverse) args.push_back("--reverse");
      return run_cli(args).out;
    };
    std::string one = with("1", false);
    CHECK(with("4", false) == one);
    CHECK(with("4", true) == one);
  }

  TEST_CASE("dims both modes") {
    Result r = run_cli({"dims", "--m", "4", "--k", "2", "--L", "3", "--verify", "--mode", "both"});
    CHECK(r.code == cli::kExitOk);
    CHECK(Json::parse(r.out)["rows"][0]["agree"] == true);
  }

  TEST_CASE("member examples") {
    std::string zall = write_op("zall.json", ComplexRational::i() * Operator::z_string(0b1111, 4));
    Result a = run_cli({"member", "--op", zall, "--k", "2", "--L", "2"});
    CHECK(a.code == cli::kExitNonMember);
    CHECK(failing(Json::parse(a.out)) == Json::array({"tr(A·Z^{⊗m})"}));

    Result zero = run_cli({"member", "--op", write_op("zero.json", Operator(4)), "--k", "2", "--L", "2"});
    CHECK(zero.code == cli::kExitOk);

    std::string herm = write_op("herm.json", Operator::pauli('Z', 1, 4));
    Result h = run_cli({"member", "--op", herm, "--k", "2", "--L", "2"});
    CHECK(h.code == cli::kExitNonMember);
    CHECK(failing(Json::parse(h.out)) == Json::array({"skew-hermitian"}));

    CHECK(run_cli({"member", "--op", temp_file("missing.json"), "--k", "2", "--L", "2"}).code == cli::kExitError);
    Result bad = run_cli({"member", "--op", zall, "--k", "1", "--L", "2"});
    CHECK(bad.code == cli::kExitError);
    CHECK(bad.err.rfind("error: UNSUPPORTED_REGIME", 0) == 0);
  }

  TEST_CASE("member sampling agrees with the oracle") {
    Result r = run_cli({"member", "--sample", "20", "--m", "3", "--k", "2", "--L", "2", "--seed", "5"});
    CHECK(r.code == cli::kExitOk);
  }

  TEST_CASE("member under a group file") {
    std::string group = temp_file("xgroup.json");
    write_json_file(group, Json::parse(R"({"generators": [{"matrix": [[0,0],[1,0],[1,0],[0,0]]}]})"));
    std::string ix = write_op("ix.json", ComplexRational::i() * Operator::pauli('X', 1, 3));
    CHECK(run_cli({"member", "--op", ix, "--k", "2", "--group", group}).code == cli::kExitOk);
    std::string iz = write_op("iz.json", ComplexRational::i() * Operator::pauli('Z', 1, 3));
    CHECK(run_cli({"member", "--op", iz, "--k", "2", "--group", group}).code == cli::kExitNonMember);
    Result red = run_cli({"reduce", "--group", group});
    CHECK(red.code == cli::kExitOk);
    CHECK(Json::parse(red.out)["L"] == "2");
  }

  TEST_CASE("closure command") {
    std::string out = temp_file("closure.json");
    Result r = run_cli({"closure", "--m", "3", "--k", "2", "--L", "2", "--out", out});
    CHECK(r.code == cli::kExitOk);
    CHECK(Json::parse(r.out)["dim"] == 31);
    CHECK(read_json_file(out)["basis"].size() == 31);
    Result p = run_cli({"closure", "--m", "4", "--k", "2", "--bmask", "1110"});
    CHECK(Json::parse(p.out)["dim"].get<int>() < 128);
  }

  TEST_CASE("synth examples") {
    std::string cert = temp_file("z1110.json");
    Result a = run_cli({"synth", "--target", "Z:1110", "--m", "4", "--n", "3", "--k", "3", "--out", cert});
    CHECK(a.code == cli::kExitOk);
    CHECK(Json::parse(a.out)["verified"] == true);
    CHECK(run_cli({"verify-cert", "--cert", cert}).code == cli::kExitOk);

    Result b = run_cli({"synth", "--target", "Z:1111", "--m", "4", "--n", "2", "--k", "2"});
    CHECK(b.code == cli::kExitError);
    CHECK(b.err.find("EXCLUDED_TARGET") != std::string::npos);

    Result c = run_cli({"synth", "--target", "F:1100:0011", "--m", "4", "--n", "2", "--k", "2"});
    CHECK(c.code == cli::kExitOk);
    Json jc = Json::parse(c.out);
    CHECK(jc["verified"] == true);
    CHECK_FALSE(jc["aux_diagonal_leaves"].empty());
  }

  TEST_CASE("verify-cert rejects a tampered file") {
    std::string cert = temp_file("tamper.json");
    run_cli({"synth", "--target", "Z:1111", "--m", "4", "--n", "3", "--k", "3", "--out", cert});
    Json j = read_json_file(cert);
    j["target"] = operator_to_json(ComplexRational::i() * Operator::z_string(0b0111, 4));
    write_json_file(cert, j);
    Result r = run_cli({"verify-cert", "--cert", cert});
    CHECK(r.code == cli::kExitCheckFailed);
    CHECK(Json::parse(r.out)["value_matches"] == false);
  }

  TEST_CASE("product-rep examples") {
    Result a = run_cli({"product-rep", "[Z,Z,I,I]", "--k", "2"});
    CHECK(a.code == cli::kExitOk);
    CHECK(Json::parse(a.out)["universal"] == true);
    Result b = run_cli({"product-rep", "[X,X,X,I]", "--k", "2"});
    Json jb = Json::parse(b.out);
    CHECK(jb["universal"] == false);
    CHECK(jb["bmask"] == "1110");
    Result c = run_cli({"product-rep", "--involutions", "[−I,−I,−I,−I]", "--k", "2", "--verify"});
    Json jc = Json::parse(c.out);
    CHECK(jc["universal"] == true);
    CHECK(jc["bmask"] == "0000");
    CHECK(jc["dims"]["h_k_dim"] == 256);
    Result d = run_cli({"product-rep", "[Z,S,I]", "--k", "2"});
    CHECK(d.code == cli::kExitError);
  }

  TEST_CASE("usage errors") {
    CHECK(run_cli({}).code == cli::kExitError);
    CHECK(run_cli({"bogus"}).code == cli::kExitError);
    CHECK(run_cli({"dims", "--m", "x", "--k", "2", "--L", "2"}).code == cli::kExitError);
  }
}
