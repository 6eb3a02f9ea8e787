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

#include "symlie/operator_io.hpp"

#include <fstream>
#include <sstream>

#include "symlie/errors.hpp"

namespace symlie {

Json rational_to_json(const Rational& r) { return r.to_string(); }

Rational rational_from_json(const Json& j) {
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (j.is_number_float()) return Rational::from_double(j.get<double>());
  throw Error(ErrorCode::Parse, "expected a rational, got " + j.dump());
}

Json operator_to_json(const Operator& op) {
  Json terms = Json::array();
  for (const Term& t : op.terms()) {
    terms.push_back({{"bra", word_to_string(t.bra, op.m())},
                     {"ket", word_to_string(t.ket, op.m())},
                     {"re", rational_to_json(t.coeff.re)},
                     {"im", rational_to_json(t.coeff.im)}});
  }
  return {{"m", op.m()}, {"terms", terms}};
}

Operator operator_from_json(const Json& j) {
  try {
    int m = j.at("m").get<int>();
    std::vector<Term> terms;
    for (const Json& t : j.at("terms")) {
      BitString bra = BitString::parse(t.at("bra").get<std::string>());
      BitString ket = BitString::parse(t.at("ket").get<std::string>());
      if (bra.m() != m || ket.m() != m) {
        throw Error(ErrorCode::DimensionMismatch, "basis label width differs from m");
      }
      Rational re = t.contains("re") ? rational_from_json(t.at("re")) : Rational();
      Rational im = t.contains("im") ? rational_from_json(t.at("im")) : Rational();
      terms.push_back({bra.bits(), ket.bits(), {re, im}});
    }
    return Operator::from_terms(m, std::move(terms));
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("malformed operator JSON: ") + e.what());
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Parse, "cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::Parse, path + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::Parse, "cannot write " + path);
  out << j.dump(1) << '\n';
}

}  // namespace symlie
