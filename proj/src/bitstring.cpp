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

#include "symlie/bitstring.hpp"

#include "symlie/errors.hpp"

namespace symlie {

namespace {

void check_width(int m) {
  if (m < 1 || m > kMaxQubits) {
    throw Error(ErrorCode::OutOfRange,
                "qubit count " + std::to_string(m) + " outside 1.." + std::to_string(kMaxQubits));
  }
}

void check_same(const BitString& a, const BitString& b) {
  if (a.m() != b.m()) {
    throw Error(ErrorCode::DimensionMismatch, "bit strings of different widths");
  }
}

}  // namespace

BitString::BitString(Word bits, int m) : bits_(bits), m_(m) {
  check_width(m);
  if ((bits & ~full_mask(m)) != 0) {
    throw Error(ErrorCode::OutOfRange, "bits set above width " + std::to_string(m));
  }
}

BitString BitString::parse(std::string_view text) {
  int m = static_cast<int>(text.size());
  check_width(m);
  Word bits = 0;
  for (char c : text) {
    if (c != '0' && c != '1') {
      throw Error(ErrorCode::Parse, "bit string may only contain 0/1: '" + std::string(text) + "'");
    }
    bits = (bits << 1) | static_cast<Word>(c - '0');
  }
  return {bits, m};
}

BitString BitString::from_support(const std::vector<int>& qubits, int m) {
  check_width(m);
  Word bits = 0;
  for (int q : qubits) {
    if (q < 1 || q > m) throw Error(ErrorCode::OutOfRange, "qubit index out of range");
    bits |= qubit_bit(q, m);
  }
  return {bits, m};
}

std::vector<int> BitString::support() const {
  std::vector<int> out;
  for (int q = 1; q <= m_; ++q) {
    if (test(q)) out.push_back(q);
  }
  return out;
}

BitString BitString::operator&(const BitString& o) const {
  check_same(*this, o);
  return {bits_ & o.bits_, m_};
}

BitString BitString::operator|(const BitString& o) const {
  check_same(*this, o);
  return {bits_ | o.bits_, m_};
}

BitString BitString::operator^(const BitString& o) const {
  check_same(*this, o);
  return {bits_ ^ o.bits_, m_};
}

std::string BitString::to_string() const { return word_to_string(bits_, m_); }

std::string word_to_string(Word bits, int m) {
  std::string out(static_cast<std::size_t>(m), '0');
  for (int q = 1; q <= m; ++q) {
    if ((bits & qubit_bit(q, m)) != 0) out[static_cast<std::size_t>(q - 1)] = '1';
  }
  return out;
}

}  // namespace symlie
