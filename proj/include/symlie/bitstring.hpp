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

#include <bit>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace symlie {

inline constexpr int kMaxQubits = 16;

/** Raw m-bit word; qubit 1 is the most significant of the low m bits. */
using Word = std::uint32_t;

/** Bit position of (1-based) qubit `q` in an m-qubit word. */
constexpr Word qubit_bit(int q, int m) { return Word{1} << (m - q); }

constexpr int popcount(Word w) { return std::popcount(w); }

constexpr Word full_mask(int m) { return m >= 32 ? ~Word{0} : (Word{1} << m) - 1; }

/**
 * An m-bit word labelling a computational basis state or a Pauli-Z support.
 * Only the low m bits may be set. Strings read left to right as qubit 1..m.
 */
class BitString {
 public:
  BitString() = default;
  BitString(Word bits, int m);

  static BitString parse(std::string_view text);
  static BitString from_support(const std::vector<int>& qubits, int m);

  Word bits() const noexcept { return bits_; }
  int m() const noexcept { return m_; }
  int weight() const noexcept { return popcount(bits_); }
  bool test(int qubit) const noexcept { return (bits_ & qubit_bit(qubit, m_)) != 0; }

  /** Set qubits in ascending order, 1-based. */
  std::vector<int> support() const;

  BitString complement() const { return {~bits_ & full_mask(m_), m_}; }
  BitString operator&(const BitString& o) const;
  BitString operator|(const BitString& o) const;
  BitString operator^(const BitString& o) const;

  std::string to_string() const;

  friend bool operator==(const BitString&, const BitString&) = default;
  friend auto operator<=>(const BitString&, const BitString&) = default;

 private:
  Word bits_ = 0;
  int m_ = 1;
};

/** Renders the low m bits of a word, qubit 1 first. */
std::string word_to_string(Word bits, int m);

}  // namespace symlie
