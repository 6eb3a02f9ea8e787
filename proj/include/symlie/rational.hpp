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

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace symlie {

struct BigRational;

/**
 * Exact rational number in lowest terms.
 *
 * Values whose numerator and denominator fit in 64 bits are held inline;
 * anything larger spills to a GMP rational. The representation is always
 * canonical, so equality is structural.
 */
class Rational {
 public:
  Rational() noexcept = default;
  Rational(std::int64_t n) noexcept : num_(n) {}  // NOLINT implicit
  Rational(std::int64_t num, std::int64_t den);

  Rational(const Rational& other);
  Rational(Rational&& other) noexcept
      : num_(other.num_), den_(other.den_), big_(other.big_) {
    other.big_ = nullptr;
  }
  Rational& operator=(const Rational& other);
  Rational& operator=(Rational&& other) noexcept;
  ~Rational() {
    if (big_ != nullptr) release();
  }

  /**
   * Parses "n", "p/q" or a decimal literal such as "-0.125" or "1e-3".
   * Decimal literals are converted exactly, never through a double.
   */
  static Rational parse(std::string_view text);

  /**
   * Exact value of the shortest decimal that round-trips to `value`, so that
   * 0.1 becomes 1/10 rather than the binary expansion of the double.
   */
  static Rational from_double(double value);

  /** 2^e for any signed exponent. */
  static Rational pow2(int exponent);

  bool is_zero() const noexcept { return big_ == nullptr && num_ == 0; }
  int sign() const noexcept;
  bool is_integer() const noexcept;
  /** Numerator and denominator; throw when the value does not fit 64 bits. */
  std::int64_t numerator() const;
  std::int64_t denominator() const;

  Rational operator-() const;
  Rational reciprocal() const;

  Rational& operator+=(const Rational& rhs) { return *this = *this + rhs; }
  Rational& operator-=(const Rational& rhs) { return *this = *this - rhs; }
  Rational& operator*=(const Rational& rhs) { return *this = *this * rhs; }
  Rational& operator/=(const Rational& rhs) { return *this = *this / rhs; }

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);

  friend bool operator==(const Rational& a, const Rational& b) noexcept;
  friend std::strong_ordering operator<=>(const Rational& a,
                                          const Rational& b) noexcept;

  /** "n" for integers, "p/q" otherwise. */
  std::string to_string() const;
  double to_double() const;
  std::size_t hash() const noexcept;

 private:
  static Rational from_wide(__int128 num, __int128 den);
  static Rational small(std::int64_t num, std::int64_t den) noexcept {
    Rational r;
    r.num_ = num;
    r.den_ = den;
    return r;
  }
  void release() noexcept;
  BigRational* to_big() const;
  static Rational adopt(BigRational* big);

  static Rational add_slow(const Rational& a, const Rational& b, bool subtract);
  static Rational mul_slow(const Rational& a, const Rational& b);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  BigRational* big_ = nullptr;
};

inline Rational operator+(const Rational& a, const Rational& b) {
  if (a.big_ == nullptr && b.big_ == nullptr) {
    if (b.num_ == 0) return a;
    if (a.num_ == 0) return b;
    std::int64_t sum;
    if (a.den_ == 1 && b.den_ == 1 &&
        !__builtin_add_overflow(a.num_, b.num_, &sum)) {
      return Rational::small(sum, 1);
    }
  }
  return Rational::add_slow(a, b, false);
}

inline Rational operator-(const Rational& a, const Rational& b) {
  if (a.big_ == nullptr && b.big_ == nullptr) {
    if (b.num_ == 0) return a;
    std::int64_t diff;
    if (a.den_ == 1 && b.den_ == 1 &&
        !__builtin_sub_overflow(a.num_, b.num_, &diff)) {
      return Rational::small(diff, 1);
    }
  }
  return Rational::add_slow(a, b, true);
}

inline Rational operator*(const Rational& a, const Rational& b) {
  if (a.big_ == nullptr && b.big_ == nullptr) {
    if (a.num_ == 0 || b.num_ == 0) return Rational();
    std::int64_t prod;
    if (a.den_ == 1 && b.den_ == 1 &&
        !__builtin_mul_overflow(a.num_, b.num_, &prod)) {
      return Rational::small(prod, 1);
    }
  }
  return Rational::mul_slow(a, b);
}

inline Rational operator/(const Rational& a, const Rational& b) {
  return a * b.reciprocal();
}

/** Gaussian rational re + im·i. */
struct ComplexRational {
  Rational re;
  Rational im;

  ComplexRational() = default;
  ComplexRational(Rational real) : re(std::move(real)) {}  // NOLINT implicit
  ComplexRational(Rational real, Rational imag)
      : re(std::move(real)), im(std::move(imag)) {}

  static ComplexRational i() { return {Rational(0), Rational(1)}; }

  /** Accepts "a", "a+bi", "a-b i", "bi" with rational components. */
  static ComplexRational parse(std::string_view text);

  bool is_zero() const noexcept { return re.is_zero() && im.is_zero(); }
  bool is_real() const noexcept { return im.is_zero(); }
  ComplexRational conj() const { return {re, -im}; }
  ComplexRational operator-() const { return {-re, -im}; }

  ComplexRational& operator+=(const ComplexRational& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  ComplexRational& operator-=(const ComplexRational& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }

  friend ComplexRational operator+(const ComplexRational& a,
                                   const ComplexRational& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend ComplexRational operator-(const ComplexRational& a,
                                   const ComplexRational& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend ComplexRational operator*(const ComplexRational& a,
                                   const ComplexRational& b) {
    if (a.im.is_zero() && b.im.is_zero()) return {a.re * b.re};
    if (a.re.is_zero() && b.re.is_zero()) return {-(a.im * b.im)};
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend ComplexRational operator/(const ComplexRational& a,
                                   const ComplexRational& b);
  friend bool operator==(const ComplexRational& a,
                         const ComplexRational& b) noexcept {
    return a.re == b.re && a.im == b.im;
  }

  /** Formats as "re+im i" / "re-im i", e.g. "0+16 i" or "1/2-3/4 i". */
  std::string to_string() const;
  std::size_t hash() const noexcept { return re.hash() * 31 + im.hash(); }
};

}  // namespace symlie
