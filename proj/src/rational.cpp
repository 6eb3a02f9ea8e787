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

#include "symlie/rational.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numeric>

#include "symlie/errors.hpp"

namespace symlie {

struct BigRational {
  mpq_class value;
};

namespace {

using u128 = unsigned __int128;

u128 abs_wide(__int128 v) { return v < 0 ? u128(-(v + 1)) + 1 : u128(v); }

u128 gcd_wide(u128 a, u128 b) {
  if ((a >> 64) == 0 && (b >> 64) == 0) {
    return std::gcd(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b));
  }
  if (a == 0) return b;
  if (b == 0) return a;
  int shift = 0;
  while (((a | b) & 1) == 0) {
    a >>= 1;
    b >>= 1;
    ++shift;
  }
  while ((a & 1) == 0) a >>= 1;
  do {
    while ((b & 1) == 0) b >>= 1;
    if (a > b) std::swap(a, b);
    b -= a;
  } while (b != 0);
  return a << shift;
}

bool fits64(__int128 v) {
  return v >= std::numeric_limits<std::int64_t>::min() &&
         v <= std::numeric_limits<std::int64_t>::max();
}

void set_mpz_wide(mpz_class& out, __int128 v) {
  u128 mag = abs_wide(v);
  std::uint64_t limbs[2] = {static_cast<std::uint64_t>(mag),
                            static_cast<std::uint64_t>(mag >> 64)};
  mpz_import(out.get_mpz_t(), 2, -1, sizeof(std::uint64_t), 0, 0, limbs);
  if (v < 0) out = -out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
           return c >= '0' && c <= '9';
         });
}

[[noreturn]] void bad_number(std::string_view text) {
  throw Error(ErrorCode::Parse, "not a rational number: '" + std::string(text) + "'");
}

mpz_class parse_integer(std::string_view text, std::string_view whole) {
  bool negative = false;
  if (!text.empty() && (text.front() == '+' || text.front() == '-')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  if (!all_digits(text)) bad_number(whole);
  mpz_class v(std::string(text), 10);
  return negative ? mpz_class(-v) : v;
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw Error(ErrorCode::OutOfRange, "rational with zero denominator");
  *this = from_wide(num, den);
}

Rational::Rational(const Rational& other) : num_(other.num_), den_(other.den_) {
  if (other.big_ != nullptr) big_ = new BigRational(*other.big_);
}

Rational& Rational::operator=(const Rational& other) {
  if (this == &other) return *this;
  if (big_ != nullptr) release();
  num_ = other.num_;
  den_ = other.den_;
  if (other.big_ != nullptr) big_ = new BigRational(*other.big_);
  return *this;
}

Rational& Rational::operator=(Rational&& other) noexcept {
  if (this == &other) return *this;
  if (big_ != nullptr) release();
  num_ = other.num_;
  den_ = other.den_;
  big_ = other.big_;
  other.big_ = nullptr;
  return *this;
}

void Rational::release() noexcept {
  delete big_;
  big_ = nullptr;
}

BigRational* Rational::to_big() const {
  if (big_ != nullptr) return new BigRational(*big_);
  auto* b = new BigRational;
  b->value.get_num() = static_cast<long>(num_);
  b->value.get_den() = static_cast<long>(den_);
  return b;
}

Rational Rational::adopt(BigRational* big) {
  big->value.canonicalize();
  if (mpz_fits_slong_p(big->value.get_num_mpz_t()) &&
      mpz_fits_slong_p(big->value.get_den_mpz_t())) {
    Rational r = small(big->value.get_num().get_si(), big->value.get_den().get_si());
    delete big;
    return r;
  }
  Rational r;
  r.big_ = big;
  return r;
}

Rational Rational::from_wide(__int128 num, __int128 den) {
  if (den < 0) {
    num = -num;
    den = -den;
  }
  if (num == 0) return Rational();
  u128 g = gcd_wide(abs_wide(num), abs_wide(den));
  if (g != 1) {
    num /= static_cast<__int128>(g);
    den /= static_cast<__int128>(g);
  }
  if (fits64(num) && fits64(den)) {
    return small(static_cast<std::int64_t>(num), static_cast<std::int64_t>(den));
  }
  auto* b = new BigRational;
  set_mpz_wide(b->value.get_num(), num);
  set_mpz_wide(b->value.get_den(), den);
  Rational r;
  r.big_ = b;
  return r;
}

Rational Rational::add_slow(const Rational& a, const Rational& b, bool subtract) {
  if (a.big_ == nullptr && b.big_ == nullptr) {
    __int128 bn = subtract ? -static_cast<__int128>(b.num_) : b.num_;
    if (a.den_ == b.den_) return from_wide(a.num_ + bn, a.den_);
    std::int64_t g = std::gcd(a.den_, b.den_);
    __int128 n = static_cast<__int128>(a.num_) * (b.den_ / g) + bn * (a.den_ / g);
    __int128 d = static_cast<__int128>(a.den_ / g) * b.den_;
    return from_wide(n, d);
  }
  BigRational* x = a.to_big();
  BigRational* y = b.to_big();
  if (subtract) {
    x->value -= y->value;
  } else {
    x->value += y->value;
  }
  delete y;
  return adopt(x);
}

Rational Rational::mul_slow(const Rational& a, const Rational& b) {
  if (a.big_ == nullptr && b.big_ == nullptr) {
    std::int64_t g1 = std::gcd(a.num_, b.den_);
    std::int64_t g2 = std::gcd(b.num_, a.den_);
    __int128 n = static_cast<__int128>(a.num_ / g1) * (b.num_ / g2);
    __int128 d = static_cast<__int128>(a.den_ / g2) * (b.den_ / g1);
    if (fits64(n) && fits64(d)) {
      return small(static_cast<std::int64_t>(n), static_cast<std::int64_t>(d));
    }
    return from_wide(n, d);
  }
  BigRational* x = a.to_big();
  BigRational* y = b.to_big();
  x->value *= y->value;
  delete y;
  return adopt(x);
}

int Rational::sign() const noexcept {
  if (big_ != nullptr) return sgn(big_->value);
  return (num_ > 0) - (num_ < 0);
}

bool Rational::is_integer() const noexcept { return big_ == nullptr && den_ == 1; }

std::int64_t Rational::numerator() const {
  if (big_ != nullptr) throw Error(ErrorCode::TooLarge, "numerator exceeds 64 bits");
  return num_;
}

std::int64_t Rational::denominator() const {
  if (big_ != nullptr) throw Error(ErrorCode::TooLarge, "denominator exceeds 64 bits");
  return den_;
}

Rational Rational::operator-() const {
  if (big_ == nullptr && num_ != std::numeric_limits<std::int64_t>::min()) {
    return small(-num_, den_);
  }
  BigRational* x = to_big();
  x->value = -x->value;
  return adopt(x);
}

Rational Rational::reciprocal() const {
  if (is_zero()) throw Error(ErrorCode::OutOfRange, "division by zero");
  if (big_ == nullptr && num_ != std::numeric_limits<std::int64_t>::min()) {
    return num_ < 0 ? small(-den_, -num_) : small(den_, num_);
  }
  BigRational* x = to_big();
  x->value = 1 / x->value;
  return adopt(x);
}

bool operator==(const Rational& a, const Rational& b) noexcept {
  if (a.big_ == nullptr && b.big_ == nullptr) return a.num_ == b.num_ && a.den_ == b.den_;
  if (a.big_ != nullptr && b.big_ != nullptr) return a.big_->value == b.big_->value;
  return false;  // canonical form: a spilled value never fits inline
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) noexcept {
  if (a.big_ == nullptr && b.big_ == nullptr) {
    __int128 lhs = static_cast<__int128>(a.num_) * b.den_;
    __int128 rhs = static_cast<__int128>(b.num_) * a.den_;
    return lhs <=> rhs;
  }
  BigRational* x = a.to_big();
  BigRational* y = b.to_big();
  int c = cmp(x->value, y->value);
  delete x;
  delete y;
  return c <=> 0;
}

std::string Rational::to_string() const {
  if (big_ != nullptr) return big_->value.get_str();
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

double Rational::to_double() const {
  if (big_ != nullptr) return big_->value.get_d();
  return static_cast<double>(num_) / static_cast<double>(den_);
}

std::size_t Rational::hash() const noexcept {
  if (big_ != nullptr) {
    return mpz_get_ui(big_->value.get_num_mpz_t()) * 0x9E3779B97F4A7C15ULL ^
           mpz_get_ui(big_->value.get_den_mpz_t());
  }
  return static_cast<std::size_t>(num_) * 0x9E3779B97F4A7C15ULL ^
         static_cast<std::size_t>(den_);
}

Rational Rational::pow2(int exponent) {
  if (exponent >= 0 && exponent < 62) return small(std::int64_t{1} << exponent, 1);
  if (exponent < 0 && exponent > -62) return small(1, std::int64_t{1} << -exponent);
  auto* b = new BigRational;
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(std::abs(exponent)));
  if (exponent >= 0) {
    b->value = mpq_class(p);
  } else {
    b->value = mpq_class(mpz_class(1), p);
  }
  return adopt(b);
}

Rational Rational::parse(std::string_view whole) {
  std::string_view text = trim(whole);
  if (text.empty()) bad_number(whole);
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    mpz_class num = parse_integer(trim(text.substr(0, slash)), whole);
    mpz_class den = parse_integer(trim(text.substr(slash + 1)), whole);
    if (den == 0) throw Error(ErrorCode::Parse, "zero denominator in '" + std::string(whole) + "'");
    auto* b = new BigRational;
    b->value = mpq_class(num, den);
    return adopt(b);
  }
  if (text.find_first_of(".eE") == std::string_view::npos) {
    auto* b = new BigRational;
    b->value = mpq_class(parse_integer(text, whole));
    return adopt(b);
  }
  // Decimal literal: [sign] digits [. digits] [e [sign] digits]
  bool negative = false;
  if (text.front() == '+' || text.front() == '-') {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  long exponent = 0;
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_text = text.substr(e + 1);
    bool exp_negative = false;
    if (!exp_text.empty() && (exp_text.front() == '+' || exp_text.front() == '-')) {
      exp_negative = exp_text.front() == '-';
      exp_text.remove_prefix(1);
    }
    if (!all_digits(exp_text) || exp_text.size() > 6) bad_number(whole);
    exponent = std::stol(std::string(exp_text));
    if (exp_negative) exponent = -exponent;
    text = text.substr(0, e);
  }
  std::string digits;
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = text.substr(0, dot);
    std::string_view frac_part = text.substr(dot + 1);
    if ((!int_part.empty() && !all_digits(int_part)) ||
        (!frac_part.empty() && !all_digits(frac_part)) ||
        (int_part.empty() && frac_part.empty())) {
      bad_number(whole);
    }
    digits = std::string(int_part) + std::string(frac_part);
    exponent -= static_cast<long>(frac_part.size());
  } else {
    if (!all_digits(text)) bad_number(whole);
    digits = std::string(text);
  }
  mpz_class mantissa(digits, 10);
  if (negative) mantissa = -mantissa;
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exponent)));
  auto* b = new BigRational;
  if (exponent >= 0) {
    b->value = mpq_class(mantissa * scale);
  } else {
    b->value = mpq_class(mantissa, scale);
  }
  return adopt(b);
}

Rational Rational::from_double(double value) {
  if (!std::isfinite(value)) throw Error(ErrorCode::Parse, "non-finite floating value");
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return parse(std::string_view(buf, static_cast<std::size_t>(res.ptr - buf)));
}

ComplexRational operator/(const ComplexRational& a, const ComplexRational& b) {
  Rational norm = b.re * b.re + b.im * b.im;
  ComplexRational num = a * b.conj();
  return {num.re / norm, num.im / norm};
}

ComplexRational ComplexRational::parse(std::string_view whole) {
  std::string text;
  for (char c : whole) {
    if (!std::isspace(static_cast<unsigned char>(c))) text.push_back(c);
  }
  if (text.empty()) throw Error(ErrorCode::Parse, "empty complex number");
  if (text.back() != 'i') return {Rational::parse(text)};
  text.pop_back();
  std::size_t split = std::string::npos;
  for (std::size_t pos = text.size(); pos-- > 1;) {
    if ((text[pos] == '+' || text[pos] == '-') && text[pos - 1] != 'e' &&
        text[pos - 1] != 'E') {
      split = pos;
      break;
    }
  }
  std::string re_text = split == std::string::npos ? "" : text.substr(0, split);
  std::string im_text = split == std::string::npos ? text : text.substr(split);
  Rational im;
  if (im_text.empty() || im_text == "+") {
    im = 1;
  } else if (im_text == "-") {
    im = -1;
  } else {
    im = Rational::parse(im_text);
  }
  return {re_text.empty() ? Rational() : Rational::parse(re_text), im};
}

std::string ComplexRational::to_string() const {
  std::string out = re.to_string();
  if (im.sign() < 0) {
    out += "-" + (-im).to_string();
  } else {
    out += "+" + im.to_string();
  }
  return out + " i";
}

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "DIMENSION_MISMATCH";
    case ErrorCode::OutOfRange: return "OUT_OF_RANGE";
    case ErrorCode::DuplicateIndex: return "DUPLICATE_INDEX";
    case ErrorCode::NonCommuting: return "NON_COMMUTING";
    case ErrorCode::NonUnitary: return "NON_UNITARY";
    case ErrorCode::NotInvolution: return "NOT_INVOLUTION";
    case ErrorCode::UnsupportedRegime: return "UNSUPPORTED_REGIME";
    case ErrorCode::ExcludedTarget: return "EXCLUDED_TARGET";
    case ErrorCode::RegimeViolation: return "REGIME_VIOLATION";
    case ErrorCode::WeightMismatch: return "WEIGHT_MISMATCH";
    case ErrorCode::MalformedExpression: return "MALFORMED_EXPRESSION";
    case ErrorCode::Parse: return "PARSE_ERROR";
    case ErrorCode::SnapFailure: return "SNAP_FAILURE";
    case ErrorCode::TooLarge: return "TOO_LARGE";
    case ErrorCode::EmptyInput: return "EMPTY_INPUT";
    case ErrorCode::Internal: return "INTERNAL";
  }
  return "UNKNOWN";
}

}  // namespace symlie
