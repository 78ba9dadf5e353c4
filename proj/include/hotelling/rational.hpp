// Copyright 2026 The Hotelling Attraction Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>

#include "hotelling/errors.hpp"

namespace hotelling {

// Exact rational number, always in lowest terms with a positive denominator.
// Backed by GMP so intermediate products never overflow.
class Rational {
 public:
  Rational() = default;
  Rational(long num) : q_(num) {}  // NOLINT: implicit from integers is intended
  Rational(int num) : q_(num) {}   // NOLINT
  Rational(long num, long den) {
    if (den == 0) throw ArithmeticError("rational with zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
  }

  static Rational from_mpq(mpq_class q) {
    Rational r;
    r.q_ = std::move(q);
    r.q_.canonicalize();
    return r;
  }

  // Accepts "p/q", "p", and finite decimals such as "-0.125" or "3.".
  static Rational parse(std::string_view text);

  std::string numerator_str() const { return q_.get_num().get_str(); }
  std::string denominator_str() const { return q_.get_den().get_str(); }
  bool is_integer() const { return q_.get_den() == 1; }
  int sign() const { return sgn(q_); }

  double to_double() const { return q_.get_d(); }

  // "p/q", or "p" when the denominator is 1.
  std::string str() const {
    if (is_integer()) return numerator_str();
    return numerator_str() + "/" + denominator_str();
  }

  // Fixed-point rendering for human-readable tables.
  std::string decimal(int digits = 6) const {
    std::ostringstream os;
    os << std::fixed << std::setprecision(digits) << to_double();
    return os.str();
  }

  // Largest integer <= *this, and smallest integer >= *this.
  Rational floor() const {
    mpz_class z;
    mpz_fdiv_q(z.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
    return from_mpq(mpq_class(z));
  }
  Rational ceil() const {
    mpz_class z;
    mpz_cdiv_q(z.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
    return from_mpq(mpq_class(z));
  }

  // Only valid for integers that fit in a long.
  long to_long() const {
    if (!is_integer() || !q_.get_num().fits_slong_p())
      throw ArithmeticError("rational " + str() + " is not a machine integer");
    return q_.get_num().get_si();
  }

  const mpq_class& mpq() const { return q_; }

  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.sign() == 0) throw ArithmeticError("division by zero");
    q_ /= o.q_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return from_mpq(mpq_class(-a.q_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.q_, b.q_) == 0; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.q_, b.q_);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  mpq_class q_{0};
};

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }
inline const Rational& min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline const Rational& max(const Rational& a, const Rational& b) { return a < b ? b : a; }

// k-th harmonic number H_k = 1 + 1/2 + ... + 1/k (H_0 = 0).
inline Rational harmonic(long k) {
  Rational h;
  for (long j = 1; j <= k; ++j) h += Rational(1, j);
  return h;
}

inline Rational Rational::parse(std::string_view text) {
  auto fail = [&](const char* why) -> ParseError {
    return ParseError("malformed rational \"" + std::string(text) + "\": " + why);
  };
  std::string s(text);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.pop_back();
  std::size_t start = 0;
  while (start < s.size() && (s[start] == ' ' || s[start] == '\t')) ++start;
  s = s.substr(start);
  if (s.empty()) throw fail("empty");

  auto is_int = [](const std::string& t) {
    std::size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
    if (i >= t.size()) return false;
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') return false;
    return true;
  };
  auto to_mpz = [](std::string t) {
    if (!t.empty() && t[0] == '+') t.erase(0, 1);
    return mpz_class(t, 10);
  };

  if (auto slash = s.find('/'); slash != std::string::npos) {
    const std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    if (!is_int(num) || !is_int(den) || den[0] == '-' || den[0] == '+') throw fail("expected p/q");
    mpz_class d = to_mpz(den);
    if (d == 0) throw fail("zero denominator");
    return from_mpq(mpq_class(to_mpz(num), d));
  }
  if (auto dot = s.find('.'); dot != std::string::npos) {
    std::string whole = s.substr(0, dot), frac = s.substr(dot + 1);
    bool negative = false;
    if (!whole.empty() && (whole[0] == '-' || whole[0] == '+')) {
      negative = whole[0] == '-';
      whole.erase(0, 1);
    }
    if (whole.empty() && frac.empty()) throw fail("no digits");
    for (char c : whole + frac)
      if (c < '0' || c > '9') throw fail("unexpected character");
    mpz_class scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    mpz_class digits = (whole + frac).empty() ? mpz_class(0) : mpz_class(whole + frac, 10);
    if (negative) digits = -digits;
    return from_mpq(mpq_class(digits, scale));
  }
  if (!is_int(s)) throw fail("expected integer, p/q, or decimal");
  return from_mpq(mpq_class(to_mpz(s)));
}

}  // namespace hotelling
