// Copyright 2026 The Authors.
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

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace seqauction {

/// Exact arbitrary-precision rational. All money-like quantities (values,
/// prices, bids, utilities) use this type; equality tests are exact, which
/// the indifference checks in the equilibrium machinery rely on.
///
/// Canonical form is maintained by the backend: reduced, denominator > 0.
/// Serialized form is always "num/den" (for example "5/1", "-3/2").
class Rational {
 public:
  using Backend = boost::multiprecision::cpp_rational;
  using Int = boost::multiprecision::cpp_int;

  Rational() : v_(0) {}
  Rational(long long n) : v_(n) {}  // NOLINT: implicit on purpose
  Rational(long long num, long long den) {
    if (den == 0) throw std::invalid_argument("Rational: zero denominator");
    Int n(num), d(den);
    if (d < 0) { n = -n; d = -d; }
    v_ = Backend(n, d);
  }
  explicit Rational(Backend v) : v_(std::move(v)) {}

  /// Parses "num/den" or a bare integer "num".
  static Rational parse(const std::string& text);

  /// Canonical "num/den" form.
  std::string str() const;

  const Backend& raw() const { return v_; }

  int sign() const { return v_.sign(); }
  bool is_zero() const { return v_.is_zero(); }
  bool is_integer() const {
    return boost::multiprecision::denominator(v_) == 1;
  }

  /// floor(*this / step) for step > 0, as a machine integer.
  long long floor_div(const Rational& step) const;

  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw std::invalid_argument("Rational: divide by zero");
    v_ /= o.v_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(Backend(-a.v_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

 private:
  Backend v_;
};

inline Rational abs(const Rational& a) { return a.sign() < 0 ? -a : a; }

inline Rational Rational::parse(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("Rational::parse: empty string");
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) {
      return Rational(Backend(Int(text)));
    }
    Int num(text.substr(0, slash));
    Int den(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator");
    if (den < 0) { num = -num; den = -den; }
    return Rational(Backend(num, den));
  } catch (const std::exception&) {
    throw std::invalid_argument("Rational::parse: bad rational '" + text + "'");
  }
}

inline std::string Rational::str() const {
  return boost::multiprecision::numerator(v_).str() + "/" +
         boost::multiprecision::denominator(v_).str();
}

inline long long Rational::floor_div(const Rational& step) const {
  if (step.sign() <= 0) throw std::invalid_argument("floor_div: step must be positive");
  const Int num = boost::multiprecision::numerator(v_) *
                  boost::multiprecision::denominator(step.v_);
  const Int den = boost::multiprecision::denominator(v_) *
                  boost::multiprecision::numerator(step.v_);
  Int q = num / den;
  if (num % den != 0 && num.sign() < 0) --q;
  if (q > Int(INT64_MAX) || q < Int(INT64_MIN)) {
    throw std::overflow_error("floor_div: quotient out of range");
  }
  return q.convert_to<long long>();
}

}  // namespace seqauction
