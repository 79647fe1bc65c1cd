#pragma once

// Arbitrary-precision rational number in lowest terms.
//
// Thin value wrapper over GMP's mpq_class. Every constructor and arithmetic
// operator leaves the value canonical (gcd(|num|, den) = 1, den > 0).

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cornerscat::exact {

class BigRational {
 public:
  BigRational() = default;
  BigRational(long value) : value_(value) {}  // NOLINT(google-explicit-constructor)
  BigRational(int value) : value_(value) {}   // NOLINT(google-explicit-constructor)
  BigRational(long num, long den) {
    if (den == 0) throw std::domain_error("BigRational: zero denominator");
    value_ = mpq_class(mpz_class(num), mpz_class(den));
    value_.canonicalize();
  }
  BigRational(const mpz_class& num, const mpz_class& den) {
    if (den == 0) throw std::domain_error("BigRational: zero denominator");
    value_ = mpq_class(num, den);
    value_.canonicalize();
  }
  explicit BigRational(mpq_class v) : value_(std::move(v)) { value_.canonicalize(); }

  // Parses "p", "p/q" or "-p/q".
  static BigRational parse(std::string_view text) {
    std::string s(text);
    auto slash = s.find('/');
    try {
      if (slash == std::string::npos) return BigRational(mpz_class(s), mpz_class(1));
      return BigRational(mpz_class(s.substr(0, slash)), mpz_class(s.substr(slash + 1)));
    } catch (const std::invalid_argument&) {
      throw std::invalid_argument("BigRational: cannot parse '" + s + "'");
    }
  }

  [[nodiscard]] mpz_class numerator() const { return value_.get_num(); }
  [[nodiscard]] mpz_class denominator() const { return value_.get_den(); }
  [[nodiscard]] const mpq_class& raw() const { return value_; }
  [[nodiscard]] mpq_class& raw() { return value_; }

  [[nodiscard]] bool is_zero() const { return sgn(value_) == 0; }
  [[nodiscard]] int sign() const { return sgn(value_); }
  [[nodiscard]] double to_double() const { return value_.get_d(); }
  [[nodiscard]] std::string to_string() const { return value_.get_str(); }

  BigRational& operator+=(const BigRational& o) { value_ += o.value_; return *this; }
  BigRational& operator-=(const BigRational& o) { value_ -= o.value_; return *this; }
  BigRational& operator*=(const BigRational& o) { value_ *= o.value_; return *this; }
  BigRational& operator/=(const BigRational& o) {
    if (o.is_zero()) throw std::domain_error("BigRational: division by zero");
    value_ /= o.value_;
    return *this;
  }

  friend BigRational operator+(BigRational a, const BigRational& b) { return a += b; }
  friend BigRational operator-(BigRational a, const BigRational& b) { return a -= b; }
  friend BigRational operator*(BigRational a, const BigRational& b) { return a *= b; }
  friend BigRational operator/(BigRational a, const BigRational& b) { return a /= b; }
  friend BigRational operator-(const BigRational& a) { return BigRational(mpq_class(-a.value_)); }

  friend bool operator==(const BigRational& a, const BigRational& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const BigRational& a, const BigRational& b) {
    int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const BigRational& r) { return os << r.to_string(); }

 private:
  mpq_class value_{0};
};

}  // namespace cornerscat::exact
