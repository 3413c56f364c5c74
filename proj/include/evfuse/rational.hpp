#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace evfuse {

/// Exact rational number, always kept in lowest terms with a positive
/// denominator. Backed by GMP so products over many evidence items never
/// overflow.
class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t value);  // NOLINT(google-explicit-constructor)
  Rational(std::int64_t numerator, std::int64_t denominator);

  /// Parses "0.45", "1", ".5" or "9/20". Throws Error(MalformedDocument) on
  /// anything else.
  static Rational parse(std::string_view text);
  static Rational parse_fraction(std::string_view numerator, std::string_view denominator);

  std::string numerator_string() const;
  std::string denominator_string() const;

  /// "n/d", or "n" when the denominator is one.
  std::string to_string() const;

  /// Half-up (away from zero) rounding to a fixed number of decimal places.
  std::string to_decimal(unsigned places) const;

  /// Shortest exact decimal when the denominator is of the form 2^a 5^b,
  /// otherwise "n/d". Round-trips through parse().
  std::string to_canonical() const;

  double to_double() const { return value_.get_d(); }

  int sign() const { return sgn(value_); }
  bool is_zero() const { return sign() == 0; }

  Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
  Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
  Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { Rational r; r.value_ = -a.value_; return r; }

  friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.value_, b.value_) == 0; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  static Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

 private:
  mpq_class value_{0};
};

}  // namespace evfuse
