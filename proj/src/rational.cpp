#include "evfuse/rational.hpp"

#include <algorithm>
#include <cctype>

#include "evfuse/error.hpp"

namespace evfuse {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (std::isdigit(static_cast<unsigned char>(c)) == 0) return false;
  }
  return true;
}

[[noreturn]] void malformed(std::string_view text) {
  throw Error(ErrorCode::MalformedDocument, "not a rational number: '" + std::string(text) + "'");
}

}  // namespace

Rational::Rational(std::int64_t value) : value_(static_cast<long>(value)) {}

Rational::Rational(std::int64_t numerator, std::int64_t denominator) {
  if (denominator == 0) throw Error(ErrorCode::InvalidArgument, "zero denominator");
  value_ = mpq_class(mpz_class(static_cast<long>(numerator)), mpz_class(static_cast<long>(denominator)));
  value_.canonicalize();
}

Rational Rational::parse_fraction(std::string_view numerator, std::string_view denominator) {
  std::string_view digits = numerator;
  if (!digits.empty() && digits.front() == '-') digits.remove_prefix(1);
  if (!all_digits(digits) || !all_digits(denominator)) {
    malformed(std::string(numerator) + "/" + std::string(denominator));
  }
  mpz_class den(std::string(denominator), 10);
  if (den == 0) malformed(std::string(numerator) + "/" + std::string(denominator));
  Rational r;
  r.value_ = mpq_class(mpz_class(std::string(numerator), 10), den);
  r.value_.canonicalize();
  return r;
}

Rational Rational::parse(std::string_view text) {
  if (text.empty()) malformed(text);
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    return parse_fraction(text.substr(0, slash), text.substr(slash + 1));
  }
  std::string_view body = text;
  const bool negative = body.front() == '-';
  if (negative || body.front() == '+') body.remove_prefix(1);
  const auto dot = body.find('.');
  std::string_view whole = body.substr(0, dot);
  std::string_view frac = dot == std::string_view::npos ? std::string_view{} : body.substr(dot + 1);
  if (whole.empty() && frac.empty()) malformed(text);
  if (!whole.empty() && !all_digits(whole)) malformed(text);
  if (dot != std::string_view::npos && !frac.empty() && !all_digits(frac)) malformed(text);
  if (dot != std::string_view::npos && frac.empty() && whole.empty()) malformed(text);

  std::string digits = std::string(whole) + std::string(frac);
  mpz_class num(digits.empty() ? std::string("0") : digits, 10);
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
  Rational r;
  r.value_ = mpq_class(negative ? mpz_class(-num) : num, den);
  r.value_.canonicalize();
  return r;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw Error(ErrorCode::InvalidArgument, "division by zero");
  value_ /= o.value_;
  return *this;
}

std::string Rational::numerator_string() const { return value_.get_num().get_str(); }
std::string Rational::denominator_string() const { return value_.get_den().get_str(); }

std::string Rational::to_string() const {
  if (value_.get_den() == 1) return numerator_string();
  return numerator_string() + "/" + denominator_string();
}

std::string Rational::to_decimal(unsigned places) const {
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, places);
  mpz_class num = value_.get_num() * scale;
  if (num < 0) num = -num;
  const mpz_class& den = value_.get_den();
  // floor(|v| * 10^p + 1/2) == floor((2 * num + den) / (2 * den))
  mpz_class scaled = (2 * num + den) / (2 * den);
  std::string digits = scaled.get_str();
  if (digits.size() <= places) digits.insert(0, places + 1 - digits.size(), '0');
  std::string out;
  if (sign() < 0 && scaled != 0) out.push_back('-');
  out += digits.substr(0, digits.size() - places);
  if (places > 0) {
    out.push_back('.');
    out += digits.substr(digits.size() - places);
  }
  return out;
}

std::string Rational::to_canonical() const {
  mpz_class den = value_.get_den();
  unsigned twos = 0;
  unsigned fives = 0;
  while (mpz_divisible_ui_p(den.get_mpz_t(), 2) != 0) { den /= 2; ++twos; }
  while (mpz_divisible_ui_p(den.get_mpz_t(), 5) != 0) { den /= 5; ++fives; }
  if (den != 1) return to_string();
  std::string s = to_decimal(std::max(twos, fives));
  if (s.find('.') != std::string::npos) {
    while (s.back() == '0') s.pop_back();
    if (s.back() == '.') s.pop_back();
  }
  return s;
}

}  // namespace evfuse
