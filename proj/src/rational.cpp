#include "oss/rational.hpp"

#include <algorithm>

#include "oss/error.hpp"

namespace oss {

namespace bmp = boost::multiprecision;

Rational::Rational(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) {
    throw Error(Errc::division_by_zero, "zero denominator");
  }
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  const BigInt g = gcd(num_, den_);
  if (g > 1) {
    num_ /= g;
    den_ /= g;
  }
}

Rational operator+(const Rational& a, const Rational& b) {
  return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) {
  return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

Rational operator*(const Rational& a, const Rational& b) { return Rational(a.num_ * b.num_, a.den_ * b.den_); }

Rational operator/(const Rational& a, const Rational& b) {
  if (b.is_zero()) {
    throw Error(Errc::division_by_zero, "division by " + b.str());
  }
  return Rational(a.num_ * b.den_, a.den_ * b.num_);
}

Rational operator-(const Rational& a) { return Rational(-a.num_, a.den_); }

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  const BigInt lhs = a.num_ * b.den_;
  const BigInt rhs = b.num_ * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string Rational::str() const {
  if (den_ == 1) return to_decimal(num_);
  return to_decimal(num_) + "/" + to_decimal(den_);
}

double Rational::to_double() const {
  // Scale so both halves fit a double comfortably before dividing.
  const std::size_t shift = std::max(bit_length(num_), bit_length(den_));
  if (shift <= 900) {
    return num_.convert_to<double>() / den_.convert_to<double>();
  }
  const unsigned drop = static_cast<unsigned>(shift - 900);
  return BigInt(num_ >> drop).convert_to<double>() / BigInt(den_ >> drop).convert_to<double>();
}

Rational abs(const Rational& value) { return value.num() < 0 ? -value : value; }

std::string render_decimal(const Rational& value, unsigned digits) {
  BigInt scale = bmp::pow(BigInt(10), digits);
  const BigInt magnitude = bmp::abs(value.num()) * scale;
  BigInt quotient = magnitude / value.den();
  const BigInt remainder = magnitude % value.den();
  if (remainder * 2 >= value.den()) {
    ++quotient;
  }
  std::string digits_text = to_decimal(quotient);
  if (digits_text.size() <= digits) {
    digits_text.insert(0, digits + 1 - digits_text.size(), '0');
  }
  std::string out;
  if (value.num() < 0 && !quotient.is_zero()) out += '-';
  out += digits_text.substr(0, digits_text.size() - digits);
  if (digits > 0) {
    out += '.';
    out += digits_text.substr(digits_text.size() - digits);
  }
  return out;
}

unsigned decimal_places(std::string_view text) {
  const std::size_t dot = text.find('.');
  return dot == std::string_view::npos ? 0 : static_cast<unsigned>(text.size() - dot - 1);
}

Rational parse_decimal_rational(std::string_view text) {
  const bool negative = !text.empty() && text.front() == '-';
  const std::string_view body = negative ? text.substr(1) : text;
  const std::size_t dot = body.find('.');
  const std::string_view whole = body.substr(0, dot);
  const std::string_view frac = dot == std::string_view::npos ? std::string_view{} : body.substr(dot + 1);
  const auto all_digits = [](std::string_view s) { return s.find_first_not_of("0123456789") == std::string_view::npos; };
  if (whole.empty() || !all_digits(whole) || !all_digits(frac) || (dot != std::string_view::npos && frac.empty())) {
    throw Error(Errc::malformed_integer, "'" + std::string(text) + "' is not a decimal");
  }
  // cpp_int reads a leading 0 as an octal prefix.
  std::string digits = std::string(whole) + std::string(frac);
  digits.erase(0, std::min(digits.find_first_not_of('0'), digits.size() - 1));
  BigInt num{digits};
  if (negative) num = -num;
  return Rational(std::move(num), bmp::pow(BigInt(10), static_cast<unsigned>(frac.size())));
}

Residue to_residue(const Rational& value, const BigInt& n) {
  return canonical(value.num(), n) * mod_inverse(value.den(), n);
}

}  // namespace oss
