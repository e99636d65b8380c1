#pragma once

#include <compare>
#include <string>
#include <string_view>

#include "oss/modmath.hpp"

namespace oss {

/// Exact fraction, always reduced with a positive denominator.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(BigInt value) : num_(std::move(value)), den_(1) {}  // NOLINT: implicit by design of arithmetic
  Rational(int value) : num_(value), den_(1) {}               // NOLINT
  /// Throws division_by_zero when den = 0.
  Rational(BigInt num, BigInt den);

  const BigInt& num() const noexcept { return num_; }
  const BigInt& den() const noexcept { return den_; }
  bool is_zero() const noexcept { return num_.is_zero(); }
  bool is_integer() const noexcept { return den_ == 1; }

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  /// Throws division_by_zero.
  friend Rational operator/(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a);

  friend bool operator==(const Rational& a, const Rational& b) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  /// "371/34", or "82" for integers.
  std::string str() const;

  double to_double() const;

 private:
  BigInt num_;
  BigInt den_;
};

Rational abs(const Rational& value);

/// Decimal rounded to `digits` places, half away from zero; "-0.00" never appears.
std::string render_decimal(const Rational& value, unsigned digits);

/// Parses "-4006.0588", "82", "0.5" exactly. Throws malformed_integer.
Rational parse_decimal_rational(std::string_view text);

/// Number of digits after the decimal point in a decimal token.
unsigned decimal_places(std::string_view text);

/// num * den^-1 mod n, the modular shadow of a fraction. Throws not_coprime.
Residue to_residue(const Rational& value, const BigInt& n);

}  // namespace oss
