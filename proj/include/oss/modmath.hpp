#pragma once

//! Integer and modular arithmetic shared by every other module.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "oss/rng.hpp"

namespace oss {

using BigInt = boost::multiprecision::cpp_int;

/// A canonical representative in [0, modulus), modulus >= 2.
class Residue {
 public:
  /// 0 mod 2; placeholder for default-constructed aggregates.
  Residue() : value_(0), modulus_(2) {}

  /// Throws invalid_parameter unless 0 <= value < modulus and modulus >= 2.
  Residue(BigInt value, BigInt modulus);

  const BigInt& value() const noexcept { return value_; }
  const BigInt& modulus() const noexcept { return modulus_; }
  bool is_zero() const noexcept { return value_.is_zero(); }

  /// Multiplicative inverse; throws not_coprime.
  Residue inverse() const;

  friend Residue operator+(const Residue& a, const Residue& b);
  friend Residue operator-(const Residue& a, const Residue& b);
  friend Residue operator*(const Residue& a, const Residue& b);
  friend Residue operator-(const Residue& a);
  friend bool operator==(const Residue& a, const Residue& b) = default;

 private:
  BigInt value_;
  BigInt modulus_;
};

/// Non-negative gcd; signs are ignored and gcd(0, 0) = 0.
BigInt gcd(const BigInt& a, const BigInt& b);

struct ExtendedGcd {
  BigInt gcd;
  BigInt x;  // a*x + b*y = gcd
  BigInt y;
};

ExtendedGcd extended_gcd(const BigInt& a, const BigInt& b);

/// a mod n in [0, n), also for negative a. Requires n >= 2.
Residue canonical(const BigInt& a, const BigInt& n);

/// x with a*x = 1 (mod n). Throws not_coprime when gcd(a, n) != 1.
Residue mod_inverse(const BigInt& a, const BigInt& n);

/// Trial division by the primes below 1000, then `rounds` Miller-Rabin
/// rounds with bases drawn from `rng`.
bool is_probable_prime(const BigInt& candidate, SeededRng& rng, int rounds = 40);

/// An odd probable prime with exactly `bits` bits (bits >= 2).
BigInt random_probable_prime(unsigned bits, SeededRng& rng);

std::size_t bit_length(const BigInt& value);

/// Decimal text is the only integer serialization.
std::string to_decimal(const BigInt& value);

/// Strict decimal parse: optional '-', digits, no leading zeros, no "-0".
/// Throws malformed_integer.
BigInt parse_decimal(std::string_view text);

/// The primes below 1000, ascending.
const std::vector<unsigned>& small_primes();

}  // namespace oss
