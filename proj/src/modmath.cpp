#include "oss/modmath.hpp"

#include <utility>

#include "oss/error.hpp"

namespace oss {

namespace bmp = boost::multiprecision;

Residue::Residue(BigInt value, BigInt modulus) : value_(std::move(value)), modulus_(std::move(modulus)) {
  if (modulus_ < 2) {
    throw Error(Errc::invalid_parameter, "modulus must be at least 2");
  }
  if (value_ < 0 || value_ >= modulus_) {
    throw Error(Errc::invalid_parameter, "residue " + to_decimal(value_) + " outside [0, " + to_decimal(modulus_) + ")");
  }
}

namespace {

void require_same_modulus(const Residue& a, const Residue& b) {
  if (a.modulus() != b.modulus()) {
    throw Error(Errc::invalid_parameter, "residues with different moduli");
  }
}

}  // namespace

Residue Residue::inverse() const { return mod_inverse(value_, modulus_); }

Residue operator+(const Residue& a, const Residue& b) {
  require_same_modulus(a, b);
  BigInt sum = a.value_ + b.value_;
  if (sum >= a.modulus_) {
    sum -= a.modulus_;
  }
  return Residue(std::move(sum), a.modulus_);
}

Residue operator-(const Residue& a, const Residue& b) {
  require_same_modulus(a, b);
  BigInt diff = a.value_ - b.value_;
  if (diff < 0) {
    diff += a.modulus_;
  }
  return Residue(std::move(diff), a.modulus_);
}

Residue operator*(const Residue& a, const Residue& b) {
  require_same_modulus(a, b);
  return Residue((a.value_ * b.value_) % a.modulus_, a.modulus_);
}

Residue operator-(const Residue& a) {
  if (a.value_.is_zero()) {
    return a;
  }
  return Residue(a.modulus_ - a.value_, a.modulus_);
}

BigInt gcd(const BigInt& a, const BigInt& b) {
  BigInt x = bmp::abs(a);
  BigInt y = bmp::abs(b);
  while (!y.is_zero()) {
    BigInt t = x % y;
    x = std::move(y);
    y = std::move(t);
  }
  return x;
}

ExtendedGcd extended_gcd(const BigInt& a, const BigInt& b) {
  BigInt old_r = a, r = b;
  BigInt old_s = 1, s = 0;
  BigInt old_t = 0, t = 1;
  while (!r.is_zero()) {
    const BigInt q = old_r / r;
    old_r = std::exchange(r, BigInt(old_r - q * r));
    old_s = std::exchange(s, BigInt(old_s - q * s));
    old_t = std::exchange(t, BigInt(old_t - q * t));
  }
  if (old_r < 0) {
    return {-old_r, -old_s, -old_t};
  }
  return {old_r, old_s, old_t};
}

Residue canonical(const BigInt& a, const BigInt& n) {
  if (n < 2) {
    throw Error(Errc::invalid_parameter, "modulus must be at least 2");
  }
  BigInt r = a % n;  // truncating: sign follows a
  if (r < 0) {
    r += n;
  }
  return Residue(std::move(r), n);
}

Residue mod_inverse(const BigInt& a, const BigInt& n) {
  const Residue base = canonical(a, n);
  const ExtendedGcd eg = extended_gcd(base.value(), n);
  if (eg.gcd != 1) {
    throw Error(Errc::not_coprime, "gcd(" + to_decimal(a) + ", " + to_decimal(n) + ") = " + to_decimal(eg.gcd));
  }
  return canonical(eg.x, n);
}

const std::vector<unsigned>& small_primes() {
  static const std::vector<unsigned> primes = [] {
    std::vector<unsigned> out;
    std::vector<bool> composite(1000, false);
    for (unsigned i = 2; i < 1000; ++i) {
      if (composite[i]) continue;
      out.push_back(i);
      for (unsigned j = i * i; j < 1000; j += i) composite[j] = true;
    }
    return out;
  }();
  return primes;
}

bool is_probable_prime(const BigInt& candidate, SeededRng& rng, int rounds) {
  if (candidate < 2) {
    return false;
  }
  for (unsigned p : small_primes()) {
    if (candidate == p) return true;
    if (candidate % p == 0) return false;
  }
  // candidate > 997 from here on, so [2, candidate - 2] is never empty.
  const BigInt minus_one = candidate - 1;
  BigInt d = minus_one;
  unsigned s = 0;
  while (!bmp::bit_test(d, 0)) {
    d >>= 1;
    ++s;
  }
  for (int round = 0; round < rounds; ++round) {
    const BigInt base = rng.uniform_between(2, candidate - 2);
    BigInt x = bmp::powm(base, d, candidate);
    if (x == 1 || x == minus_one) continue;
    bool witness = true;
    for (unsigned i = 1; i < s; ++i) {
      x = (x * x) % candidate;
      if (x == minus_one) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

BigInt random_probable_prime(unsigned bits, SeededRng& rng) {
  if (bits < 2) {
    throw Error(Errc::invalid_parameter, "prime size must be at least 2 bits");
  }
  for (;;) {
    BigInt candidate = rng.random_bits(bits);
    bmp::bit_set(candidate, bits - 1);
    bmp::bit_set(candidate, 0);
    if (is_probable_prime(candidate, rng)) {
      return candidate;
    }
  }
}

std::size_t bit_length(const BigInt& value) {
  if (value.is_zero()) return 0;
  return bmp::msb(bmp::abs(value)) + 1;
}

std::string to_decimal(const BigInt& value) { return value.str(); }

BigInt parse_decimal(std::string_view text) {
  const std::string_view digits = (!text.empty() && text.front() == '-') ? text.substr(1) : text;
  const bool ok = !digits.empty() && digits.find_first_not_of("0123456789") == std::string_view::npos &&
                  !(digits.size() > 1 && digits.front() == '0') && !(digits == "0" && digits.size() != text.size());
  if (!ok) {
    throw Error(Errc::malformed_integer, "'" + std::string(text) + "'");
  }
  BigInt out{std::string(digits)};
  return digits.size() != text.size() ? BigInt(-out) : out;
}

}  // namespace oss
