#pragma once

// Test-only helpers and independent oracles. Nothing here calls into the
// library's arithmetic; these are the slow, obvious routes the fast ones are
// checked against.

#include <cstdint>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace oss::test {

using Int = boost::multiprecision::cpp_int;

/// Uniform value with up to `bits` bits, from a plain std engine.
inline Int random_int(std::mt19937_64& gen, unsigned bits) {
  Int out = 0;
  for (unsigned filled = 0; filled < bits; filled += 64) {
    out <<= 64;
    out |= gen();
  }
  return out >> ((bits + 63) / 64 * 64 - bits);
}

/// Stein's binary gcd, an independent route to the Euclidean one.
inline Int binary_gcd(Int a, Int b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  if (a == 0) return b;
  if (b == 0) return a;
  unsigned shift = 0;
  while (((a | b) & 1) == 0) {
    a >>= 1;
    b >>= 1;
    ++shift;
  }
  while ((a & 1) == 0) a >>= 1;
  while (b != 0) {
    while ((b & 1) == 0) b >>= 1;
    if (a > b) std::swap(a, b);
    b -= a;
  }
  return a << shift;
}

/// Inverse by enumeration; -1 when none exists. Small n only.
inline long brute_inverse(long a, long n) {
  const long base = ((a % n) + n) % n;
  for (long x = 0; x < n; ++x) {
    if ((base * x) % n == 1 % n) return x;
  }
  return -1;
}

inline bool trial_division_prime(std::uint64_t v) {
  if (v < 2) return false;
  for (std::uint64_t d = 2; d * d <= v; ++d) {
    if (v % d == 0) return false;
  }
  return true;
}

inline std::vector<unsigned> sieve_primes(unsigned below) {
  std::vector<unsigned> out;
  for (unsigned v = 2; v < below; ++v) {
    if (trial_division_prime(v)) out.push_back(v);
  }
  return out;
}

/// Prime factors with multiplicity by trial division.
inline std::vector<std::uint64_t> factor(std::uint64_t v) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= v; ++d) {
    while (v % d == 0) {
      out.push_back(d);
      v /= d;
    }
  }
  if (v > 1) out.push_back(v);
  return out;
}

inline std::string printable_ascii(std::mt19937_64& gen, std::size_t length) {
  std::string out;
  for (std::size_t i = 0; i < length; ++i) out += static_cast<char>(0x21 + gen() % 94);  // '!'..'~'
  return out;
}

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace oss::test

namespace oss::test {

inline bool bit_length_is(const Int& v, unsigned bits) {
  return v > 0 && boost::multiprecision::msb(v) + 1 == bits;
}

}  // namespace oss::test
