#pragma once

#include <cstdint>
#include <random>

#include <boost/multiprecision/cpp_int.hpp>

namespace oss {

/// Explicitly seeded generator threaded through every randomized operation.
///
/// Only the raw 64-bit output of mt19937_64 is consumed (its sequence is fixed
/// by the standard); ranges are produced by rejection sampling here rather
/// than by std distributions, whose algorithms vary between standard
/// libraries. A given seed therefore yields the same keys everywhere.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  static SeededRng from_entropy();

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t next_u64() { return engine_(); }

  /// Uniform integer with at most `bits` bits.
  boost::multiprecision::cpp_int random_bits(unsigned bits);

  /// Uniform integer in [0, bound); bound must be positive.
  boost::multiprecision::cpp_int uniform_below(const boost::multiprecision::cpp_int& bound);

  /// Uniform integer in [lo, hi].
  boost::multiprecision::cpp_int uniform_between(const boost::multiprecision::cpp_int& lo,
                                                 const boost::multiprecision::cpp_int& hi);

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace oss
