#include "oss/rng.hpp"

#include "oss/error.hpp"

namespace oss {

using boost::multiprecision::cpp_int;

SeededRng SeededRng::from_entropy() {
  std::random_device device;
  const std::uint64_t seed = (std::uint64_t{device()} << 32) ^ device();
  return SeededRng(seed);
}

cpp_int SeededRng::random_bits(unsigned bits) {
  cpp_int out = 0;
  unsigned filled = 0;
  while (filled < bits) {
    out <<= 64;
    out |= engine_();
    filled += 64;
  }
  if (filled > bits) {
    out >>= (filled - bits);
  }
  return out;
}

cpp_int SeededRng::uniform_below(const cpp_int& bound) {
  if (bound <= 0) {
    throw Error(Errc::invalid_parameter, "uniform_below needs a positive bound");
  }
  if (bound == 1) {
    return 0;
  }
  const cpp_int top = bound - 1;
  const unsigned bits = static_cast<unsigned>(boost::multiprecision::msb(top)) + 1;
  for (;;) {
    cpp_int candidate = random_bits(bits);
    if (candidate < bound) {
      return candidate;
    }
  }
}

cpp_int SeededRng::uniform_between(const cpp_int& lo, const cpp_int& hi) {
  if (hi < lo) {
    throw Error(Errc::invalid_parameter, "empty range");
  }
  return lo + uniform_below(hi - lo + 1);
}

}  // namespace oss
