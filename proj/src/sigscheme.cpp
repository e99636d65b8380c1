#include "oss/sigscheme.hpp"

#include <algorithm>

namespace oss {

Residue byte_residue(unsigned char byte, const BigInt& n) { return canonical(BigInt(byte), n); }

SignaturePair sign_residue(const Residue& message, const PrivateKey& priv, const BigInt& r) {
  const BigInt& n = priv.n;
  const Residue r_res = canonical(r, n);
  if (gcd(r_res.value(), n) != 1) {
    throw Error(Errc::not_coprime, "r = " + to_decimal(r) + " shares a factor with n");
  }
  const Residue half = mod_inverse(2, n);
  const Residue quotient = canonical(message.value(), n) * r_res.inverse();
  return SignaturePair{half * (quotient + r_res), priv.k * half * (quotient - r_res)};
}

BigInt pick_r(const BigInt& n, SeededRng& rng) {
  if (n < 15) {
    throw Error(Errc::invalid_parameter, "modulus below 15");
  }
  for (;;) {
    BigInt r = rng.uniform_between(2, n - 1);
    if (gcd(r, n) == 1) {
      return r;
    }
  }
}

bool verify_residue(const Residue& message, const SignaturePair& sig, const PublicKey& pub) {
  const BigInt& n = pub.n;
  if (message.modulus() != n || sig.s1.modulus() != n || sig.s2.modulus() != n) {
    return false;
  }
  return sig.s1 * sig.s1 + pub.h * sig.s2 * sig.s2 == message;
}

SignedMessage sign_bytes(const std::string& message, const PrivateKey& priv, SeededRng& rng, const RMode& r_mode) {
  if (r_mode.is_fixed() && gcd(*r_mode.fixed_r, priv.n) != 1) {
    throw Error(Errc::not_coprime, "fixed r = " + to_decimal(*r_mode.fixed_r) + " shares a factor with n");
  }
  SignedMessage out{message, {}, r_mode};
  out.pairs.reserve(message.size());
  for (const char c : message) {
    const BigInt r = r_mode.is_fixed() ? *r_mode.fixed_r : pick_r(priv.n, rng);
    out.pairs.push_back(sign_residue(byte_residue(static_cast<unsigned char>(c), priv.n), priv, r));
  }
  return out;
}

bool Verification::ok() const noexcept {
  return !reason && std::all_of(per_byte.begin(), per_byte.end(), [](bool v) { return v; });
}

Verification verify_bytes(const std::string& message, const std::vector<SignaturePair>& pairs,
                          const PublicKey& pub) {
  Verification result;
  const std::size_t common = std::min(message.size(), pairs.size());
  result.per_byte.reserve(common);
  for (std::size_t i = 0; i < common; ++i) {
    result.per_byte.push_back(
        verify_residue(byte_residue(static_cast<unsigned char>(message[i]), pub.n), pairs[i], pub));
  }
  if (message.size() != pairs.size()) {
    result.reason = Errc::length_mismatch;
  }
  return result;
}

Verification verify_bytes(const SignedMessage& signed_message, const PublicKey& pub) {
  return verify_bytes(signed_message.message, signed_message.pairs, pub);
}

}  // namespace oss
