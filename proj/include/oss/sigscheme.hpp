#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "oss/error.hpp"
#include "oss/keys.hpp"
#include "oss/modmath.hpp"
#include "oss/rng.hpp"

namespace oss {

struct SignaturePair {
  Residue s1;
  Residue s2;

  friend bool operator==(const SignaturePair&, const SignaturePair&) = default;
};

/// How the per-byte randomizer r is chosen. Fixed mode reuses one public r for
/// every byte, so equal bytes produce equal pairs; it exists to reproduce
/// published tables, not for use.
struct RMode {
  std::optional<BigInt> fixed_r;

  static RMode fresh() { return {}; }
  static RMode fixed(BigInt r) { return RMode{std::move(r)}; }
  bool is_fixed() const noexcept { return fixed_r.has_value(); }

  friend bool operator==(const RMode&, const RMode&) = default;
};

/// A byte message with one signature pair per byte. Bytes are opaque.
struct SignedMessage {
  std::string message;
  std::vector<SignaturePair> pairs;
  RMode r_mode;
};

/// s1 = (M/r + r)/2, s2 = k(M/r - r)/2, all mod n. Throws not_coprime if gcd(r, n) != 1.
SignaturePair sign_residue(const Residue& message, const PrivateKey& priv, const BigInt& r);

/// Uniform r in [2, n-1] coprime to n.
BigInt pick_r(const BigInt& n, SeededRng& rng);

/// s1^2 + h*s2^2 = M (mod n).
bool verify_residue(const Residue& message, const SignaturePair& sig, const PublicKey& pub);

SignedMessage sign_bytes(const std::string& message, const PrivateKey& priv, SeededRng& rng,
                         const RMode& r_mode = RMode::fresh());

struct Verification {
  std::vector<bool> per_byte;
  std::optional<Errc> reason;  // length_mismatch when pairs and bytes disagree

  bool ok() const noexcept;
  explicit operator bool() const noexcept { return ok(); }
};

Verification verify_bytes(const SignedMessage& signed_message, const PublicKey& pub);

/// The pair signed over `message` instead of the message stored in `signed_message`.
Verification verify_bytes(const std::string& message, const std::vector<SignaturePair>& pairs,
                          const PublicKey& pub);

/// Byte value as a residue mod n.
Residue byte_residue(unsigned char byte, const BigInt& n);

}  // namespace oss
