#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "oss/modmath.hpp"
#include "oss/rng.hpp"

namespace oss {

struct PublicKey {
  BigInt n;
  Residue h;

  friend bool operator==(const PublicKey&, const PublicKey&) = default;
};

struct PrivateKey {
  BigInt n;
  Residue k;
  Residue h;

  PublicKey public_key() const { return PublicKey{n, h}; }

  friend bool operator==(const PrivateKey&, const PrivateKey&) = default;
};

struct KeyPair {
  PublicKey pub;
  PrivateKey priv;

  friend bool operator==(const KeyPair&, const KeyPair&) = default;
};

/// h = -(k^-1)^2 mod n, i.e. h*k^2 = -1 (mod n).
Residue derive_h(const BigInt& k, const BigInt& n);

/// n = p*q for two distinct random primes of ceil(bits/2) bits and a random
/// k of exactly k_bits bits coprime to n. Pure function of (bits, k_bits, rng state).
KeyPair keygen(unsigned bits, unsigned k_bits, SeededRng& rng);

/// Validates n odd and gcd(k, n) = 1, then derives h.
KeyPair import_keys(const BigInt& n, const BigInt& k);

enum class KeyDefect {
  modulus_too_small,
  even_modulus,
  modulus_mismatch,
  h_mismatch,
  k_not_coprime,
  h_not_inverse_square,
};

std::string_view to_string(KeyDefect defect) noexcept;

struct KeyCheck {
  std::vector<KeyDefect> defects;

  bool ok() const noexcept { return defects.empty(); }
  explicit operator bool() const noexcept { return ok(); }
};

KeyCheck validate_keypair(const KeyPair& kp);

// Key files: `oss-key v1 public|private`, then `n`, `h` and (private) `k`
// lines, LF terminated.
std::string write_public_key(const PublicKey& key);
std::string write_private_key(const PrivateKey& key);
PublicKey read_public_key(std::string_view text);
PrivateKey read_private_key(std::string_view text);

/// Reads either kind; a private file yields its public half.
PublicKey read_any_public_key(std::string_view text);

}  // namespace oss
