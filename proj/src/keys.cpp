#include "oss/keys.hpp"

#include <array>

#include "oss/error.hpp"
#include "text.hpp"

namespace oss {

namespace {

constexpr unsigned kMinModulus = 15;

void require_odd_modulus(const BigInt& n) {
  if (n < kMinModulus) {
    throw Error(Errc::invalid_parameter, "modulus " + to_decimal(n) + " is below 15");
  }
  if (!boost::multiprecision::bit_test(n, 0)) {
    throw Error(Errc::even_modulus, "n = " + to_decimal(n));
  }
}

}  // namespace

Residue derive_h(const BigInt& k, const BigInt& n) {
  if (n >= 2 && !boost::multiprecision::bit_test(n, 0)) {
    throw Error(Errc::even_modulus, "n = " + to_decimal(n));
  }
  const Residue k_inv = mod_inverse(k, n);
  return -(k_inv * k_inv);
}

KeyPair keygen(unsigned bits, unsigned k_bits, SeededRng& rng) {
  if (bits < 8) {
    throw Error(Errc::invalid_parameter, "modulus size must be at least 8 bits");
  }
  if (k_bits < 2 || k_bits + 2 > bits) {
    throw Error(Errc::invalid_parameter, "k size must lie in [2, bits - 2]");
  }
  const unsigned prime_bits = (bits + 1) / 2;
  const BigInt p = random_probable_prime(prime_bits, rng);
  BigInt q = random_probable_prime(prime_bits, rng);
  while (q == p) {
    q = random_probable_prime(prime_bits, rng);
  }
  const BigInt n = p * q;

  BigInt k;
  do {
    k = rng.random_bits(k_bits);
    boost::multiprecision::bit_set(k, k_bits - 1);
  } while (gcd(k, n) != 1);

  return import_keys(n, k);
}

KeyPair import_keys(const BigInt& n, const BigInt& k) {
  require_odd_modulus(n);
  const Residue k_res = canonical(k, n);
  if (gcd(k_res.value(), n) != 1) {
    throw Error(Errc::not_coprime, "k shares a factor with n");
  }
  Residue h = derive_h(k_res.value(), n);
  return KeyPair{PublicKey{n, h}, PrivateKey{n, k_res, h}};
}

std::string_view to_string(KeyDefect defect) noexcept {
  switch (defect) {
    case KeyDefect::modulus_too_small: return "modulus_too_small";
    case KeyDefect::even_modulus: return "even_modulus";
    case KeyDefect::modulus_mismatch: return "modulus_mismatch";
    case KeyDefect::h_mismatch: return "h_mismatch";
    case KeyDefect::k_not_coprime: return "k_not_coprime";
    case KeyDefect::h_not_inverse_square: return "h_not_inverse_square";
  }
  return "unknown";
}

KeyCheck validate_keypair(const KeyPair& kp) {
  KeyCheck check;
  const BigInt& n = kp.priv.n;
  if (n < kMinModulus) check.defects.push_back(KeyDefect::modulus_too_small);
  if (!boost::multiprecision::bit_test(n, 0)) check.defects.push_back(KeyDefect::even_modulus);
  if (kp.pub.n != n || kp.pub.h.modulus() != n || kp.priv.h.modulus() != n || kp.priv.k.modulus() != n) {
    check.defects.push_back(KeyDefect::modulus_mismatch);
    return check;
  }
  if (kp.pub.h != kp.priv.h) check.defects.push_back(KeyDefect::h_mismatch);
  if (gcd(kp.priv.k.value(), n) != 1) check.defects.push_back(KeyDefect::k_not_coprime);
  const Residue& k = kp.priv.k;
  if ((kp.priv.h * k * k).value() != n - 1) check.defects.push_back(KeyDefect::h_not_inverse_square);
  return check;
}

std::string write_public_key(const PublicKey& key) {
  return "oss-key v1 public\nn " + to_decimal(key.n) + "\nh " + to_decimal(key.h.value()) + "\n";
}

std::string write_private_key(const PrivateKey& key) {
  return "oss-key v1 private\nn " + to_decimal(key.n) + "\nh " + to_decimal(key.h.value()) + "\nk " +
         to_decimal(key.k.value()) + "\n";
}

namespace {

struct RawKey {
  bool is_private = false;
  BigInt n;
  BigInt h;
  BigInt k;
};

RawKey parse_key_file(std::string_view text) {
  detail::LineReader lines(text);
  RawKey raw;
  const std::string_view header = lines.next("key header");
  if (header == "oss-key v1 public") {
    raw.is_private = false;
  } else if (header == "oss-key v1 private") {
    raw.is_private = true;
  } else if (header.starts_with("oss-key ")) {
    throw Error(Errc::unsupported_version, std::string(header));
  } else {
    throw Error(Errc::malformed_file, "not a key file");
  }
  raw.n = parse_decimal(lines.field("n"));
  raw.h = parse_decimal(lines.field("h"));
  if (raw.is_private) {
    raw.k = parse_decimal(lines.field("k"));
  }
  lines.expect_end();

  if (raw.n < kMinModulus || raw.h < 0 || raw.h >= raw.n || (raw.is_private && (raw.k < 0 || raw.k >= raw.n))) {
    throw Error(Errc::invalid_key, "non-canonical residue or modulus below 15");
  }
  if (!boost::multiprecision::bit_test(raw.n, 0)) {
    throw Error(Errc::even_modulus, "n = " + to_decimal(raw.n));
  }
  return raw;
}

}  // namespace

PublicKey read_public_key(std::string_view text) {
  const RawKey raw = parse_key_file(text);
  if (raw.is_private) {
    throw Error(Errc::malformed_file, "expected a public key file");
  }
  return PublicKey{raw.n, Residue(raw.h, raw.n)};
}

PrivateKey read_private_key(std::string_view text) {
  const RawKey raw = parse_key_file(text);
  if (!raw.is_private) {
    throw Error(Errc::malformed_file, "expected a private key file");
  }
  PrivateKey key{raw.n, Residue(raw.k, raw.n), Residue(raw.h, raw.n)};
  if (!validate_keypair(KeyPair{key.public_key(), key})) {
    throw Error(Errc::invalid_key, "h * k^2 != -1 (mod n) or gcd(k, n) != 1");
  }
  return key;
}

PublicKey read_any_public_key(std::string_view text) {
  const RawKey raw = parse_key_file(text);
  if (raw.is_private) {
    return read_private_key(text).public_key();
  }
  return PublicKey{raw.n, Residue(raw.h, raw.n)};
}

}  // namespace oss
