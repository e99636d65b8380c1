#include "oss/subliminal.hpp"

#include "oss/error.hpp"

namespace oss {

SignaturePair embed(const Residue& secret, const Residue& cover, const PrivateKey& priv) {
  const BigInt& n = priv.n;
  const Residue w = canonical(secret.value(), n);
  const Residue w_prime = canonical(cover.value(), n);
  if (gcd(w.value(), n) != 1) {
    throw Error(Errc::not_coprime, "secret w = " + to_decimal(w.value()) + " shares a factor with n");
  }
  if (gcd(w_prime.value(), n) != 1) {
    throw Error(Errc::not_coprime, "cover w' = " + to_decimal(w_prime.value()) + " shares a factor with n");
  }
  return sign_residue(w_prime, priv, w.value());
}

bool verify_cover(const Residue& cover, const SignaturePair& sig, const PublicKey& pub) {
  return verify_residue(cover, sig, pub);
}

Residue extract(const Residue& cover, const SignaturePair& sig, const PrivateKey& priv) {
  const BigInt& n = priv.n;
  const Residue denominator = sig.s1 + priv.k.inverse() * sig.s2;
  if (gcd(denominator.value(), n) != 1) {
    throw Error(Errc::not_coprime, "s1 + s2/k = " + to_decimal(denominator.value()) + " is not invertible");
  }
  return canonical(cover.value(), n) * denominator.inverse();
}

CovertBundle covert_embed_text(const std::string& secret, const std::string& cover, const PrivateKey& priv,
                               unsigned char pad_byte) {
  if (secret.size() > cover.size()) {
    throw Error(Errc::cover_too_short, "secret has " + std::to_string(secret.size()) + " bytes, cover " +
                                           std::to_string(cover.size()));
  }
  CovertBundle bundle{cover, {}, pad_byte};
  bundle.pairs.reserve(cover.size());
  for (std::size_t i = 0; i < cover.size(); ++i) {
    const unsigned char w = i < secret.size() ? static_cast<unsigned char>(secret[i]) : pad_byte;
    const unsigned char w_prime = static_cast<unsigned char>(cover[i]);
    try {
      bundle.pairs.push_back(embed(byte_residue(w, priv.n), byte_residue(w_prime, priv.n), priv));
    } catch (const Error& e) {
      if (e.code() != Errc::not_coprime) throw;
      throw Error(Errc::not_coprime, "position " + std::to_string(i) + ": " + e.what());
    }
  }
  return bundle;
}

bool verify_cover_text(const CovertBundle& bundle, const PublicKey& pub) {
  return verify_bytes(bundle.cover, bundle.pairs, pub).ok();
}

std::string covert_extract_text(const CovertBundle& bundle, const PrivateKey& priv) {
  if (bundle.pairs.size() != bundle.cover.size()) {
    throw Error(Errc::length_mismatch, std::to_string(bundle.pairs.size()) + " pairs for " +
                                           std::to_string(bundle.cover.size()) + " cover bytes");
  }
  std::string secret;
  secret.reserve(bundle.cover.size());
  for (std::size_t i = 0; i < bundle.cover.size(); ++i) {
    const Residue cover = byte_residue(static_cast<unsigned char>(bundle.cover[i]), priv.n);
    Residue w = [&] {
      try {
        return extract(cover, bundle.pairs[i], priv);
      } catch (const Error& e) {
        if (e.code() != Errc::not_coprime) throw;
        throw Error(Errc::not_coprime, "position " + std::to_string(i) + ": " + e.what());
      }
    }();
    if (w.value() >= 256) {
      throw Error(Errc::extract_out_of_range, "position " + std::to_string(i) + " decodes to " + to_decimal(w.value()));
    }
    secret.push_back(static_cast<char>(w.value().convert_to<unsigned>()));
  }
  while (!secret.empty() && static_cast<unsigned char>(secret.back()) == bundle.pad_byte) {
    secret.pop_back();
  }
  return secret;
}

}  // namespace oss
