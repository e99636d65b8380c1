#pragma once

//! Subliminal channel: the secret w takes the place of the signing randomizer
//! r and the innocuous cover w' takes the place of the message. A verifier
//! with the public key sees an ordinary valid signature on w'; the holder of k
//! recovers w = w' / (s1 + s2/k).
//!
//! There is no other randomness, so equal (secret, cover) characters always
//! produce equal pairs.

#include <string>
#include <vector>

#include "oss/keys.hpp"
#include "oss/sigscheme.hpp"

namespace oss {

inline constexpr unsigned char kDefaultPadByte = 0x20;

struct CovertBundle {
  std::string cover;
  std::vector<SignaturePair> pairs;
  unsigned char pad_byte = kDefaultPadByte;

  friend bool operator==(const CovertBundle&, const CovertBundle&) = default;
};

/// s1 = (w'/w + w)/2, s2 = k(w'/w - w)/2 mod n. Throws not_coprime naming w or w'.
SignaturePair embed(const Residue& secret, const Residue& cover, const PrivateKey& priv);

/// The public check: identical to verify_residue with M := w'.
bool verify_cover(const Residue& cover, const SignaturePair& sig, const PublicKey& pub);

/// w' * (s1 + s2/k)^-1 mod n. Throws not_coprime when the denominator is not invertible.
Residue extract(const Residue& cover, const SignaturePair& sig, const PrivateKey& priv);

/// Pads the secret with `pad_byte` to the cover's length and embeds character
/// by character. Throws cover_too_short, or not_coprime naming the position.
CovertBundle covert_embed_text(const std::string& secret, const std::string& cover, const PrivateKey& priv,
                               unsigned char pad_byte = kDefaultPadByte);

/// Per-position cover verification; false on length mismatch.
bool verify_cover_text(const CovertBundle& bundle, const PublicKey& pub);

/// Extracts every position and strips trailing pad bytes. Throws
/// extract_out_of_range when a position decodes to a value >= 256.
std::string covert_extract_text(const CovertBundle& bundle, const PrivateKey& priv);

}  // namespace oss
