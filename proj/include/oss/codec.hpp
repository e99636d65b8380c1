#pragma once

//! Text formats for signature blocks, signed messages and covert bundles.
//!
//!   <begin_of_signature>
//!   <s1> <s2>            one line per pair, canonical decimal residues
//!   <end_of_signature>
//!
//! Readers accept any whitespace-separated token stream between the markers.

#include <string>
#include <string_view>
#include <vector>

#include "oss/sigscheme.hpp"
#include "oss/subliminal.hpp"

namespace oss {

inline constexpr std::string_view kBeginSignature = "<begin_of_signature>";
inline constexpr std::string_view kEndSignature = "<end_of_signature>";

std::string format_block(const std::vector<SignaturePair>& pairs);

/// Raw tokens between the first begin marker and the following end marker.
/// Throws missing_marker.
std::vector<std::string> block_tokens(std::string_view text);

/// Throws missing_marker, odd_token_count, or malformed_integer (with token
/// index) for non-canonical or out-of-range residues.
std::vector<SignaturePair> parse_block(std::string_view text, const BigInt& n);

struct SignedMessageFile {
  BigInt n;
  SignedMessage signed_message;
};

std::string write_signed_message(const SignedMessage& signed_message, const BigInt& n);
SignedMessageFile read_signed_message(std::string_view text);

struct CovertBundleFile {
  BigInt n;
  CovertBundle bundle;
};

std::string write_covert_bundle(const CovertBundle& bundle, const BigInt& n);
CovertBundleFile read_covert_bundle(std::string_view text);

}  // namespace oss
