#include "oss/codec.hpp"

#include <cctype>
#include <cstdint>
#include <limits>

#include "oss/error.hpp"
#include "text.hpp"

namespace oss {

std::string format_block(const std::vector<SignaturePair>& pairs) {
  std::string out(kBeginSignature);
  out += '\n';
  for (const SignaturePair& pair : pairs) {
    out += to_decimal(pair.s1.value());
    out += ' ';
    out += to_decimal(pair.s2.value());
    out += '\n';
  }
  out += kEndSignature;
  out += '\n';
  return out;
}

namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

// Locates the block; `end` receives the offset just past the end marker.
std::vector<std::string> tokens_between_markers(std::string_view text, std::size_t& end) {
  const std::size_t begin = text.find(kBeginSignature);
  if (begin == std::string_view::npos) {
    throw Error(Errc::missing_marker, std::string(kBeginSignature));
  }
  const std::size_t body = begin + kBeginSignature.size();
  const std::size_t close = text.find(kEndSignature, body);
  if (close == std::string_view::npos) {
    throw Error(Errc::missing_marker, std::string(kEndSignature));
  }
  end = close + kEndSignature.size();

  std::vector<std::string> tokens;
  std::size_t i = body;
  while (i < close) {
    while (i < close && is_space(text[i])) ++i;
    const std::size_t start = i;
    while (i < close && !is_space(text[i])) ++i;
    if (i > start) tokens.emplace_back(text.substr(start, i - start));
  }
  return tokens;
}

Residue parse_residue_token(const std::string& token, std::size_t index, const BigInt& n) {
  BigInt value;
  try {
    value = parse_decimal(token);
  } catch (const Error&) {
    throw Error(Errc::malformed_integer, "token " + std::to_string(index) + " '" + token + "'");
  }
  if (value < 0 || value >= n) {
    throw Error(Errc::malformed_integer, "token " + std::to_string(index) + " is not a residue mod n");
  }
  return Residue(std::move(value), n);
}

std::vector<SignaturePair> pairs_from_tokens(const std::vector<std::string>& tokens, const BigInt& n) {
  if (tokens.size() % 2 != 0) {
    throw Error(Errc::odd_token_count, std::to_string(tokens.size()) + " tokens");
  }
  std::vector<SignaturePair> pairs;
  pairs.reserve(tokens.size() / 2);
  for (std::size_t i = 0; i < tokens.size(); i += 2) {
    pairs.push_back({parse_residue_token(tokens[i], i, n), parse_residue_token(tokens[i + 1], i + 1, n)});
  }
  return pairs;
}

void check_version(std::string_view header, std::string_view expected) {
  if (header == expected) return;
  const std::string_view kind = expected.substr(0, expected.find(' ') + 1);
  if (header.starts_with(kind)) {
    throw Error(Errc::unsupported_version, std::string(header));
  }
  throw Error(Errc::malformed_file, "expected '" + std::string(expected) + "' header");
}

std::size_t parse_length(std::string_view text) {
  const BigInt value = parse_decimal(text);
  if (value < 0 || value > BigInt(std::numeric_limits<std::uint32_t>::max())) {
    throw Error(Errc::malformed_file, "bad length " + std::string(text));
  }
  return value.convert_to<std::size_t>();
}

// Shared body layout: `len` raw bytes, LF, then the block and nothing after it.
std::vector<SignaturePair> read_body(detail::LineReader& lines, std::size_t len, std::string& bytes, const BigInt& n) {
  if (!lines.next("separator").empty()) {
    throw Error(Errc::malformed_file, "expected blank line before body");
  }
  bytes = std::string(lines.take(len));
  const std::string_view rest = lines.rest();
  if (!rest.starts_with('\n') || !rest.substr(1).starts_with(kBeginSignature)) {
    throw Error(Errc::length_mismatch, "body does not end after " + std::to_string(len) + " bytes");
  }
  std::size_t end = 0;
  const std::vector<std::string> tokens = tokens_between_markers(rest, end);
  if (rest.substr(end) != "\n") {
    throw Error(Errc::malformed_file, "trailing data after signature block");
  }
  std::vector<SignaturePair> pairs = pairs_from_tokens(tokens, n);
  if (pairs.size() != len) {
    throw Error(Errc::length_mismatch, std::to_string(pairs.size()) + " pairs for " + std::to_string(len) + " bytes");
  }
  return pairs;
}

BigInt read_modulus(detail::LineReader& lines) {
  BigInt n = parse_decimal(lines.field("n"));
  if (n < 2) {
    throw Error(Errc::malformed_file, "modulus below 2");
  }
  return n;
}

}  // namespace

std::vector<std::string> block_tokens(std::string_view text) {
  std::size_t end = 0;
  return tokens_between_markers(text, end);
}

std::vector<SignaturePair> parse_block(std::string_view text, const BigInt& n) {
  return pairs_from_tokens(block_tokens(text), n);
}

std::string write_signed_message(const SignedMessage& signed_message, const BigInt& n) {
  return "oss-msg v1\nn " + to_decimal(n) + "\nlen " + std::to_string(signed_message.message.size()) + "\n\n" +
         signed_message.message + "\n" + format_block(signed_message.pairs);
}

SignedMessageFile read_signed_message(std::string_view text) {
  detail::LineReader lines(text);
  check_version(lines.next("header"), "oss-msg v1");
  SignedMessageFile file;
  file.n = read_modulus(lines);
  const std::size_t len = parse_length(lines.field("len"));
  file.signed_message.pairs = read_body(lines, len, file.signed_message.message, file.n);
  return file;
}

std::string write_covert_bundle(const CovertBundle& bundle, const BigInt& n) {
  return "oss-covert v1\nn " + to_decimal(n) + "\nlen " + std::to_string(bundle.cover.size()) + "\npad " +
         std::to_string(bundle.pad_byte) + "\n\n" + bundle.cover + "\n" + format_block(bundle.pairs);
}

CovertBundleFile read_covert_bundle(std::string_view text) {
  detail::LineReader lines(text);
  check_version(lines.next("header"), "oss-covert v1");
  CovertBundleFile file;
  file.n = read_modulus(lines);
  const std::size_t len = parse_length(lines.field("len"));
  const BigInt pad = parse_decimal(lines.field("pad"));
  if (pad < 0 || pad > 255) {
    throw Error(Errc::malformed_file, "pad byte out of range");
  }
  file.bundle.pad_byte = static_cast<unsigned char>(pad.convert_to<unsigned>());
  file.bundle.pairs = read_body(lines, len, file.bundle.cover, file.n);
  return file;
}

}  // namespace oss
