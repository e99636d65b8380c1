#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace oss {

enum class Errc {
  not_coprime,
  even_modulus,
  invalid_parameter,
  invalid_key,
  cover_too_short,
  extract_out_of_range,
  missing_marker,
  odd_token_count,
  malformed_integer,
  malformed_file,
  length_mismatch,
  unsupported_version,
  no_fit,
  division_by_zero,
  invalid_scenario,
};

std::string_view to_string(Errc code) noexcept;

/// Every failure in the library surfaces as this exception; `code()` is the
/// stable part, `what()` carries position or symbol details for humans.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace oss
