#include "oss/error.hpp"

namespace oss {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::not_coprime: return "NotCoprime";
    case Errc::even_modulus: return "EvenModulus";
    case Errc::invalid_parameter: return "InvalidParameter";
    case Errc::invalid_key: return "InvalidKey";
    case Errc::cover_too_short: return "CoverTooShort";
    case Errc::extract_out_of_range: return "ExtractOutOfRange";
    case Errc::missing_marker: return "MissingMarker";
    case Errc::odd_token_count: return "OddTokenCount";
    case Errc::malformed_integer: return "MalformedInteger";
    case Errc::malformed_file: return "MalformedFile";
    case Errc::length_mismatch: return "LengthMismatch";
    case Errc::unsupported_version: return "UnsupportedVersion";
    case Errc::no_fit: return "NoFit";
    case Errc::division_by_zero: return "DivisionByZero";
    case Errc::invalid_scenario: return "InvalidScenario";
  }
  return "Unknown";
}

}  // namespace oss
