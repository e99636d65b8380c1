#pragma once

//! Deterministic replay of the warden scenario: Bob signs (or embeds), the
//! channel optionally tampers, Watson verifies with the public key and either
//! forwards or blocks, Alice verifies (or extracts).

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "oss/keys.hpp"
#include "oss/paper_oracle.hpp"

namespace oss {

enum class Actor { bob, channel, watson, alice };

std::string_view to_string(Actor actor) noexcept;

enum class TamperField { s1, s2, cover_byte, msg_byte };

struct Tamper {
  std::size_t position = 0;
  TamperField field = TamperField::s1;
  std::optional<BigInt> delta;  // empty: replace with a random different value

  friend bool operator==(const Tamper&, const Tamper&) = default;
};

/// `s1@0`, `s2@3:random`, `cover_byte@1:delta=5`. Throws invalid_scenario.
Tamper parse_tamper(std::string_view spec);
std::string format_tamper(const Tamper& tamper);

struct Scenario {
  Scheme scheme = Scheme::subliminal;
  std::string secret;
  std::string cover;  // subliminal only
  KeyPair keys;
  std::optional<Tamper> tamper;
  std::uint64_t seed = 0;
};

struct Event {
  Actor actor;
  std::string action;
  std::string payload;
  bool warden_visible = false;
};

struct Transcript {
  Scheme scheme = Scheme::subliminal;
  std::uint64_t seed = 0;
  std::vector<Event> events;
  bool warden_verdict = false;
  std::optional<std::string> receiver_output;
  std::optional<std::string> receiver_error;
  bool leak_check = false;

  friend bool operator==(const Transcript& a, const Transcript& b);
};

/// Pure function of the scenario. Throws invalid_scenario for out-of-range
/// tamper positions or fields that do not exist in the chosen scheme.
Transcript run_scenario(const Scenario& scenario);

/// Line-oriented, stable rendering: events, then key=value verdict lines.
std::string render_transcript(const Transcript& transcript);

struct TranscriptVerdicts {
  bool warden_verdict = false;
  std::optional<std::string> receiver_output;
  bool leak_check = false;
};

/// Reads the verdict lines back out of a rendered transcript.
TranscriptVerdicts parse_transcript_verdicts(std::string_view text);

/// `oss-scenario v1` files. Secrets and covers are single-line texts.
std::string write_scenario(const Scenario& scenario);
Scenario read_scenario(std::string_view text);

}  // namespace oss
