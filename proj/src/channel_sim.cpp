#include "oss/channel_sim.hpp"

#include <cstdio>
#include <limits>

#include "oss/codec.hpp"
#include "oss/error.hpp"
#include "oss/sigscheme.hpp"
#include "oss/subliminal.hpp"
#include "text.hpp"

namespace oss {

std::string_view to_string(Actor actor) noexcept {
  switch (actor) {
    case Actor::bob: return "Bob";
    case Actor::channel: return "Channel";
    case Actor::watson: return "Watson";
    case Actor::alice: return "Alice";
  }
  return "?";
}

namespace {

constexpr std::string_view field_name(TamperField field) {
  switch (field) {
    case TamperField::s1: return "s1";
    case TamperField::s2: return "s2";
    case TamperField::cover_byte: return "cover_byte";
    case TamperField::msg_byte: return "msg_byte";
  }
  return "?";
}

std::string escape(std::string_view bytes) {
  std::string out;
  for (const char c : bytes) {
    const auto u = static_cast<unsigned char>(c);
    if (c == '\n') {
      out += "\\n";
    } else if (c == '\\' || c == '"') {
      out += '\\';
      out += c;
    } else if (u >= 0x20 && u < 0x7f) {
      out += c;
    } else {
      char buf[5];
      std::snprintf(buf, sizeof buf, "\\x%02x", u);
      out += buf;
    }
  }
  return out;
}

std::string quote_bytes(std::string_view bytes) { return "\"" + escape(bytes) + "\""; }

std::string unescape(std::string_view text) {
  std::string out;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] != '\\' || i + 1 == text.size()) {
      out += text[i];
      continue;
    }
    const char next = text[++i];
    if (next == 'n') {
      out += '\n';
    } else if (next == 'x' && i + 2 < text.size()) {
      out += static_cast<char>(std::stoi(std::string(text.substr(i + 1, 2)), nullptr, 16));
      i += 2;
    } else {
      out += next;
    }
  }
  return out;
}

// The only state Watson ever holds is the public key.
struct Watson {
  PublicKey pub;

  std::string inspect(const std::string& visible_bytes, const std::vector<SignaturePair>& pairs) const {
    const Verification v = verify_bytes(visible_bytes, pairs, pub);
    std::string verdicts;
    for (const bool ok : v.per_byte) verdicts += ok ? '1' : '0';
    if (v.reason) verdicts += " " + std::string(to_string(*v.reason));
    return verdicts;
  }

  bool accepts(const std::string& visible_bytes, const std::vector<SignaturePair>& pairs) const {
    return verify_bytes(visible_bytes, pairs, pub).ok();
  }
};

struct Wire {
  std::string bytes;  // message (signature scheme) or cover (subliminal)
  std::vector<SignaturePair> pairs;

  std::string render() const { return "text=" + quote_bytes(bytes) + " block=" + quote_bytes(format_block(pairs)); }
};

void validate(const Scenario& s) {
  if (s.scheme == Scheme::subliminal && s.cover.empty()) {
    throw Error(Errc::invalid_scenario, "subliminal scenario needs a cover");
  }
  if (s.scheme == Scheme::signature && !s.cover.empty()) {
    throw Error(Errc::invalid_scenario, "signature scenario takes no cover");
  }
  if (!validate_keypair(s.keys)) {
    throw Error(Errc::invalid_scenario, "invalid key pair");
  }
  if (!s.tamper) return;
  const Tamper& t = *s.tamper;
  if (s.scheme == Scheme::signature && t.field == TamperField::cover_byte) {
    throw Error(Errc::invalid_scenario, "cover_byte tamper needs the subliminal scheme");
  }
  if (s.scheme == Scheme::subliminal && t.field == TamperField::msg_byte) {
    throw Error(Errc::invalid_scenario, "msg_byte tamper needs the signature scheme");
  }
  const std::size_t length = s.scheme == Scheme::signature ? s.secret.size() : s.cover.size();
  if (t.position >= length) {
    throw Error(Errc::invalid_scenario, "tamper position " + std::to_string(t.position) + " outside " +
                                            std::to_string(length) + " transmitted pairs");
  }
  if (t.delta) {
    const BigInt& modulus = (t.field == TamperField::s1 || t.field == TamperField::s2) ? s.keys.pub.n : BigInt(256);
    if (canonical(*t.delta, modulus).is_zero()) {
      throw Error(Errc::invalid_scenario, "tamper delta is a multiple of the field modulus");
    }
  }
}

std::string apply_tamper(const Tamper& t, Wire& wire, const BigInt& n, SeededRng& rng) {
  const auto tweak = [&](const BigInt& old, const BigInt& modulus) {
    if (t.delta) return canonical(old + *t.delta, modulus).value();
    for (;;) {
      BigInt candidate = rng.uniform_below(modulus);
      if (candidate != old) return candidate;
    }
  };
  std::string before, after;
  if (t.field == TamperField::s1 || t.field == TamperField::s2) {
    Residue& target = t.field == TamperField::s1 ? wire.pairs[t.position].s1 : wire.pairs[t.position].s2;
    before = to_decimal(target.value());
    target = Residue(tweak(target.value(), n), n);
    after = to_decimal(target.value());
  } else {
    char& byte = wire.bytes[t.position];
    const BigInt old(static_cast<unsigned char>(byte));
    before = quote_bytes(std::string(1, byte));
    byte = static_cast<char>(tweak(old, 256).convert_to<unsigned>());
    after = quote_bytes(std::string(1, byte));
  }
  return format_tamper(t) + " old=" + before + " new=" + after;
}

}  // namespace

bool operator==(const Transcript& a, const Transcript& b) {
  return render_transcript(a) == render_transcript(b);
}

Tamper parse_tamper(std::string_view spec) {
  const auto bad = [&](const std::string& why) {
    return Error(Errc::invalid_scenario, "tamper '" + std::string(spec) + "': " + why);
  };
  const std::size_t at = spec.find('@');
  if (at == std::string_view::npos) throw bad("expected FIELD@POSITION");
  const std::string_view field = spec.substr(0, at);
  std::string_view rest = spec.substr(at + 1);
  std::string_view mode;
  if (const std::size_t colon = rest.find(':'); colon != std::string_view::npos) {
    mode = rest.substr(colon + 1);
    rest = rest.substr(0, colon);
  }

  Tamper t;
  if (field == "s1") t.field = TamperField::s1;
  else if (field == "s2") t.field = TamperField::s2;
  else if (field == "cover_byte") t.field = TamperField::cover_byte;
  else if (field == "msg_byte") t.field = TamperField::msg_byte;
  else throw bad("unknown field");

  try {
    const BigInt position = parse_decimal(rest);
    if (position < 0 || position > BigInt(1u << 30)) throw bad("position out of range");
    t.position = position.convert_to<std::size_t>();
  } catch (const Error& e) {
    if (e.code() == Errc::invalid_scenario) throw;
    throw bad("position is not a decimal");
  }

  if (mode.empty() || mode == "random") return t;
  if (!mode.starts_with("delta=")) throw bad("mode must be random or delta=D");
  try {
    t.delta = parse_decimal(mode.substr(6));
  } catch (const Error&) {
    throw bad("delta is not a decimal");
  }
  return t;
}

std::string format_tamper(const Tamper& t) {
  std::string out = std::string(field_name(t.field)) + "@" + std::to_string(t.position);
  out += t.delta ? ":delta=" + to_decimal(*t.delta) : std::string(":random");
  return out;
}

Transcript run_scenario(const Scenario& s) {
  validate(s);
  SeededRng rng(s.seed);
  Transcript tr;
  tr.scheme = s.scheme;
  tr.seed = s.seed;
  const auto log = [&](Actor actor, std::string action, std::string payload, bool visible) {
    tr.events.push_back(Event{actor, std::move(action), std::move(payload), visible});
  };

  const PublicKey pub = s.keys.pub;
  const PrivateKey& bob_key = s.keys.priv;
  log(Actor::bob, "publish-key", "n=" + to_decimal(pub.n) + " h=" + to_decimal(pub.h.value()), true);

  Wire wire;
  if (s.scheme == Scheme::signature) {
    const SignedMessage signed_message = sign_bytes(s.secret, bob_key, rng);
    wire = Wire{signed_message.message, signed_message.pairs};
    log(Actor::bob, "sign", "bytes=" + std::to_string(s.secret.size()) + " r_mode=fresh", false);
  } else {
    const CovertBundle bundle = covert_embed_text(s.secret, s.cover, bob_key);
    wire = Wire{bundle.cover, bundle.pairs};
    log(Actor::bob, "embed",
        "secret_bytes=" + std::to_string(s.secret.size()) + " cover_bytes=" + std::to_string(s.cover.size()) +
            " pad=" + std::to_string(bundle.pad_byte),
        false);
  }
  log(Actor::bob, "send", wire.render(), true);

  if (s.tamper) {
    log(Actor::channel, "tamper", apply_tamper(*s.tamper, wire, pub.n, rng), true);
  }

  const Watson watson{pub};
  log(Actor::watson, "receive", wire.render(), true);
  log(Actor::watson, "verify", "verdicts=" + watson.inspect(wire.bytes, wire.pairs), true);
  tr.warden_verdict = watson.accepts(wire.bytes, wire.pairs);
  if (!tr.warden_verdict) {
    log(Actor::watson, "block", "signature rejected, nothing forwarded", true);
    tr.receiver_error = "blocked by warden";
  } else {
    log(Actor::watson, "forward", wire.render(), true);
    const PrivateKey& alice_key = s.keys.priv;
    if (s.scheme == Scheme::signature) {
      const Verification v = verify_bytes(wire.bytes, wire.pairs, pub);
      log(Actor::alice, "verify", v.ok() ? "valid" : "invalid", false);
      if (v.ok()) {
        tr.receiver_output = wire.bytes;
      } else {
        tr.receiver_error = "signature invalid";
      }
    } else {
      try {
        tr.receiver_output = covert_extract_text(CovertBundle{wire.bytes, wire.pairs, kDefaultPadByte}, alice_key);
        log(Actor::alice, "extract", "recovered_bytes=" + std::to_string(tr.receiver_output->size()), false);
      } catch (const Error& e) {
        tr.receiver_error = e.what();
        log(Actor::alice, "extract", std::string("failed: ") + e.what(), false);
      }
    }
  }
  if (tr.receiver_output) {
    log(Actor::alice, "output", quote_bytes(*tr.receiver_output), false);
  }

  tr.leak_check = true;
  if (!s.secret.empty()) {
    for (const Event& e : tr.events) {
      // Check the raw transmitted text as well as its escaped rendering.
      if (e.warden_visible && (e.payload.find(s.secret) != std::string::npos ||
                               e.payload.find(escape(s.secret)) != std::string::npos)) {
        tr.leak_check = false;
      }
    }
  }
  return tr;
}

std::string render_transcript(const Transcript& tr) {
  std::string out = "oss-transcript v1\nscheme " + std::string(to_string(tr.scheme)) + "\nseed " +
                    std::to_string(tr.seed) + "\n";
  for (std::size_t i = 0; i < tr.events.size(); ++i) {
    const Event& e = tr.events[i];
    out += "event " + std::to_string(i + 1) + " " + std::string(to_string(e.actor)) + " " + e.action +
           (e.warden_visible ? " [watson-visible] " : " [private] ") + e.payload + "\n";
  }
  out += "warden_verdict=" + std::string(tr.warden_verdict ? "accept" : "reject") + "\n";
  if (tr.receiver_output) {
    out += "receiver_output=" + quote_bytes(*tr.receiver_output) + "\n";
  } else {
    out += "receiver_error=" + quote_bytes(tr.receiver_error.value_or("")) + "\n";
  }
  out += "leak_check=" + std::string(tr.leak_check ? "true" : "false") + "\n";
  return out;
}

TranscriptVerdicts parse_transcript_verdicts(std::string_view text) {
  TranscriptVerdicts v;
  bool saw_verdict = false, saw_leak = false;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    if (line.starts_with("warden_verdict=")) {
      v.warden_verdict = line.substr(15) == "accept";
      saw_verdict = true;
    } else if (line.starts_with("receiver_output=\"") && line.ends_with('"')) {
      v.receiver_output = unescape(line.substr(17, line.size() - 18));
    } else if (line.starts_with("leak_check=")) {
      v.leak_check = line.substr(11) == "true";
      saw_leak = true;
    }
  }
  if (!saw_verdict || !saw_leak) {
    throw Error(Errc::malformed_file, "transcript without verdict lines");
  }
  return v;
}

std::string write_scenario(const Scenario& s) {
  if (s.secret.find('\n') != std::string::npos || s.cover.find('\n') != std::string::npos) {
    throw Error(Errc::invalid_scenario, "secret and cover must be single-line");
  }
  std::string out = "oss-scenario v1\nscheme " + std::string(to_string(s.scheme)) + "\nsecret " + s.secret + "\n";
  if (s.scheme == Scheme::subliminal) out += "cover " + s.cover + "\n";
  out += "n " + to_decimal(s.keys.priv.n) + "\nk " + to_decimal(s.keys.priv.k.value()) + "\n";
  out += "tamper " + (s.tamper ? format_tamper(*s.tamper) : std::string("none")) + "\n";
  out += "seed " + std::to_string(s.seed) + "\n";
  return out;
}

Scenario read_scenario(std::string_view text) {
  detail::LineReader lines(text);
  const std::string_view header = lines.next("header");
  if (header != "oss-scenario v1") {
    throw Error(header.starts_with("oss-scenario") ? Errc::unsupported_version : Errc::malformed_file,
                std::string(header));
  }
  Scenario s;
  const std::string_view scheme = lines.field("scheme");
  if (scheme == "signature") s.scheme = Scheme::signature;
  else if (scheme == "subliminal") s.scheme = Scheme::subliminal;
  else throw Error(Errc::invalid_scenario, "unknown scheme '" + std::string(scheme) + "'");

  // `secret ` may carry an empty value, which LineReader::field rejects.
  const std::string_view secret_line = lines.next("secret");
  if (!secret_line.starts_with("secret ")) throw Error(Errc::malformed_file, "expected 'secret' line");
  s.secret = std::string(secret_line.substr(7));
  if (s.scheme == Scheme::subliminal) s.cover = std::string(lines.field("cover"));

  const BigInt n = parse_decimal(lines.field("n"));
  const BigInt k = parse_decimal(lines.field("k"));
  s.keys = import_keys(n, k);
  const std::string_view tamper = lines.field("tamper");
  if (tamper != "none") s.tamper = parse_tamper(tamper);
  const BigInt seed = parse_decimal(lines.field("seed"));
  if (seed < 0 || seed > BigInt(std::numeric_limits<std::uint64_t>::max())) {
    throw Error(Errc::invalid_scenario, "seed out of range");
  }
  s.seed = seed.convert_to<std::uint64_t>();
  lines.expect_end();
  return s;
}

}  // namespace oss
