#include "cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "oss/channel_sim.hpp"
#include "oss/codec.hpp"
#include "oss/error.hpp"
#include "oss/keys.hpp"
#include "oss/paper_oracle.hpp"
#include "oss/sigscheme.hpp"
#include "oss/subliminal.hpp"

namespace oss::cli {

namespace {

namespace fs = std::filesystem;

constexpr std::string_view kBrokenSchemeWarning =
    "warning: this signature scheme is cryptanalytically broken; use this tool for study only\n";

// Raised for usage problems detected after CLI11 parsing (missing files, bad values).
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw UsageError("cannot write " + path);
  out << contents;
  if (!out) throw UsageError("short write to " + path);
}

enum class Context { general, extraction };

int exit_code_for(Errc code, Context context) {
  switch (code) {
    case Errc::missing_marker:
    case Errc::odd_token_count:
    case Errc::malformed_integer:
    case Errc::malformed_file:
    case Errc::unsupported_version:
    case Errc::invalid_scenario:
      return kUsageError;
    case Errc::not_coprime:
      return context == Context::extraction ? kVerificationFailure : kPreconditionError;
    case Errc::even_modulus:
    case Errc::invalid_parameter:
    case Errc::invalid_key:
    case Errc::cover_too_short:
      return kPreconditionError;
    case Errc::extract_out_of_range:
    case Errc::length_mismatch:
    case Errc::no_fit:
    case Errc::division_by_zero:
      return kVerificationFailure;
  }
  return kUsageError;
}

SeededRng make_rng(const std::optional<std::uint64_t>& seed) {
  return seed ? SeededRng(*seed) : SeededRng::from_entropy();
}

RMode parse_r_mode(const std::string& text) {
  if (text == "fresh") return RMode::fresh();
  if (text.starts_with("fixed:")) {
    try {
      return RMode::fixed(parse_decimal(text.substr(6)));
    } catch (const Error&) {
    }
  }
  throw UsageError("--r-mode must be 'fresh' or 'fixed:<decimal>'");
}

// --- commands ------------------------------------------------------------

struct KeygenOptions {
  unsigned bits = 256;
  unsigned k_bits = 64;
  std::optional<std::uint64_t> seed;
  std::string out;
};

int cmd_keygen(const KeygenOptions& o, std::ostream& out, std::ostream& err) {
  err << kBrokenSchemeWarning;
  SeededRng rng = make_rng(o.seed);
  const KeyPair kp = keygen(o.bits, o.k_bits, rng);
  write_file(o.out + ".pub", write_public_key(kp.pub));
  write_file(o.out + ".key", write_private_key(kp.priv));
  out << "n: " << bit_length(kp.pub.n) << " bits\n";
  out << "wrote " << o.out << ".pub and " << o.out << ".key\n";
  return kSuccess;
}

struct SignOptions {
  std::string key;
  std::string in;
  std::string sig;
  std::string r_mode = "fresh";
  std::optional<std::uint64_t> seed;
};

int cmd_sign(const SignOptions& o, std::ostream& out) {
  const PrivateKey priv = read_private_key(read_file(o.key));
  const std::string message = read_file(o.in);
  const RMode mode = parse_r_mode(o.r_mode);
  SeededRng rng = make_rng(o.seed);
  const SignedMessage signed_message = sign_bytes(message, priv, rng, mode);
  write_file(o.sig, write_signed_message(signed_message, priv.n));
  out << "signed " << message.size() << " bytes into " << o.sig << "\n";
  return kSuccess;
}

struct VerifyOptions {
  std::string key;
  std::string sig;
  std::string in;
};

int cmd_verify(const VerifyOptions& o, std::ostream& out) {
  const PublicKey pub = read_any_public_key(read_file(o.key));
  const SignedMessageFile file = read_signed_message(read_file(o.sig));
  if (file.n != pub.n) {
    out << "INVALID: signature file modulus does not match the key\n";
    return kVerificationFailure;
  }
  const std::string message = o.in.empty() ? file.signed_message.message : read_file(o.in);
  const Verification v = verify_bytes(message, file.signed_message.pairs, pub);
  std::string verdicts;
  for (const bool ok : v.per_byte) verdicts += ok ? '1' : '0';
  out << "verdicts: " << verdicts << "\n";
  if (v.reason) out << "reason: " << to_string(*v.reason) << "\n";
  out << (v.ok() ? "VALID" : "INVALID") << "\n";
  return v.ok() ? kSuccess : kVerificationFailure;
}

struct CovertOptions {
  std::string key;
  std::string secret;
  std::string cover;
  std::string bundle;
};

int cmd_covert_embed(const CovertOptions& o, std::ostream& out) {
  const PrivateKey priv = read_private_key(read_file(o.key));
  const CovertBundle bundle = covert_embed_text(read_file(o.secret), read_file(o.cover), priv);
  write_file(o.bundle, write_covert_bundle(bundle, priv.n));
  out << "embedded into " << bundle.pairs.size() << " signature pairs in " << o.bundle << "\n";
  return kSuccess;
}

int cmd_covert_extract(const CovertOptions& o, std::ostream& out, std::ostream& err) {
  const PrivateKey priv = read_private_key(read_file(o.key));
  const CovertBundleFile file = read_covert_bundle(read_file(o.bundle));
  if (file.n != priv.n) {
    err << "bundle modulus does not match the key\n";
    return kVerificationFailure;
  }
  if (!verify_cover_text(file.bundle, priv.public_key())) {
    err << "cover signature does not verify\n";
    return kVerificationFailure;
  }
  try {
    out << covert_extract_text(file.bundle, priv) << "\n";
  } catch (const Error& e) {
    err << e.what() << "\n";
    return exit_code_for(e.code(), Context::extraction);
  }
  return kSuccess;
}

int cmd_covert_verify(const CovertOptions& o, std::ostream& out) {
  const PublicKey pub = read_any_public_key(read_file(o.key));
  const CovertBundleFile file = read_covert_bundle(read_file(o.bundle));
  const bool ok = file.n == pub.n && verify_cover_text(file.bundle, pub);
  out << (ok ? "VALID" : "INVALID") << "\n";
  return ok ? kSuccess : kVerificationFailure;
}

int cmd_trace(const std::string& name, std::ostream& out) {
  TraceReport report;
  if (name == "paper-sig") {
    report = trace_signature();
  } else if (name == "paper-subliminal") {
    report = trace_subliminal();
  } else {
    throw UsageError("unknown trace '" + name + "' (paper-sig, paper-subliminal)");
  }
  out << render_trace(report);
  return report.verdict ? kSuccess : kVerificationFailure;
}

int cmd_tables(const std::string& dir, bool all_cells, std::ostream& out) {
  const fs::path table1 = fs::path(dir) / "table1.txt";
  const fs::path table2 = fs::path(dir) / "table2.txt";
  if (!fs::is_regular_file(table1) || !fs::is_regular_file(table2)) {
    throw UsageError("fixture directory " + dir + " must contain table1.txt and table2.txt");
  }
  bool ok = true;
  for (const fs::path& path : {table1, table2}) {
    const TableReproduction rep = reproduce_table(parse_table_fixture(read_file(path.string())));
    out << "== " << path.filename().string() << "\n" << render_reproduction(rep, all_cells);
    ok = ok && rep.ok();
  }
  out << (ok ? "tables reproduced" : "tables NOT reproduced") << "\n";
  return ok ? kSuccess : kVerificationFailure;
}

struct DemoOptions {
  std::string scheme = "subliminal";
  std::string secret = "Robbi";
  std::optional<std::string> cover;
  std::string tamper;
  std::uint64_t seed = 1;
  unsigned bits = 128;
  unsigned k_bits = 64;
  std::string scenario_file;
};

int cmd_demo(const DemoOptions& o, std::ostream& out) {
  Scenario scenario;
  if (!o.scenario_file.empty()) {
    scenario = read_scenario(read_file(o.scenario_file));
  } else {
    if (o.scheme == "signature") {
      if (o.cover) throw UsageError("--cover only applies to the subliminal scheme");
      scenario.scheme = Scheme::signature;
    } else if (o.scheme == "subliminal") {
      scenario.scheme = Scheme::subliminal;
      scenario.cover = o.cover.value_or("Janner");
    } else {
      throw UsageError("--scheme must be signature or subliminal");
    }
    scenario.secret = o.secret;
    if (!o.tamper.empty()) scenario.tamper = parse_tamper(o.tamper);
    SeededRng key_rng(o.seed);
    scenario.keys = keygen(o.bits, o.k_bits, key_rng);
    scenario.seed = o.seed;
  }
  const Transcript transcript = run_scenario(scenario);
  out << render_transcript(transcript);
  const bool delivered = transcript.warden_verdict && transcript.receiver_output.has_value();
  return delivered ? kSuccess : kVerificationFailure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Ong-Schnorr-Shamir signatures and subliminal channel (educational)", "oss"};
  app.require_subcommand(1);

  KeygenOptions keygen_opts;
  auto* keygen_cmd = app.add_subcommand("keygen", "generate a key pair");
  keygen_cmd->add_option("--bits", keygen_opts.bits, "modulus size in bits")->capture_default_str();
  keygen_cmd->add_option("--k-bits", keygen_opts.k_bits, "private k size in bits")->capture_default_str();
  keygen_cmd->add_option("--seed", keygen_opts.seed, "RNG seed (default: entropy)");
  keygen_cmd->add_option("--out", keygen_opts.out, "output prefix for .pub/.key")->required();

  SignOptions sign_opts;
  auto* sign_cmd = app.add_subcommand("sign", "sign every byte of a message");
  sign_cmd->add_option("--key", sign_opts.key, "private key file")->required();
  sign_cmd->add_option("--in", sign_opts.in, "message file")->required();
  sign_cmd->add_option("--sig", sign_opts.sig, "signed-message output file")->required();
  sign_cmd->add_option("--r-mode", sign_opts.r_mode, "fresh | fixed:R")->capture_default_str();
  sign_cmd->add_option("--seed", sign_opts.seed, "RNG seed (default: entropy)");

  VerifyOptions verify_opts;
  auto* verify_cmd = app.add_subcommand("verify", "verify a signed-message file");
  verify_cmd->add_option("--key", verify_opts.key, "public or private key file")->required();
  verify_cmd->add_option("--sig", verify_opts.sig, "signed-message file")->required();
  verify_cmd->add_option("--in", verify_opts.in, "message to check instead of the embedded copy");

  CovertOptions covert_opts;
  auto* embed_cmd = app.add_subcommand("covert-embed", "hide a secret in signatures over a cover text");
  embed_cmd->add_option("--key", covert_opts.key, "private key file")->required();
  embed_cmd->add_option("--secret", covert_opts.secret, "secret file")->required();
  embed_cmd->add_option("--cover", covert_opts.cover, "cover file")->required();
  embed_cmd->add_option("--bundle", covert_opts.bundle, "bundle output file")->required();

  auto* extract_cmd = app.add_subcommand("covert-extract", "recover the secret from a bundle");
  extract_cmd->add_option("--key", covert_opts.key, "private key file")->required();
  extract_cmd->add_option("--bundle", covert_opts.bundle, "bundle file")->required();

  auto* cover_verify_cmd = app.add_subcommand("covert-verify", "warden check of a bundle's cover signatures");
  cover_verify_cmd->add_option("--key", covert_opts.key, "public or private key file")->required();
  cover_verify_cmd->add_option("--bundle", covert_opts.bundle, "bundle file")->required();

  std::string trace_name;
  auto* trace_cmd = app.add_subcommand("trace", "replay a published worked example over exact rationals");
  trace_cmd->add_option("name", trace_name, "paper-sig | paper-subliminal")->required();

  std::string fixtures_dir;
  bool all_cells = false;
  auto* tables_cmd = app.add_subcommand("tables", "fit and regenerate the published tables");
  tables_cmd->add_option("--fixtures", fixtures_dir, "directory with table1.txt and table2.txt")->required();
  tables_cmd->add_flag("--all-cells", all_cells, "print every cell, not only failures");

  DemoOptions demo_opts;
  auto* demo_cmd = app.add_subcommand("demo", "run the warden scenario and print its transcript");
  demo_cmd->add_option("--scheme", demo_opts.scheme, "signature | subliminal")->capture_default_str();
  demo_cmd->add_option("--secret", demo_opts.secret, "secret (or signed message)")->capture_default_str();
  demo_cmd->add_option("--cover", demo_opts.cover, "cover text (subliminal; default Janner)");
  demo_cmd->add_option("--tamper", demo_opts.tamper, "FIELD@POS[:random|:delta=D]");
  demo_cmd->add_option("--seed", demo_opts.seed, "seed for keys, randomizers and tampering")->capture_default_str();
  demo_cmd->add_option("--bits", demo_opts.bits, "modulus size for the generated keys")->capture_default_str();
  demo_cmd->add_option("--k-bits", demo_opts.k_bits, "private k size")->capture_default_str();
  demo_cmd->add_option("--scenario", demo_opts.scenario_file, "oss-scenario v1 file (overrides other flags)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kUsageError;
  }

  Context context = Context::general;
  try {
    if (*keygen_cmd) return cmd_keygen(keygen_opts, out, err);
    if (*sign_cmd) return cmd_sign(sign_opts, out);
    if (*verify_cmd) return cmd_verify(verify_opts, out);
    if (*embed_cmd) return cmd_covert_embed(covert_opts, out);
    if (*extract_cmd) {
      context = Context::extraction;
      return cmd_covert_extract(covert_opts, out, err);
    }
    if (*cover_verify_cmd) return cmd_covert_verify(covert_opts, out);
    if (*trace_cmd) return cmd_trace(trace_name, out);
    if (*tables_cmd) return cmd_tables(fixtures_dir, all_cells, out);
    if (*demo_cmd) return cmd_demo(demo_opts, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.code(), context);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }
  return kUsageError;
}

}  // namespace oss::cli
