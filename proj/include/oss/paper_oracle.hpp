#pragma once

//! Exact-rational replay of the published worked examples and tables.
//!
//! The published numbers are decimal renderings of real-number arithmetic
//! (1/2, M/r and friends taken as fractions, never reduced mod n). Replaying
//! them over Q reproduces every digit; `to_residue` maps each fraction onto
//! the modular value the library computes, tying the two pipelines together.

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "oss/modmath.hpp"
#include "oss/rational.hpp"

namespace oss {

enum class Scheme { signature, subliminal };

std::string_view to_string(Scheme scheme) noexcept;

struct TraceStep {
  std::string label;
  Rational value;
  std::string rendered;                  // round-to-nearest at the printed precision
  std::optional<std::string> printed;    // the published token, when there is one
  bool matches = true;                   // within one unit in the last printed place
  std::optional<std::string> discrepancy;  // documented disagreement with the publication
};

struct TraceReport {
  Scheme scheme = Scheme::signature;
  std::vector<std::pair<std::string, BigInt>> inputs;
  std::vector<TraceStep> steps;
  std::vector<std::string> notes;
  bool identity_holds = false;   // verification (and extraction) come out exact
  bool modular_agrees = false;   // the fractions map onto the library's residues
  bool verdict = false;

  /// Throws invalid_parameter for an unknown label.
  const TraceStep& step(std::string_view label) const;
};

struct SignatureTraceInput {
  BigInt n = 239915931;
  BigInt k = 658;
  BigInt r = 17;
  BigInt message = 82;
};

struct SubliminalTraceInput {
  BigInt n = 17921593;
  BigInt k = 421;
  BigInt secret = 82;  // w, 'R'
  BigInt cover = 65;   // w', 'A'
};

/// The signature walkthrough with the published digits attached.
TraceReport trace_signature();
/// Same pipeline over arbitrary inputs; no published digits to compare.
TraceReport trace_signature(const SignatureTraceInput& input);

TraceReport trace_subliminal();
TraceReport trace_subliminal(const SubliminalTraceInput& input);

std::string render_trace(const TraceReport& report);

// --- Table fitting -------------------------------------------------------

struct PrintedPair {
  std::string s1_text;
  std::string s2_text;
  Rational s1;
  Rational s2;
};

struct TableRow {
  std::string message;  // as printed in the table's message column
  std::string signed_text;  // the bytes the pairs actually encode (usually == message)
  std::vector<PrintedPair> pairs;
};

struct TableFixture {
  Scheme scheme = Scheme::signature;
  std::optional<std::string> cover;
  std::vector<TableRow> rows;
};

/// `oss-table v1` fixture: `scheme`, optional `cover`, then `row <message>`,
/// optional `signed <text>`, and a signature block of decimal tokens.
/// `#` lines are comments.
TableFixture parse_table_fixture(std::string_view text);

struct FitResult {
  BigInt param;  // r (signature) or pad byte (subliminal)
  BigInt k;
  Rational residual;  // summed |printed - fitted| over S1 and S2 (doubled form)
};

inline constexpr std::uint32_t kFitSearchLimit = 100000;

/// Brute-force recovery of the undisclosed parameters: r (or the pad byte)
/// from the S1 column, then k from the S2 column. Throws no_fit unless every
/// cell lands within kCellTolerance relative error.
FitResult fit_table_params(const std::vector<TableRow>& rows, Scheme scheme,
                           const std::optional<std::string>& cover);

/// 5e-11 relative, as a fraction.
const Rational& cell_tolerance();

struct CellDiff {
  std::size_t row = 0;   // 0-based
  std::size_t pair = 0;  // 0-based
  int column = 1;        // 1 = S1, 2 = S2
  std::string printed;
  Rational expected;
  std::string expected_rendered;  // at the printed precision
  double relative_error = 0.0;
  bool pass = false;
};

struct TableReproduction {
  Scheme scheme = Scheme::signature;
  bool per_row = false;           // shared parameters failed, rows fitted individually
  std::vector<FitResult> fits;    // one entry, or one per row when per_row
  std::vector<CellDiff> cells;
  std::vector<std::string> notes;
  std::optional<std::string> failure;  // NoFit or structural mismatch

  bool ok() const;
};

/// Fits then regenerates every printed cell. Never throws for fit failures;
/// they land in `failure`.
TableReproduction reproduce_table(const TableFixture& fixture);

/// Both tables; true iff every cell of both passes.
bool reproduce_tables(const TableFixture& table1, const TableFixture& table2);

std::string render_reproduction(const TableReproduction& reproduction, bool all_cells = false);

/// Expected (S1, S2) for one character under the fitted parameters.
std::pair<Rational, Rational> signature_cell(unsigned message, const BigInt& r, const BigInt& k);
std::pair<Rational, Rational> subliminal_cell(unsigned secret, unsigned cover, const BigInt& k);

}  // namespace oss
