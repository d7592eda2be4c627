#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "spinwhiten/qft.hpp"
#include "spinwhiten/state_vector.hpp"

// Pulse-program language, one statement per line:
//
//   # ppv1                      optional version header
//   pulse90 <target>            90 degree excitation of a target population
//   whiten <target> [seed=N]    Gz phase whitening
//   encode <register> <qubits>  phase-encode the whitened phase on a register
//   qft <register>
//   iqft <register>
//   acquire shots=N             sample the last touched register
//
// Names match [a-z][a-z0-9_]*; '#' starts a comment; blank lines are ignored.

namespace spinwhiten::pp {

struct Pulse90 {
  std::string target;
  bool operator==(const Pulse90&) const = default;
};
struct Whiten {
  std::string target;
  std::optional<std::uint64_t> seed;
  bool operator==(const Whiten&) const = default;
};
struct Encode {
  std::string reg;
  int qubits = 1;
  bool operator==(const Encode&) const = default;
};
struct Qft {
  std::string reg;
  bool operator==(const Qft&) const = default;
};
struct Iqft {
  std::string reg;
  bool operator==(const Iqft&) const = default;
};
struct Acquire {
  int shots = 1;
  bool operator==(const Acquire&) const = default;
};

using Op = std::variant<Pulse90, Whiten, Encode, Qft, Iqft, Acquire>;

struct Statement {
  Op op;
  int line_no = 0;
  bool operator==(const Statement&) const = default;
};

std::string_view keyword(const Op& op);

struct PulseProgram {
  std::vector<Statement> statements;
  std::string source_name;
  bool versioned = false;
  bool operator==(const PulseProgram&) const = default;
};

/// Throws SyntaxError{line, column} on the first malformed statement.
PulseProgram parse(std::string_view source, std::string source_name = "<input>");

/// Canonical text. Statements are emitted on their original line numbers
/// (padding with blank lines), so parse(print(p)) == p.
std::string print(const PulseProgram& program);

/// Protocol ordering rules; throws ProtocolError naming the first violation.
PulseProgram check(PulseProgram program);

struct ExecOptions {
  std::size_t ensemble_size = 1'000'000;
  std::uint64_t master_seed = 0;
  int max_qubits = kDefaultMaxQubits;
};

struct StatementLog {
  int line_no = 0;
  std::string keyword;
  std::string detail;
  double elapsed_s = 0.0;
};

struct WhiteningRecord {
  std::string target;
  std::uint64_t seed = 0;
  std::size_t ensemble_size = 0;
  double signal_before = 0.0;  // |receiver_signal| right before whitening
  double signal_after = 0.0;
  /// gamma of spin 0, the one handed to encode.
  double representative_gamma = 0.0;
};

struct HistogramBin {
  std::uint64_t index = 0;
  std::uint64_t count = 0;
  bool operator==(const HistogramBin&) const = default;
};

struct AcquisitionRecord {
  std::string reg;
  int qubits = 0;
  int shots = 0;
  /// Nonzero counts, ascending index.
  std::vector<HistogramBin> histogram;
  std::uint64_t mode = 0;
  double mode_frequency = 0.0;
  PeakReadout peak;  // exact, from probabilities()
};

struct RunReport {
  std::string source_name;
  std::size_t ensemble_size = 0;
  std::uint64_t master_seed = 0;
  std::vector<StatementLog> log;
  std::optional<WhiteningRecord> whitening;      // last whiten executed
  std::optional<AcquisitionRecord> acquisition;  // last acquire executed
};

/// Runs a checked program. Module errors are rethrown as ExecutionError
/// carrying the statement line.
RunReport execute(const PulseProgram& program, const ExecOptions& options);

}  // namespace spinwhiten::pp
