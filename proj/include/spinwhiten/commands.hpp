#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "spinwhiten/config.hpp"
#include "spinwhiten/signal.hpp"

namespace spinwhiten::cli {

// Exit-status contract of every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitSyntax = 2;
inline constexpr int kExitProtocol = 3;
inline constexpr int kExitIo = 4;
inline constexpr int kExitVerify = 5;

// ---- run ----------------------------------------------------------------

struct RunOptions {
  std::string program_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> ensemble_size;
  std::optional<std::string> out;
  std::optional<OutputFormat> format;
  bool timings = false;
};

/// Parse, check and execute a `.pp` program; the report goes to --out (or
/// standard output), and a one-line peak summary to `out` when a file was
/// written.
int cmd_run(const RunOptions& options, const CliConfig& config, std::ostream& out, std::ostream& err);

// ---- qft-verify ----------------------------------------------------------

struct QftVerifyRow {
  int num_qubits = 0;
  double max_error = 0.0;        // vs dft_matrix, entrywise
  double unitarity_error = 0.0;  // max |U^dagger U - I|
};

inline constexpr double kQftTolerance = 1e-12;

/// Rows for n = 1..max_qubits (max_qubits <= 10).
std::vector<QftVerifyRow> qft_verify(int max_qubits);

struct QftVerifyOptions {
  int max_qubits = 10;
  std::optional<std::string> out;
  double tolerance = kQftTolerance;
};
int cmd_qft_verify(const QftVerifyOptions& options, std::ostream& out, std::ostream& err);

// ---- cat -----------------------------------------------------------------

struct CatParams {
  std::vector<int> n_list{1, 2, 4, 8, 16, 32, 64, 128, 256, 512, 1024};
  int seeds = 50;
  std::size_t length = 1024;
  double dwell_s = 1e-3;
  /// Line frequency; unset means bin length/16 (62.5 Hz at the defaults).
  std::optional<double> freq_hz;
  double amp = 1.0;
  double t2_s = kInfiniteT2;
  double noise_sigma = 1.0;
};

struct CatRow {
  int n = 0;
  double mean_snr = 0.0;
  double std_snr = 0.0;
  SnrReport first_seed;  // report from seed index 0
};

struct CatStudy {
  std::vector<CatRow> rows;
  /// Least-squares slope of log(mean snr) on log(N); needs >= 2 distinct N.
  std::optional<double> slope;
  BinRange peak_window;
  BinRange noise_window;
  /// Averaged spectrum of seed 0 at the last N.
  Spectrum last_spectrum;
};

/// Monte Carlo CAT study. Trace i of seed s at N averages draws noise from
/// rng::derive(derive(derive(derive(master, tag("cat")), N), s), i).
CatStudy run_cat_study(const CatParams& params, std::uint64_t master_seed);

struct CatOptions {
  CatParams params;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<std::string> spectrum_out;
  std::optional<std::string> snr_json_out;
};
int cmd_cat(const CatOptions& options, const CliConfig& config, std::ostream& out, std::ostream& err);

// ---- budget --------------------------------------------------------------

struct BudgetOptions {
  /// Replacement stage list "label:exp,label:exp,..."; must be non-empty.
  std::optional<std::string> stages;
  /// Per-stage overrides "label=exp".
  std::vector<std::string> overrides;
  std::optional<std::string> out;
};

/// Applies --stages and --set overrides to the standard budget. Throws
/// InvalidArgument on malformed or empty overrides and unknown labels.
SpinBudget build_budget(const BudgetOptions& options);

int cmd_budget(const BudgetOptions& options, std::ostream& out, std::ostream& err);

// ---- peak-sweep ----------------------------------------------------------

struct SweepRow {
  double gamma = 0.0;
  std::uint64_t argmax = 0;
  double peak_probability = 0.0;
};

struct PeakSweep {
  std::vector<SweepRow> rows;
  double min_peak = 1.0;
  double min_gamma = 0.0;
};

/// gamma = j / grid for j < grid; peak of the inverse QFT of phase_encode.
PeakSweep run_peak_sweep(int num_qubits, std::size_t grid);

struct PeakSweepOptions {
  int qubits = 8;
  std::size_t grid = 10000;
  std::optional<std::string> out;
};
int cmd_peak_sweep(const PeakSweepOptions& options, std::ostream& out, std::ostream& err);

// ---- enhancement ---------------------------------------------------------

struct EnhancementOptions {
  int spins = 14;
  std::optional<std::string> out;
};
int cmd_enhancement(const EnhancementOptions& options, std::ostream& out, std::ostream& err);

}  // namespace spinwhiten::cli
