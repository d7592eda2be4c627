#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "spinwhiten/fft.hpp"
#include "spinwhiten/state_vector.hpp"

namespace spinwhiten {

/// Complex time-domain acquisition. Length is a power of two >= 2.
class FidTrace {
 public:
  FidTrace(std::vector<Complex> samples, double dwell_s);

  const std::vector<Complex>& samples() const noexcept { return samples_; }
  double dwell_s() const noexcept { return dwell_s_; }
  std::size_t size() const noexcept { return samples_.size(); }
  double nyquist_hz() const noexcept { return 0.5 / dwell_s_; }

  bool operator==(const FidTrace&) const = default;

 private:
  std::vector<Complex> samples_;
  double dwell_s_;
};

struct Spectrum {
  std::vector<Complex> bins;
  double bin_width_hz = 0.0;

  /// Signed frequency of bin k: k * width below L/2, (k - L) * width above.
  double frequency_hz(std::size_t k) const noexcept;
};

inline constexpr double kInfiniteT2 = std::numeric_limits<double>::infinity();

struct SpectralLine {
  double freq_hz = 0.0;
  double amp = 1.0;
  double t2_s = kInfiniteT2;
};

/// s(t_j) = sum_l A_l e^{2 pi i nu_l t_j} e^{-t_j/T2_l} + complex Gaussian
/// noise with std noise_sigma per component, drawn from rng stream `seed`.
FidTrace synth_fid(std::span<const SpectralLine> lines, std::size_t length, double dwell_s,
                   double noise_sigma, std::uint64_t seed);

/// trace + complex Gaussian noise (std sigma per component) from stream
/// `seed`; sample j uses counters 2j and 2j+1.
FidTrace add_noise(const FidTrace& trace, double noise_sigma, std::uint64_t seed);

Spectrum fft(const FidTrace& trace);
FidTrace inverse_fft(const Spectrum& spectrum);

/// Pointwise mean of equally shaped traces.
FidTrace cat_average(std::span<const FidTrace> traces);

/// Half-open bin range [begin, end).
struct BinRange {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::size_t size() const noexcept { return end > begin ? end - begin : 0; }
};

struct SnrReport {
  double peak_mag = 0.0;
  double noise_rms = 0.0;
  double snr = 0.0;
  int n_averages = 1;
};

/// Peak |bin| over peak_window divided by RMS |bin| over noise_window.
SnrReport estimate_snr(const Spectrum& spectrum, BinRange peak_window, BinRange noise_window,
                       int n_averages = 1);

struct BudgetStage {
  std::string label;
  int decade_exponent = 0;
  bool operator==(const BudgetStage&) const = default;
};

/// Order-of-magnitude population chain; the first stage is the source.
struct SpinBudget {
  std::vector<BudgetStage> stages;

  /// Avogadro 10^23, sample tube 10^-3, Boltzmann 10^-6, solute 10^-3.
  static SpinBudget standard();
};

struct StagePopulation {
  std::string label;
  int log10_population = 0;
  bool operator==(const StagePopulation&) const = default;
};

/// Running product of decades, stage by stage.
std::vector<StagePopulation> spin_budget_chain(const SpinBudget& budget);

struct EnhancementReport {
  int n_register_spins = 0;
  /// 2^n. Exact in binary64 for every allowed n.
  double register_states = 0.0;
  std::string register_states_decimal;
  /// The quoted factor for a 14-spin register; only set when n == 14.
  std::optional<double> claimed_factor_at_14;
  /// Spins quoted for the 14-spin register, log10.
  int claimed_spins_log10_at_14 = 12;
  bool supporting_arithmetic_consistent = false;
  std::vector<std::string> notes;
};

/// Register bookkeeping for an n-spin register, 1 <= n <= 64. Reports
/// counts only; no physical enhancement is derived.
EnhancementReport enhancement_report(int n_register_spins);

}  // namespace spinwhiten
