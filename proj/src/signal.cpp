#include "spinwhiten/signal.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "spinwhiten/error.hpp"
#include "spinwhiten/rng.hpp"

namespace spinwhiten {

FidTrace::FidTrace(std::vector<Complex> samples, double dwell_s)
    : samples_(std::move(samples)), dwell_s_(dwell_s) {
  if (samples_.size() < 2 || !is_power_of_two(samples_.size())) {
    throw Error(ErrorCode::NotPowerOfTwo,
                "trace length " + std::to_string(samples_.size()) + " is not a power of two >= 2");
  }
  if (!(dwell_s > 0.0) || !std::isfinite(dwell_s)) {
    throw Error(ErrorCode::NonPositiveInput, "dwell time must be positive");
  }
  for (const Complex& z : samples_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw Error(ErrorCode::InvalidArgument, "trace sample is not finite");
    }
  }
}

double Spectrum::frequency_hz(std::size_t k) const noexcept {
  const std::size_t n = bins.size();
  const double signed_k = k < n / 2 ? static_cast<double>(k)
                                    : static_cast<double>(k) - static_cast<double>(n);
  return signed_k * bin_width_hz;
}

FidTrace synth_fid(std::span<const SpectralLine> lines, std::size_t length, double dwell_s,
                   double noise_sigma, std::uint64_t seed) {
  if (length < 2 || !is_power_of_two(length)) {
    throw Error(ErrorCode::NotPowerOfTwo, "trace length " + std::to_string(length) + " is not a power of two >= 2");
  }
  if (!(dwell_s > 0.0)) throw Error(ErrorCode::NonPositiveInput, "dwell time must be positive");
  if (!(noise_sigma >= 0.0)) throw Error(ErrorCode::InvalidArgument, "noise sigma must be >= 0");
  const double nyquist = 0.5 / dwell_s;
  for (const SpectralLine& line : lines) {
    if (!(std::abs(line.freq_hz) < nyquist)) {
      throw Error(ErrorCode::LineAboveNyquist,
                  "line at " + std::to_string(line.freq_hz) + " Hz is not below Nyquist " +
                      std::to_string(nyquist) + " Hz");
    }
    if (!(line.amp >= 0.0) || !(line.t2_s > 0.0)) {
      throw Error(ErrorCode::InvalidArgument, "line amplitude must be >= 0 and T2 > 0");
    }
  }

  std::vector<Complex> samples(length);
  for (const SpectralLine& line : lines) {
    // Phase in turns reduced mod 1, so on-grid lines are exact periodic sequences.
    const double cycles_per_sample = line.freq_hz * dwell_s;
    const bool decays = std::isfinite(line.t2_s);
    for (std::size_t j = 0; j < length; ++j) {
      double turns = cycles_per_sample * static_cast<double>(j);
      turns -= std::floor(turns);
      double a = line.amp;
      if (decays) a *= std::exp(-static_cast<double>(j) * dwell_s / line.t2_s);
      samples[j] += std::polar(a, 2.0 * std::numbers::pi * turns);
    }
  }
  FidTrace clean(std::move(samples), dwell_s);
  if (noise_sigma == 0.0) return clean;
  return add_noise(clean, noise_sigma, seed);
}

FidTrace add_noise(const FidTrace& trace, double noise_sigma, std::uint64_t seed) {
  if (!(noise_sigma >= 0.0)) throw Error(ErrorCode::InvalidArgument, "noise sigma must be >= 0");
  std::vector<Complex> samples = trace.samples();
  for (std::size_t j = 0; j < samples.size(); ++j) {
    samples[j] += noise_sigma * rng::normal_pair(seed, j);
  }
  return FidTrace(std::move(samples), trace.dwell_s());
}

Spectrum fft(const FidTrace& trace) {
  Spectrum s{trace.samples(), 1.0 / (static_cast<double>(trace.size()) * trace.dwell_s())};
  fft_inplace(s.bins, FftDirection::Forward);
  return s;
}

FidTrace inverse_fft(const Spectrum& spectrum) {
  if (!(spectrum.bin_width_hz > 0.0)) {
    throw Error(ErrorCode::NonPositiveInput, "spectrum bin width must be positive");
  }
  std::vector<Complex> samples = spectrum.bins;
  fft_inplace(samples, FftDirection::Inverse);
  const double dwell = 1.0 / (static_cast<double>(samples.size()) * spectrum.bin_width_hz);
  return FidTrace(std::move(samples), dwell);
}

FidTrace cat_average(std::span<const FidTrace> traces) {
  if (traces.empty()) throw Error(ErrorCode::EmptyInput, "no traces to average");
  const std::size_t length = traces.front().size();
  const double dwell = traces.front().dwell_s();
  std::vector<Complex> sum(length);
  for (const FidTrace& t : traces) {
    if (t.size() != length || t.dwell_s() != dwell) {
      throw Error(ErrorCode::LengthMismatch, "traces differ in length or dwell time");
    }
    for (std::size_t j = 0; j < length; ++j) sum[j] += t.samples()[j];
  }
  const double inv = 1.0 / static_cast<double>(traces.size());
  for (Complex& z : sum) z *= inv;
  return FidTrace(std::move(sum), dwell);
}

SnrReport estimate_snr(const Spectrum& spectrum, BinRange peak_window, BinRange noise_window,
                       int n_averages) {
  const std::size_t n = spectrum.bins.size();
  if (peak_window.size() == 0 || noise_window.size() == 0) {
    throw Error(ErrorCode::EmptyWindow, "peak and noise windows must be non-empty");
  }
  if (peak_window.end > n || noise_window.end > n) {
    throw Error(ErrorCode::OutOfRange, "window extends past the spectrum");
  }
  if (peak_window.begin < noise_window.end && noise_window.begin < peak_window.end) {
    throw Error(ErrorCode::WindowOverlap, "peak and noise windows overlap");
  }
  if (n_averages < 1) throw Error(ErrorCode::OutOfRange, "n_averages must be >= 1");

  SnrReport r;
  r.n_averages = n_averages;
  for (std::size_t k = peak_window.begin; k < peak_window.end; ++k) {
    r.peak_mag = std::max(r.peak_mag, std::abs(spectrum.bins[k]));
  }
  double sum_sq = 0.0;
  for (std::size_t k = noise_window.begin; k < noise_window.end; ++k) {
    sum_sq += std::norm(spectrum.bins[k]);
  }
  r.noise_rms = std::sqrt(sum_sq / static_cast<double>(noise_window.size()));
  if (r.noise_rms < 1e-300) throw Error(ErrorCode::ZeroNoiseFloor, "noise window is empty of noise");
  r.snr = r.peak_mag / r.noise_rms;
  return r;
}

SpinBudget SpinBudget::standard() {
  return {{{"avogadro", 23}, {"sample_tube", -3}, {"boltzmann", -6}, {"solute", -3}}};
}

std::vector<StagePopulation> spin_budget_chain(const SpinBudget& budget) {
  if (budget.stages.empty()) throw Error(ErrorCode::EmptyInput, "budget has no stages");
  std::vector<StagePopulation> chain;
  chain.reserve(budget.stages.size());
  int exponent = 0;
  for (const BudgetStage& stage : budget.stages) {
    exponent += stage.decade_exponent;
    chain.push_back({stage.label, exponent});
  }
  return chain;
}

EnhancementReport enhancement_report(int n_register_spins) {
  if (n_register_spins < 1 || n_register_spins > 64) {
    throw Error(ErrorCode::OutOfRange, "register spins must be in [1, 64]");
  }
  EnhancementReport r;
  r.n_register_spins = n_register_spins;
  r.register_states = std::ldexp(1.0, n_register_spins);
  // 2^64 is the one allowed count that does not fit in uint64.
  r.register_states_decimal = n_register_spins < 64
                                  ? std::to_string(std::uint64_t{1} << n_register_spins)
                                  : std::string("18446744073709551616");
  if (n_register_spins == 14) r.claimed_factor_at_14 = 10.0;
  r.supporting_arithmetic_consistent = false;
  r.notes.push_back(
      "inconsistent_register_arithmetic: the quoted chain 2^14 -> 10^12 spins does not follow "
      "from 2^14 = 16384");
  r.notes.push_back("no_enhancement_model: register_states counts basis states only; no S/N gain is derived");
  return r;
}

}  // namespace spinwhiten
