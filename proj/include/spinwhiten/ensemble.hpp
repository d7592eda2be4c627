#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "spinwhiten/state_vector.hpp"

namespace spinwhiten {

enum class Orientation { Longitudinal, Transverse };

struct SpinState {
  Orientation orientation = Orientation::Longitudinal;
  /// Transverse phase in radians, [0, 2 pi). Ignored while longitudinal.
  double phase = 0.0;
  bool operator==(const SpinState&) const = default;
};

/// Classical population of target spins. Gradient pulses are ideal,
/// instantaneous dephasers and there is no relaxation at this level.
class SpinEnsemble {
 public:
  /// M spins at thermal equilibrium (all longitudinal).
  SpinEnsemble(std::size_t count, std::uint64_t seed);

  std::size_t size() const noexcept { return spins_.size(); }
  std::uint64_t seed() const noexcept { return seed_; }
  void reseed(std::uint64_t seed) noexcept { seed_ = seed; }

  const std::vector<SpinState>& spins() const noexcept { return spins_; }
  std::vector<SpinState>& spins() noexcept { return spins_; }

  bool operator==(const SpinEnsemble&) const = default;

 private:
  std::vector<SpinState> spins_;
  std::uint64_t seed_;
};

/// Rotates every longitudinal spin into the transverse plane at phase 0.
SpinEnsemble pulse90(SpinEnsemble ensemble);

struct WhitenResult {
  SpinEnsemble ensemble;
  /// gamma_k in [0, 1); spin k now has phase 2 pi gamma_k.
  std::vector<double> gammas;
};

/// Gz whitening: gamma_k = rng::uniform(seed, k), independent per spin.
/// Throws NotTransverse if any spin is still longitudinal.
WhitenResult gz_whiten(SpinEnsemble ensemble);

/// (1/M) sum over transverse spins of e^{i phase}.
// e^{i phase} to within about 1 ulp of std::cos / std::sin.
Complex unit_phasor(double phase);

Complex receiver_signal(const SpinEnsemble& ensemble);

/// 2x2 single-spin density matrix. Construction checks Hermiticity,
/// unit trace and positivity at 1e-12.
class QubitDensity {
 public:
  explicit QubitDensity(const std::array<Complex, 4>& row_major);

  const Complex& operator()(int row, int col) const { return m_[row * 2 + col]; }
  const std::array<Complex, 4>& entries() const noexcept { return m_; }
  Complex trace() const noexcept { return m_[0] + m_[3]; }

  bool operator==(const QubitDensity&) const = default;

 private:
  std::array<Complex, 4> m_;
};

/// Phase-averaged channel: keeps the diagonal, zeroes the coherences.
QubitDensity dephase(const QubitDensity& rho);

/// Boltzmann polarization tanh(hbar gamma B / 2 k T).
double thermal_polarization(double field_tesla, double temperature_kelvin,
                            double gyromagnetic_ratio);

inline constexpr double kProtonGyromagneticRatio = 2.675e8;  // rad/s/T

}  // namespace spinwhiten
