#pragma once

#include <cstdint>

#include "spinwhiten/state_vector.hpp"

namespace spinwhiten {

struct QftSpec {
  int num_qubits = 1;
  bool inverse = false;
  /// With swaps the circuit matrix is exactly the DFT matrix; without them
  /// the output register is bit-reversed.
  bool include_bit_reversal_swaps = true;
};

/// QFT from n Hadamards, n(n-1)/2 controlled phases of order 2..n and
/// floor(n/2) swaps. The inverse circuit is the reversed adjoint.
Circuit qft_circuit(const QftSpec& spec, int max_qubits = kDefaultMaxQubits);

/// F(y, x) = 2^{-n/2} exp(2 pi i x y / 2^n), evaluated directly.
ComplexMatrix dft_matrix(int num_qubits);

/// A whitened phase in turns, 0 <= gamma < 1.
class PhaseSample {
 public:
  explicit PhaseSample(double gamma);
  double value() const noexcept { return gamma_; }

 private:
  double gamma_;
};

/// |phi_gamma> = 2^{-n/2} sum_x exp(2 pi i gamma x) |x>. For gamma = k/2^n
/// this is qft_circuit(n) applied to |k>, so the inverse QFT reads back k.
StateVector phase_encode(PhaseSample gamma, int num_qubits, int max_qubits = kDefaultMaxQubits);

struct PeakReadout {
  std::uint64_t index = 0;
  double probability = 0.0;
};

/// Most probable outcome; ties go to the smaller index.
PeakReadout peak_readout(const StateVector& state);

}  // namespace spinwhiten
