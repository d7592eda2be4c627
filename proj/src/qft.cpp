#include "spinwhiten/qft.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "spinwhiten/error.hpp"

namespace spinwhiten {

Circuit qft_circuit(const QftSpec& spec, int max_qubits) {
  const int n = spec.num_qubits;
  if (n < 1 || n > std::min(max_qubits, kHardMaxQubits)) {
    throw Error(ErrorCode::QubitCountExceeded,
                "QFT on " + std::to_string(n) + " qubits outside configured range");
  }

  Circuit forward(n);
  for (int j = 0; j < n; ++j) {
    forward.add(Hadamard{j});
    for (int k = j + 1; k < n; ++k) forward.add(ControlledPhase{k, j, k - j + 1});
  }
  if (spec.include_bit_reversal_swaps) {
    for (int j = 0; j < n / 2; ++j) forward.add(Swap{j, n - 1 - j});
  }
  if (!spec.inverse) return forward;

  Circuit inverse(n);
  const auto& gates = forward.gates();
  for (auto it = gates.rbegin(); it != gates.rend(); ++it) {
    GateOp g = *it;
    if (auto* cp = std::get_if<ControlledPhase>(&g)) cp->adjoint = !cp->adjoint;
    if (auto* ps = std::get_if<PhaseShift>(&g)) ps->adjoint = !ps->adjoint;
    inverse.add(g);
  }
  return inverse;
}

ComplexMatrix dft_matrix(int num_qubits) {
  if (num_qubits < 1 || num_qubits > kOracleMaxQubits) {
    throw Error(ErrorCode::OracleScaleExceeded,
                "DFT matrix limited to " + std::to_string(kOracleMaxQubits) + " qubits");
  }
  const std::size_t dim = std::size_t{1} << num_qubits;
  const double scale = 1.0 / std::sqrt(static_cast<double>(dim));
  ComplexMatrix f(dim);
  for (std::size_t y = 0; y < dim; ++y) {
    for (std::size_t x = 0; x < dim; ++x) {
      // Reduce x*y mod 2^n first so the angle stays in [0, 2 pi).
      const std::size_t k = (x * y) & (dim - 1);
      const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(dim);
      f(y, x) = std::polar(scale, angle);
    }
  }
  return f;
}

PhaseSample::PhaseSample(double gamma) : gamma_(gamma) {
  if (!(gamma >= 0.0 && gamma < 1.0)) {
    throw Error(ErrorCode::OutOfRange, "phase sample must lie in [0, 1)");
  }
}

StateVector phase_encode(PhaseSample gamma, int num_qubits, int max_qubits) {
  // Validates n and allocates.
  StateVector basis = StateVector::basis(num_qubits, 0, max_qubits);
  const std::size_t dim = basis.dimension();
  const double scale = 1.0 / std::sqrt(static_cast<double>(dim));
  std::vector<Complex> amps(dim);
  for (std::size_t x = 0; x < dim; ++x) {
    // Phase in turns, reduced mod 1; exact for dyadic gamma.
    double turns = gamma.value() * static_cast<double>(x);
    turns -= std::floor(turns);
    amps[x] = std::polar(scale, 2.0 * std::numbers::pi * turns);
  }
  return StateVector::from_amplitudes(std::move(amps), max_qubits);
}

PeakReadout peak_readout(const StateVector& state) {
  PeakReadout best;
  best.probability = -1.0;
  const auto amps = state.amplitudes();
  for (std::size_t i = 0; i < amps.size(); ++i) {
    const double p = std::norm(amps[i]);
    if (p > best.probability) best = {i, p};
  }
  return best;
}

}  // namespace spinwhiten
