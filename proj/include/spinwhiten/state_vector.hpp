#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <variant>
#include <vector>

namespace spinwhiten {

using Complex = std::complex<double>;

inline constexpr int kDefaultMaxQubits = 24;
/// Largest register any configuration may request.
inline constexpr int kHardMaxQubits = 30;
/// Largest register for which dense 2^n x 2^n matrices are built.
inline constexpr int kOracleMaxQubits = 10;

// Bit convention: qubit 0 is the most significant bit of the basis index,
// so qubit q of an n-qubit register lives at bit (n - 1 - q).

struct Hadamard {
  int qubit;
  bool operator==(const Hadamard&) const = default;
};

/// diag(1, e^{+-2 pi i / 2^m}); `adjoint` selects the minus sign.
struct PhaseShift {
  int qubit;
  int order;
  bool adjoint = false;
  bool operator==(const PhaseShift&) const = default;
};

/// Multiplies amplitudes with both control and target bits set by
/// e^{+-2 pi i / 2^m}.
struct ControlledPhase {
  int control;
  int target;
  int order;
  bool adjoint = false;
  bool operator==(const ControlledPhase&) const = default;
};

struct Swap {
  int first;
  int second;
  bool operator==(const Swap&) const = default;
};

using GateOp = std::variant<Hadamard, PhaseShift, ControlledPhase, Swap>;

/// Throws InvalidQubitIndex if `gate` does not fit an n-qubit register.
void validate_gate(const GateOp& gate, int num_qubits);

class Circuit {
 public:
  explicit Circuit(int num_qubits);

  Circuit& add(const GateOp& gate);

  int num_qubits() const noexcept { return num_qubits_; }
  const std::vector<GateOp>& gates() const noexcept { return gates_; }
  std::size_t size() const noexcept { return gates_.size(); }

 private:
  int num_qubits_;
  std::vector<GateOp> gates_;
};

/// Dense amplitude vector of an n-qubit register. Gates act in place with
/// stride arithmetic; no Kronecker products are formed.
class StateVector {
 public:
  /// Computational basis state |index>.
  static StateVector basis(int num_qubits, std::uint64_t index,
                           int max_qubits = kDefaultMaxQubits);

  /// Adopts `amps`; length must be 2^n and the norm 1 within 1e-9.
  static StateVector from_amplitudes(std::vector<Complex> amps,
                                     int max_qubits = kDefaultMaxQubits);

  int num_qubits() const noexcept { return num_qubits_; }
  std::size_t dimension() const noexcept { return amps_.size(); }
  std::span<const Complex> amplitudes() const noexcept { return amps_; }
  const Complex& operator[](std::size_t i) const { return amps_[i]; }

  double norm() const noexcept;

  void apply(const GateOp& gate);
  void apply(const Circuit& circuit);

  bool operator==(const StateVector&) const = default;

 private:
  StateVector(int num_qubits, std::vector<Complex> amps)
      : num_qubits_(num_qubits), amps_(std::move(amps)) {}

  int num_qubits_;
  std::vector<Complex> amps_;
};

StateVector new_state(int num_qubits, std::uint64_t basis_index,
                      int max_qubits = kDefaultMaxQubits);
StateVector apply_gate(StateVector state, const GateOp& gate);
StateVector apply_circuit(StateVector state, const Circuit& circuit);
std::vector<double> probabilities(const StateVector& state);

/// Row-major square complex matrix, used only at oracle scale.
class ComplexMatrix {
 public:
  explicit ComplexMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {}

  std::size_t dim() const noexcept { return dim_; }
  Complex& operator()(std::size_t row, std::size_t col) { return data_[row * dim_ + col]; }
  const Complex& operator()(std::size_t row, std::size_t col) const {
    return data_[row * dim_ + col];
  }

  static ComplexMatrix identity(std::size_t dim);
  ComplexMatrix adjoint() const;
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

 private:
  std::size_t dim_;
  std::vector<Complex> data_;
};

/// Max entrywise |a - b|. Dimensions must match.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
/// Max entrywise |U^dagger U - I|.
double unitarity_error(const ComplexMatrix& u);

/// Column x is apply_circuit(|x>). Throws OracleScaleExceeded above 10 qubits.
ComplexMatrix dense_matrix(const Circuit& circuit);

/// e^{2 pi i / 2^order} (conjugated when adjoint), exact for orders 0, 1, 2.
Complex root_of_unity(int order, bool adjoint = false);

}  // namespace spinwhiten
