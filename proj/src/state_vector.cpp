#include "spinwhiten/state_vector.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <string>

#include "spinwhiten/error.hpp"

namespace spinwhiten {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void check_qubit_count(int num_qubits, int max_qubits) {
  const int limit = std::min(max_qubits, kHardMaxQubits);
  if (num_qubits < 1 || num_qubits > limit) {
    throw Error(ErrorCode::QubitCountExceeded,
                "register of " + std::to_string(num_qubits) + " qubits outside [1, " +
                    std::to_string(limit) + "]");
  }
}

void check_index(int qubit, int num_qubits) {
  if (qubit < 0 || qubit >= num_qubits) {
    throw Error(ErrorCode::InvalidQubitIndex,
                "qubit " + std::to_string(qubit) + " out of range for " +
                    std::to_string(num_qubits) + "-qubit register");
  }
}

void check_order(int order) {
  if (order < 1) {
    throw Error(ErrorCode::InvalidArgument, "phase order must be positive");
  }
}

std::size_t bit_of(int qubit, int num_qubits) {
  return std::size_t{1} << (num_qubits - 1 - qubit);
}

void apply_hadamard(std::vector<Complex>& amps, std::size_t stride) {
  constexpr double r = std::numbers::sqrt2 / 2.0;
  const std::size_t dim = amps.size();
  for (std::size_t base = 0; base < dim; base += 2 * stride) {
    for (std::size_t i = base; i < base + stride; ++i) {
      const Complex a = amps[i];
      const Complex b = amps[i + stride];
      amps[i] = (a + b) * r;
      amps[i + stride] = (a - b) * r;
    }
  }
}

void apply_diagonal_phase(std::vector<Complex>& amps, std::size_t mask, Complex phase) {
  const std::size_t dim = amps.size();
  // Visit only indices with every mask bit set: i = mask | j for j disjoint from mask.
  for (std::size_t j = 0; j < dim; j = ((j | mask) + 1) & ~mask) {
    amps[j | mask] *= phase;
  }
}

void apply_swap(std::vector<Complex>& amps, std::size_t bit_a, std::size_t bit_b) {
  const std::size_t dim = amps.size();
  for (std::size_t i = 0; i < dim; ++i) {
    // Each pair is visited once, from the index with bit_a set and bit_b clear.
    if ((i & bit_a) && !(i & bit_b)) {
      std::swap(amps[i], amps[(i & ~bit_a) | bit_b]);
    }
  }
}

}  // namespace

Complex root_of_unity(int order, bool adjoint) {
  check_order(order);
  Complex w;
  switch (order) {
    case 1: w = {-1.0, 0.0}; break;
    case 2: w = {0.0, 1.0}; break;
    default: w = std::polar(1.0, std::ldexp(2.0 * std::numbers::pi, -order)); break;
  }
  return adjoint ? std::conj(w) : w;
}

void validate_gate(const GateOp& gate, int num_qubits) {
  std::visit(Overloaded{
                 [&](const Hadamard& g) { check_index(g.qubit, num_qubits); },
                 [&](const PhaseShift& g) {
                   check_index(g.qubit, num_qubits);
                   check_order(g.order);
                 },
                 [&](const ControlledPhase& g) {
                   check_index(g.control, num_qubits);
                   check_index(g.target, num_qubits);
                   check_order(g.order);
                   if (g.control == g.target) {
                     throw Error(ErrorCode::InvalidQubitIndex, "control equals target");
                   }
                 },
                 [&](const Swap& g) {
                   check_index(g.first, num_qubits);
                   check_index(g.second, num_qubits);
                   if (g.first == g.second) {
                     throw Error(ErrorCode::InvalidQubitIndex, "swap of a qubit with itself");
                   }
                 },
             },
             gate);
}

Circuit::Circuit(int num_qubits) : num_qubits_(num_qubits) {
  check_qubit_count(num_qubits, kHardMaxQubits);
}

Circuit& Circuit::add(const GateOp& gate) {
  validate_gate(gate, num_qubits_);
  gates_.push_back(gate);
  return *this;
}

StateVector StateVector::basis(int num_qubits, std::uint64_t index, int max_qubits) {
  check_qubit_count(num_qubits, max_qubits);
  const std::size_t dim = std::size_t{1} << num_qubits;
  if (index >= dim) {
    throw Error(ErrorCode::IndexOutOfRange,
                "basis index " + std::to_string(index) + " >= 2^" + std::to_string(num_qubits));
  }
  std::vector<Complex> amps(dim);
  amps[index] = 1.0;
  return StateVector(num_qubits, std::move(amps));
}

StateVector StateVector::from_amplitudes(std::vector<Complex> amps, int max_qubits) {
  const std::size_t dim = amps.size();
  if (dim < 2 || (dim & (dim - 1)) != 0) {
    throw Error(ErrorCode::InvalidArgument, "amplitude count must be a power of two >= 2");
  }
  const int n = std::countr_zero(dim);
  check_qubit_count(n, max_qubits);
  double sum = 0.0;
  for (const Complex& a : amps) {
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
      throw Error(ErrorCode::InvalidArgument, "non-finite amplitude");
    }
    sum += std::norm(a);
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw Error(ErrorCode::InvalidArgument, "amplitudes are not normalized");
  }
  return StateVector(n, std::move(amps));
}

double StateVector::norm() const noexcept {
  double sum = 0.0;
  for (const Complex& a : amps_) sum += std::norm(a);
  return std::sqrt(sum);
}

void StateVector::apply(const GateOp& gate) {
  validate_gate(gate, num_qubits_);
  const int n = num_qubits_;
  std::visit(Overloaded{
                 [&](const Hadamard& g) { apply_hadamard(amps_, bit_of(g.qubit, n)); },
                 [&](const PhaseShift& g) {
                   apply_diagonal_phase(amps_, bit_of(g.qubit, n),
                                        root_of_unity(g.order, g.adjoint));
                 },
                 [&](const ControlledPhase& g) {
                   apply_diagonal_phase(amps_, bit_of(g.control, n) | bit_of(g.target, n),
                                        root_of_unity(g.order, g.adjoint));
                 },
                 [&](const Swap& g) {
                   apply_swap(amps_, bit_of(g.first, n), bit_of(g.second, n));
                 },
             },
             gate);
}

void StateVector::apply(const Circuit& circuit) {
  if (circuit.num_qubits() != num_qubits_) {
    throw Error(ErrorCode::QubitCountMismatch,
                "circuit has " + std::to_string(circuit.num_qubits()) + " qubits, state has " +
                    std::to_string(num_qubits_));
  }
  for (const GateOp& g : circuit.gates()) apply(g);
}

StateVector new_state(int num_qubits, std::uint64_t basis_index, int max_qubits) {
  return StateVector::basis(num_qubits, basis_index, max_qubits);
}

StateVector apply_gate(StateVector state, const GateOp& gate) {
  state.apply(gate);
  return state;
}

StateVector apply_circuit(StateVector state, const Circuit& circuit) {
  state.apply(circuit);
  return state;
}

std::vector<double> probabilities(const StateVector& state) {
  std::vector<double> p;
  p.reserve(state.dimension());
  for (const Complex& a : state.amplitudes()) p.push_back(std::norm(a));
  return p;
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
  ComplexMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix m(dim_);
  for (std::size_t r = 0; r < dim_; ++r)
    for (std::size_t c = 0; c < dim_; ++c) m(c, r) = std::conj((*this)(r, c));
  return m;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) throw Error(ErrorCode::LengthMismatch, "matrix dimensions differ");
  const std::size_t d = a.dim();
  ComplexMatrix m(d);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t k = 0; k < d; ++k) {
      const Complex ark = a(r, k);
      for (std::size_t c = 0; c < d; ++c) m(r, c) += ark * b(k, c);
    }
  return m;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) throw Error(ErrorCode::LengthMismatch, "matrix dimensions differ");
  double worst = 0.0;
  for (std::size_t r = 0; r < a.dim(); ++r)
    for (std::size_t c = 0; c < a.dim(); ++c) worst = std::max(worst, std::abs(a(r, c) - b(r, c)));
  return worst;
}

double unitarity_error(const ComplexMatrix& u) {
  return max_abs_diff(u.adjoint() * u, ComplexMatrix::identity(u.dim()));
}

ComplexMatrix dense_matrix(const Circuit& circuit) {
  const int n = circuit.num_qubits();
  if (n > kOracleMaxQubits) {
    throw Error(ErrorCode::OracleScaleExceeded,
                "dense matrix limited to " + std::to_string(kOracleMaxQubits) + " qubits");
  }
  const std::size_t dim = std::size_t{1} << n;
  ComplexMatrix m(dim);
  for (std::size_t x = 0; x < dim; ++x) {
    StateVector column = StateVector::basis(n, x, kOracleMaxQubits);
    column.apply(circuit);
    for (std::size_t y = 0; y < dim; ++y) m(y, x) = column[y];
  }
  return m;
}

}  // namespace spinwhiten
