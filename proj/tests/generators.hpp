#pragma once

// Hand-rolled generators for property tests.

#include <cmath>
#include <vector>

#include "spinwhiten/qft.hpp"
#include "spinwhiten/rng.hpp"
#include "spinwhiten/state_vector.hpp"

namespace gen {

inline spinwhiten::StateVector random_state(int n, std::uint64_t seed) {
  std::vector<spinwhiten::Complex> amps(std::size_t{1} << n);
  double sum = 0.0;
  for (std::size_t i = 0; i < amps.size(); ++i) {
    amps[i] = spinwhiten::rng::normal_pair(seed, i);
    sum += std::norm(amps[i]);
  }
  for (auto& a : amps) a /= std::sqrt(sum);
  return spinwhiten::StateVector::from_amplitudes(std::move(amps));
}

inline spinwhiten::GateOp random_gate(int n, spinwhiten::rng::CounterStream& s) {
  auto pick = [&](int bound) { return static_cast<int>(s() % static_cast<std::uint64_t>(bound)); };
  const int kind = n == 1 ? pick(2) : pick(4);
  const int a = pick(n);
  int b = pick(n);
  if (n > 1) {
    while (b == a) b = pick(n);
  }
  const int order = 1 + pick(6);
  const bool adjoint = pick(2) == 1;
  switch (kind) {
    case 0: return spinwhiten::Hadamard{a};
    case 1: return spinwhiten::PhaseShift{a, order, adjoint};
    case 2: return spinwhiten::ControlledPhase{a, b, order, adjoint};
    default: return spinwhiten::Swap{a, b};
  }
}

inline spinwhiten::Circuit random_circuit(int n, int gates, std::uint64_t seed) {
  spinwhiten::rng::CounterStream s(seed);
  spinwhiten::Circuit c(n);
  for (int i = 0; i < gates; ++i) c.add(random_gate(n, s));
  return c;
}

inline double max_diff(const spinwhiten::StateVector& a, const spinwhiten::StateVector& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.dimension(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

}  // namespace gen
