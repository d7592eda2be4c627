#pragma once

#include <span>

#include "spinwhiten/state_vector.hpp"

namespace spinwhiten {

enum class FftDirection { Forward, Inverse };

/// In-place iterative radix-2 FFT (bit-reversal permutation followed by
/// butterfly passes). Forward is unnormalized,
///   X(k) = sum_j x(j) e^{-2 pi i j k / L},
/// the inverse uses e^{+...} and carries the 1/L factor.
/// Throws NotPowerOfTwo unless data.size() is 2^k with k >= 0.
void fft_inplace(std::span<Complex> data, FftDirection direction);

bool is_power_of_two(std::size_t n) noexcept;

}  // namespace spinwhiten
