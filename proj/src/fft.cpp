#include "spinwhiten/fft.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "spinwhiten/error.hpp"

namespace spinwhiten {

bool is_power_of_two(std::size_t n) noexcept { return std::has_single_bit(n); }

void fft_inplace(std::span<Complex> data, FftDirection direction) {
  const std::size_t n = data.size();
  if (!is_power_of_two(n)) {
    throw Error(ErrorCode::NotPowerOfTwo, "FFT length " + std::to_string(n) + " is not a power of two");
  }
  if (n == 1) return;

  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(data[i], data[j]);
  }

  // Twiddles for the largest pass; smaller passes stride through them.
  const double sign = direction == FftDirection::Forward ? -1.0 : 1.0;
  std::vector<Complex> twiddle(n / 2);
  for (std::size_t k = 0; k < n / 2; ++k) {
    twiddle[k] = std::polar(1.0, sign * 2.0 * std::numbers::pi * static_cast<double>(k) /
                                     static_cast<double>(n));
  }

  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len / 2;
    const std::size_t step = n / len;
    for (std::size_t base = 0; base < n; base += len) {
      for (std::size_t k = 0; k < half; ++k) {
        const Complex w = twiddle[k * step];
        const Complex v = data[base + k + half];
        const Complex t{w.real() * v.real() - w.imag() * v.imag(),
                        w.real() * v.imag() + w.imag() * v.real()};
        const Complex u = data[base + k];
        data[base + k] = u + t;
        data[base + k + half] = u - t;
      }
    }
  }

  if (direction == FftDirection::Inverse) {
    const double scale = 1.0 / static_cast<double>(n);
    for (Complex& z : data) z *= scale;
  }
}

}  // namespace spinwhiten
