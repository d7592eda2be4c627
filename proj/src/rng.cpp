#include "spinwhiten/rng.hpp"

#include <cmath>
#include <numbers>

#include "spinwhiten/error.hpp"

namespace spinwhiten::rng {
namespace {

constexpr std::uint64_t mul_inverse(std::uint64_t a) noexcept {
  // Newton iteration for the inverse of an odd number mod 2^64.
  std::uint64_t x = a;
  for (int i = 0; i < 6; ++i) x *= 2 - a * x;
  return x;
}

constexpr std::uint64_t unxorshift(std::uint64_t z, int shift) noexcept {
  std::uint64_t x = z;
  for (int s = shift; s < 64; s += shift) x = z ^ (x >> shift);
  return x;
}

static_assert(mul_inverse(0xbf58476d1ce4e5b9ULL) * 0xbf58476d1ce4e5b9ULL == 1);
static_assert(unxorshift(0x123456789abcdef0ULL ^ (0x123456789abcdef0ULL >> 27), 27) ==
              0x123456789abcdef0ULL);

}  // namespace

std::uint64_t fmix64_inverse(std::uint64_t z) noexcept {
  z = unxorshift(z, 31);
  z *= mul_inverse(0x94d049bb133111ebULL);
  z = unxorshift(z, 27);
  z *= mul_inverse(0xbf58476d1ce4e5b9ULL);
  return unxorshift(z, 30);
}

std::complex<double> normal_pair(std::uint64_t seed, std::uint64_t k) noexcept {
  const double u1 = 1.0 - uniform(seed, 2 * k);  // (0, 1]
  const double u2 = uniform(seed, 2 * k + 1);
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  return {r * std::cos(theta), r * std::sin(theta)};
}

std::uint64_t seed_with_first_uniform(double u) {
  const double scaled = u * 0x1.0p53;
  if (!(u >= 0.0 && u < 1.0) || scaled != std::floor(scaled)) {
    throw Error(ErrorCode::InvalidArgument, "uniform value must be a multiple of 2^-53 in [0, 1)");
  }
  const std::uint64_t h = static_cast<std::uint64_t>(scaled) << 11;
  return fmix64_inverse(h) - kGolden;
}

}  // namespace spinwhiten::rng
