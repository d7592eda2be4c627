#pragma once

#include <complex>
#include <cstdint>
#include <string_view>

// Counter-based random numbers. Every draw is a pure function of
// (seed, counter), so per-spin or per-sample values do not depend on
// iteration order or thread count.
//
//   mix(seed, k)   = fmix64(seed + (k + 1) * 0x9e3779b97f4a7c15)
//   uniform(h)     = (h >> 11) * 2^-53            in [0, 1)
//   derive(seed,t) = fmix64(seed ^ fmix64(t + 0x9e3779b97f4a7c15))
//
// fmix64 is the SplitMix64 output finalizer, so mix(seed, k) is exactly the
// k-th output of a SplitMix64 generator started at state `seed`.

namespace spinwhiten::rng {

inline constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

constexpr std::uint64_t fmix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Inverse of fmix64 (the finalizer is a bijection on 64-bit words).
std::uint64_t fmix64_inverse(std::uint64_t z) noexcept;

constexpr std::uint64_t mix(std::uint64_t seed, std::uint64_t counter) noexcept {
  return fmix64(seed + (counter + 1) * kGolden);
}

constexpr double to_unit(std::uint64_t h) noexcept {
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

constexpr double uniform(std::uint64_t seed, std::uint64_t counter) noexcept {
  return to_unit(mix(seed, counter));
}

constexpr std::uint64_t derive(std::uint64_t seed, std::uint64_t tag) noexcept {
  return fmix64(seed ^ fmix64(tag + kGolden));
}

/// FNV-1a, used to turn stream names ("acquire", target names) into tags.
constexpr std::uint64_t tag_of(std::string_view name) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : name) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Two independent standard normals from counters 2k and 2k+1 (Box-Muller),
/// returned as the real and imaginary parts.
std::complex<double> normal_pair(std::uint64_t seed, std::uint64_t k) noexcept;

/// Seed whose first draw uniform(seed, 0) equals `u` exactly. `u` must be a
/// multiple of 2^-53 in [0, 1); throws InvalidArgument otherwise.
std::uint64_t seed_with_first_uniform(double u);

/// Sequential view over a counter stream; satisfies UniformRandomBitGenerator.
class CounterStream {
 public:
  using result_type = std::uint64_t;

  explicit CounterStream(std::uint64_t seed, std::uint64_t start = 0) noexcept
      : seed_(seed), counter_(start) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return ~result_type{0}; }

  result_type operator()() noexcept { return mix(seed_, counter_++); }
  double next_uniform() noexcept { return to_unit((*this)()); }

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t counter() const noexcept { return counter_; }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_;
};

}  // namespace spinwhiten::rng
