#include "spinwhiten/ensemble.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <numbers>

#include "spinwhiten/error.hpp"
#include "spinwhiten/rng.hpp"

namespace spinwhiten {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kHbar = 1.054571817e-34;      // J s
constexpr double kBoltzmann = 1.380649e-23;    // J/K
constexpr double kDensityTolerance = 1e-12;

// Quadrant reduction plus minimax kernels on [-pi/4, pi/4]; about 1 ulp.
constexpr double kTwoOverPi = 6.36619772367581382433e-01;
constexpr double kPio2Hi = 1.57079632673412561417e+00;
constexpr double kPio2Lo = 6.07710050650619224932e-11;

inline double kernel_sin(double r, double z) {
  constexpr double s1 = -1.66666666666666324348e-01, s2 = 8.33333333332248946124e-03,
                   s3 = -1.98412698298579493134e-04, s4 = 2.75573137070700676789e-06,
                   s5 = -2.50507602534068634195e-08, s6 = 1.58969099521155010221e-10;
  const double tail = s2 + z * (s3 + z * (s4 + z * (s5 + z * s6)));
  return r + z * r * (s1 + z * tail);
}

inline double kernel_cos(double z) {
  constexpr double c1 = 4.16666666666666019037e-02, c2 = -1.38888888888741095749e-03,
                   c3 = 2.48015872894767294178e-05, c4 = -2.75573143513906633035e-07,
                   c5 = 2.08757232129817482790e-09, c6 = -1.13596475577881948265e-11;
  const double tail = z * (c1 + z * (c2 + z * (c3 + z * (c4 + z * (c5 + z * c6)))));
  const double hz = 0.5 * z;
  const double w = 1.0 - hz;
  return w + (((1.0 - w) - hz) + z * tail);
}

}  // namespace

Complex unit_phasor(double phase) {
  if (!(std::abs(phase) < 1e6)) return {std::cos(phase), std::sin(phase)};
  constexpr double kRoundShift = 0x1.8p52;
  const double q = (phase * kTwoOverPi + kRoundShift) - kRoundShift;
  const double r = (phase - q * kPio2Hi) - q * kPio2Lo;
  const double z = r * r;
  const double s = kernel_sin(r, z);
  const double c = kernel_cos(z);
  const auto quadrant = static_cast<std::uint64_t>(static_cast<std::int64_t>(q));
  const std::uint64_t cs = std::bit_cast<std::uint64_t>(c);
  const std::uint64_t sn = std::bit_cast<std::uint64_t>(s);
  const std::uint64_t swap = (cs ^ sn) & (0 - (quadrant & 1));
  const std::uint64_t flip_re = ((quadrant + 1) & 2) << 62;
  const std::uint64_t flip_im = (quadrant & 2) << 62;
  return {std::bit_cast<double>(cs ^ swap ^ flip_re), std::bit_cast<double>(sn ^ swap ^ flip_im)};
}

SpinEnsemble::SpinEnsemble(std::size_t count, std::uint64_t seed)
    : spins_(count), seed_(seed) {
  if (count == 0) throw Error(ErrorCode::EmptyInput, "ensemble needs at least one spin");
}

SpinEnsemble pulse90(SpinEnsemble ensemble) {
  for (SpinState& s : ensemble.spins()) {
    if (s.orientation == Orientation::Longitudinal) s = {Orientation::Transverse, 0.0};
  }
  return ensemble;
}

WhitenResult gz_whiten(SpinEnsemble ensemble) {
  auto& spins = ensemble.spins();
  for (std::size_t k = 0; k < spins.size(); ++k) {
    if (spins[k].orientation != Orientation::Transverse) {
      throw Error(ErrorCode::NotTransverse,
                  "spin " + std::to_string(k) + " is longitudinal; apply pulse90 first");
    }
  }
  std::vector<double> gammas(spins.size());
  const std::uint64_t seed = ensemble.seed();
  for (std::size_t k = 0; k < spins.size(); ++k) {
    const double gamma = rng::uniform(seed, k);
    double phase = kTwoPi * gamma;
    // 2 pi (1 - 2^-53) can round up to 2 pi.
    if (phase >= kTwoPi) phase = std::nextafter(kTwoPi, 0.0);
    gammas[k] = gamma;
    spins[k].phase = phase;
  }
  return {std::move(ensemble), std::move(gammas)};
}

Complex receiver_signal(const SpinEnsemble& ensemble) {
  double re = 0.0;
  double im = 0.0;
  for (const SpinState& s : ensemble.spins()) {
    if (s.orientation != Orientation::Transverse) continue;
    const Complex z = unit_phasor(s.phase);
    re += z.real();
    im += z.imag();
  }
  const double m = static_cast<double>(ensemble.size());
  return {re / m, im / m};
}

QubitDensity::QubitDensity(const std::array<Complex, 4>& row_major) : m_(row_major) {
  for (const Complex& z : m_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw Error(ErrorCode::InvalidArgument, "density matrix has non-finite entry");
    }
  }
  if (std::abs(m_[0].imag()) > kDensityTolerance || std::abs(m_[3].imag()) > kDensityTolerance ||
      std::abs(m_[1] - std::conj(m_[2])) > kDensityTolerance) {
    throw Error(ErrorCode::InvalidArgument, "density matrix is not Hermitian");
  }
  const double a = m_[0].real();
  const double d = m_[3].real();
  if (std::abs(a + d - 1.0) > kDensityTolerance) {
    throw Error(ErrorCode::InvalidArgument, "density matrix trace is not 1");
  }
  // Eigenvalues of [[a, b], [b*, d]]: (a + d)/2 +- sqrt(((a - d)/2)^2 + |b|^2).
  const double half_gap = std::hypot((a - d) / 2.0, std::abs(m_[1]));
  if ((a + d) / 2.0 - half_gap < -kDensityTolerance) {
    throw Error(ErrorCode::InvalidArgument, "density matrix is not positive semidefinite");
  }
}

QubitDensity dephase(const QubitDensity& rho) {
  return QubitDensity({rho(0, 0), Complex{}, Complex{}, rho(1, 1)});
}

double thermal_polarization(double field_tesla, double temperature_kelvin,
                            double gyromagnetic_ratio) {
  if (!(field_tesla > 0.0) || !(temperature_kelvin > 0.0) || !(gyromagnetic_ratio > 0.0)) {
    throw Error(ErrorCode::NonPositiveInput, "field, temperature and gyromagnetic ratio must be > 0");
  }
  return std::tanh(kHbar * gyromagnetic_ratio * field_tesla /
                   (2.0 * kBoltzmann * temperature_kelvin));
}

}  // namespace spinwhiten
