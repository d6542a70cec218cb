#pragma once

#include <cstdint>
#include <random>

namespace malsim {

/// SplitMix64 finalizer; the building block of the seed derivation scheme.
std::uint64_t splitmix64(std::uint64_t x);

enum class Stage : std::uint64_t {
  Streets = 1,
  Devices = 2,
  Knights = 3,
  Dynamics = 4,
};

/// Seed derivation, scheme version 1 (stable across releases):
///   h = splitmix64(master ^ splitmix64(stage))
///   h = splitmix64(h ^ environment)
///   h = splitmix64(h ^ dynamics)
/// `environment` may pack a grid-point index in its high 32 bits (see runner).
std::uint64_t derive_seed(std::uint64_t master_seed, Stage stage, std::uint64_t environment,
                          std::uint64_t dynamics);

inline constexpr int kSeedDerivationVersion = 1;

/// Deterministic random stream. All samplers are implemented explicitly on top
/// of the fully specified mt19937_64 sequence, so identical seeds give
/// identical draws on every platform and release.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next_u64() { return eng_(); }

  /// Uniform on [0, 1), 53-bit resolution.
  double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * uniform01(); }

  /// Exponential with the given rate (rate > 0).
  double exponential(double rate);

  /// Poisson sample; exact for all means (chunked inversion).
  std::uint64_t poisson(double mean);

 private:
  std::mt19937_64 eng_;
};

}  // namespace malsim
