#include "malsim/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace malsim {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master_seed, Stage stage, std::uint64_t environment,
                          std::uint64_t dynamics) {
  std::uint64_t h = splitmix64(master_seed ^ splitmix64(static_cast<std::uint64_t>(stage)));
  h = splitmix64(h ^ environment);
  h = splitmix64(h ^ dynamics);
  return h;
}

double RandomStream::exponential(double rate) {
  if (!(rate > 0.0)) throw std::invalid_argument("exponential: rate must be positive");
  return -std::log1p(-uniform01()) / rate;
}

std::uint64_t RandomStream::poisson(double mean) {
  if (mean < 0.0) throw std::invalid_argument("poisson: mean must be nonnegative");
  std::uint64_t count = 0;
  // Poisson(a+b) = Poisson(a) + Poisson(b); chunking keeps exp(-m) in range.
  while (mean > 500.0) {
    mean -= 500.0;
    const double limit = std::exp(-500.0);
    double p = 1.0;
    do {
      ++count;
      p *= uniform01();
    } while (p > limit);
    --count;
  }
  const double limit = std::exp(-mean);
  double p = 1.0;
  do {
    ++count;
    p *= uniform01();
  } while (p > limit);
  return count - 1;
}

}  // namespace malsim
