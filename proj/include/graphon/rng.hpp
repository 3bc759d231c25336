#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace graphon {

// Seedable 64-bit generator used by every stochastic operation.  The
// mt19937_64 engine sequence is pinned by the C++ standard; the
// distributions below are hand-rolled on top of the raw draws so that
// results are bit-identical across standard libraries as well.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t raw() { return engine_(); }

  // Uniform on the open interval (0,1): 53-bit mantissa draw, exact zeros
  // redrawn.
  double uniform01() {
    for (;;) {
      const double x = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
      if (x > 0.0) return x;
    }
  }

  // Standard normal via Box-Muller; the second value of each pair is cached.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double r = std::sqrt(-2.0 * std::log(uniform01()));
    const double t = kTwoPi * uniform01();
    spare_ = r * std::sin(t);
    have_spare_ = true;
    return r * std::cos(t);
  }

  bool bernoulli(double p) { return uniform01() < p; }

  // Uniform integer in [0, n), rejection sampled to stay unbiased.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = ~std::uint64_t{0} - ~std::uint64_t{0} % n;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % n;
  }

 private:
  static constexpr double kTwoPi = 6.28318530717958647692;
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

// Derives an independent stream seed, e.g. per EM iteration or replicate.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace graphon
