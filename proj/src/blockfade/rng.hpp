#pragma once
// Deterministic random number utilities. All stochastic behaviour in the
// library flows through Rng so that a (seed -> output) mapping is stable
// across platforms: uniforms come from fixed bit manipulation of
// mt19937_64 words and normals from the AS241 quantile, never from
// std::distribution wrappers (whose algorithms are implementation-defined).

#include <cstdint>
#include <random>

namespace blockfade {

// Inverse standard normal CDF, AS241 (PPND16), accurate to ~1e-16.
double normal_quantile(double p);

// Standard normal CDF.
double normal_cdf(double z);

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  // Uniform on [0, 1): 53 top bits of one generator word.
  double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  // Uniform on (0, 1): safe for quantile transforms.
  double uniform_open() {
    return (static_cast<double>(gen_() >> 11) + 0.5) * 0x1.0p-53;
  }

  double normal() { return normal_quantile(uniform_open()); }

  // Exponential with the given rate (per unit), via inverse CDF.
  double exponential(double rate) { return -std::log1p(-uniform01()) / rate; }

  std::uint64_t raw() { return gen_(); }

 private:
  std::mt19937_64 gen_;
};

}  // namespace blockfade
