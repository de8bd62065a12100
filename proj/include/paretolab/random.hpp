#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace paretolab {

// SplitMix64 finalizer. Used to derive independent child seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Child seed for stream `index` of `master`. Distinct indices give
// decorrelated streams; the mapping is fixed across platforms.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept {
  return splitmix64(master ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

// Thin wrapper around mt19937_64. All distributions are implemented here
// instead of using <random> distributions, whose algorithms are
// implementation-defined; this keeps seeded outputs identical across
// standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1) with 53 bits of resolution.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform on {0, ..., bound - 1}; bound must be positive.
  std::uint64_t uniform_index(std::uint64_t bound) {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t draw = engine_();
    while (draw >= limit) draw = engine_();
    return draw % bound;
  }

  bool coin() { return (engine_() >> 63) != 0; }

  // Rademacher sign.
  double sign() { return coin() ? 1.0 : -1.0; }

  // Standard normal via Box-Muller (one variate per call).
  double normal() {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  // Standard exponential; used for flat-Dirichlet simplex sampling.
  double exponential() {
    double u = uniform();
    while (u <= 0.0) u = uniform();
    return -std::log(u);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace paretolab
