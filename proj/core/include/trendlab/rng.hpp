#pragma once

#include <cmath>
#include <cstdint>

namespace trendlab::sim {

// Portable seeded generator: xoshiro256++ state-initialized from SplitMix64.
// Per-realization streams are derived from (master seed, stream index) by
// pure counter arithmetic, so stream k's output never depends on how many
// other streams were created or in which order they run. Gaussians come
// from a Box-Muller pair cache; nothing here delegates to implementation-
// defined std:: distributions, so identical seeds give identical series on
// every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : Rng(seed, 0) {}

  Rng(std::uint64_t master_seed, std::uint64_t stream_index) {
    std::uint64_t x = master_seed + stream_index * 4 * kGamma;
    for (auto& word : state_) {
      x += kGamma;
      word = mix(x);
    }
  }

  // Deterministic per-stream seed for APIs that take a single seed value.
  static std::uint64_t stream_seed(std::uint64_t master_seed,
                                   std::uint64_t stream_index) {
    return mix(master_seed + (stream_index + 1) * kGamma);
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform in [0, 1).
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Standard normal via Box-Muller; the second value of each pair is cached.
  double next_gaussian() {
    if (has_cached_) {
      has_cached_ = false;
      return cached_;
    }
    double u1;
    do {
      u1 = next_double();
    } while (u1 <= 0.0);
    const double u2 = next_double();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * kPi * u2;
    cached_ = radius * std::sin(angle);
    has_cached_ = true;
    return radius * std::cos(angle);
  }

 private:
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;
  static constexpr double kPi = 3.141592653589793238462643383279502884;

  static constexpr std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  // SplitMix64 output function.
  static constexpr std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t state_[4] = {};
  double cached_ = 0.0;
  bool has_cached_ = false;
};

}  // namespace trendlab::sim
