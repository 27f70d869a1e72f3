#pragma once

#include <cstdint>

namespace pprd {

// Splittable 64-bit generator based on the SplitMix64 finalizer.
// Sub-streams are derived deterministically from (seed, stream index), so
// parallel Monte Carlo runs are reproducible: split(i) yields the same
// stream on every run for a fixed top-level seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(mix(seed ^ 0x9e3779b97f4a7c15ull)) {}

  // Independent sub-stream indexed by `stream`.
  Rng split(std::uint64_t stream) const {
    return Rng(mix(state_ + (stream + 1) * 0xbf58476d1ce4e5b9ull));
  }

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ull;
    return mix(state_);
  }

  // Uniform in [0, 1), 53-bit resolution.
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, n), n >= 1. Rejection to avoid modulo bias.
  std::uint64_t next_below(std::uint64_t n) {
    const std::uint64_t limit = n * ((~0ull) / n);
    std::uint64_t x;
    do {
      x = next_u64();
    } while (x >= limit);
    return x % n;
  }

  // Standard normal via Box-Muller; the second value is cached.
  double next_normal();

  // Poisson draw. Inversion (CDF walk) for mean <= 30; larger means are
  // split in half and summed, which is exact by Poisson additivity.
  std::uint64_t next_poisson(double mean);

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ull;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebull;
    z ^= z >> 31;
    return z;
  }

  std::uint64_t state_;
  double spare_normal_ = 0.0;
  bool has_spare_normal_ = false;
};

}  // namespace pprd
