#pragma once

#include <cstdint>

namespace brwre {

inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Counter-based sub-stream key. Distinct (seed, index) pairs give
// decorrelated streams, so sites, replicas and walkers can each own an
// independent stream that does not depend on evaluation order.
constexpr std::uint64_t derive_key(std::uint64_t seed, std::uint64_t index) {
  return mix64(seed + kGoldenGamma * (index + 1));
}

constexpr std::uint64_t derive_key(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  return derive_key(derive_key(seed, a), b);
}

// Deterministic SplitMix64 stream. Cheap to construct, so one stream per
// site/replica is the normal usage pattern.
class RngStream {
 public:
  explicit RngStream(std::uint64_t key) : state_(mix64(key ^ kGoldenGamma)) {}
  RngStream(std::uint64_t seed, std::uint64_t index) : RngStream(derive_key(seed, index)) {}

  std::uint64_t next_u64() {
    state_ += kGoldenGamma;
    return mix64(state_);
  }

  // Uniform in [0, 1).
  double next_unit() { return double(next_u64() >> 11) * 0x1.0p-53; }

  bool next_bernoulli(double p) { return next_unit() < p; }

  // Standard normal via Box-Muller, one variate per call.
  double next_normal();

  // Binomial(n, p): exact Bernoulli convolution up to exact_threshold trials,
  // matched-moment rounded normal above it (clamped to [0, n]).
  std::int64_t next_binomial(std::int64_t n, double p, std::int64_t exact_threshold);

 private:
  std::uint64_t state_;
};

}  // namespace brwre
