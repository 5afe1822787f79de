#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "brwre/rng.hpp"

namespace brwre {

enum class OffspringKind { Explicit, Geometric, BernoulliPair };

// A probability mass function on {0, 1, 2, ...} with finite mean.
// Three families are supported:
//   Explicit      - finite pmf p_0..p_K
//   Geometric     - P(k) = s (1-s)^k with s chosen so the mean matches
//   BernoulliPair - mass p0 at 0 and 1-p0 at a fixed k >= 1
class OffspringDistribution {
 public:
  static OffspringDistribution from_pmf(std::vector<double> pmf);
  static OffspringDistribution geometric(double mean);
  static OffspringDistribution bernoulli_pair(double p0, std::int64_t k);

  OffspringKind kind() const { return kind_; }
  double mean() const { return mean_; }
  double variance() const { return var_; }
  double p_zero() const;
  // True when all mass sits on exactly one child (the degenerate case the
  // ellipticity condition rules out at the law level).
  bool single_child_certain() const;

  const std::vector<double>& pmf() const { return pmf_; }
  double pair_p0() const { return p0_; }
  std::int64_t pair_k() const { return k_; }

  std::int64_t sample(RngStream& rng) const;
  // Sum of `count` i.i.d. draws: exact convolution up to exact_threshold,
  // matched-moment rounded normal (clamped at 0) above it.
  std::int64_t sample_sum(std::int64_t count, std::int64_t exact_threshold,
                          RngStream& rng) const;

  // Stable textual form, used for law hashing and diagnostics.
  std::string describe() const;

  bool operator==(const OffspringDistribution& other) const;

 private:
  OffspringDistribution() = default;

  OffspringKind kind_ = OffspringKind::Explicit;
  std::vector<double> pmf_;       // Explicit
  double geo_mean_ = 0.0;         // Geometric
  double p0_ = 0.0;               // BernoulliPair
  std::int64_t k_ = 0;            // BernoulliPair
  double mean_ = 0.0;
  double var_ = 0.0;
};

}  // namespace brwre
