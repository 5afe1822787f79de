#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "brwre/env_law.hpp"
#include "brwre/exec.hpp"
#include "brwre/rng.hpp"

namespace brwre {

struct SimParams {
  // Total-population cap; crossing it flags the field as saturated.
  std::int64_t cap = 1'000'000'000;
  // Per-site counts up to this limit branch by exact convolution of
  // offspring draws; larger counts use a matched-moment rounded normal.
  std::int64_t exact_threshold = 100'000;
};

// Sparse particle counts per site after `generation` steps.
struct ParticleField {
  std::map<std::int64_t, std::int64_t> counts;
  std::int64_t generation = 0;
  bool saturated = false;

  std::int64_t total() const;
  static ParticleField origin();  // one particle at site 0
};

// One synchronous generation: every particle branches by its site law, then
// each child moves right with the site drift or stays. Requires env to cover
// every occupied site.
ParticleField step(const ParticleField& field, const Environment& env,
                   const SimParams& params, RngStream& rng);

struct Trajectory {
  std::vector<std::int64_t> totals;  // Z_0 .. Z_T
  std::optional<std::int64_t> extinct_at;
  std::optional<std::int64_t> saturated_at;

  bool survived_to_end() const { return !totals.empty() && totals.back() > 0; }
};

// Runs from a single particle at the origin until `horizon`, stopping early
// at extinction or at the population cap.
Trajectory run(const Environment& env, std::int64_t horizon, const SimParams& params,
               RngStream& rng);

struct SurvivalEstimate {
  double estimate = 0;
  double ci_lo = 0;
  double ci_hi = 1;
  std::int64_t survivors = 0;
  std::int64_t replicas = 0;
  std::int64_t horizon = 0;
  // "alive at horizon" upper-bounds survival; stated explicitly in output.
  std::string proxy_note;
};

// Annealed estimate: each replica draws a fresh environment and fresh noise.
SurvivalEstimate survival_probability(const EnvironmentLaw& law, std::int64_t horizon,
                                      std::int64_t replicas, std::uint64_t seed,
                                      const SimParams& params = {},
                                      Exec exec = Exec::Parallel);

// Quenched variant: one fixed environment, fresh noise per replica.
SurvivalEstimate survival_probability(const Environment& env, std::int64_t horizon,
                                      std::int64_t replicas, std::uint64_t seed,
                                      const SimParams& params = {},
                                      Exec exec = Exec::Parallel);

struct EmbeddedSample {
  std::vector<std::int64_t> xi;  // xi_1 .. xi_k
  bool truncated = false;
  std::int64_t truncated_stage = -1;  // 1-based stage that exhausted the budget
};

// Stage-wise first-passage construction: run the population at site j-1 to
// local extinction, counting emigrants to site j as xi_j. `budget` bounds the
// generations spent waiting within one stage; exhausting it truncates the
// sample (expected only when some stay-and-branch mean is near or above 1).
EmbeddedSample embedded_first_passage(const Environment& env, std::int64_t k,
                                      RngStream& rng, std::int64_t budget = 1'000'000,
                                      const SimParams& params = {});

struct GrowthRateEstimate {
  std::vector<double> rates;  // least-squares slope per surviving replica
  double mean = 0;
  double std_error = 0;
  std::int64_t survivors = 0;
  std::int64_t replicas = 0;
  bool insufficient = false;  // fewer than 10 survivors
};

// Per-replica slope of log Z_n over the pre-saturation window [T/2, T],
// surviving replicas only. Throws InsufficientDataError with zero survivors.
GrowthRateEstimate empirical_growth_rate(const EnvironmentLaw& law, std::int64_t horizon,
                                         std::int64_t replicas, std::uint64_t seed,
                                         const SimParams& params = {},
                                         Exec exec = Exec::Parallel);

// Window regression used above; exposed for per-trajectory reporting.
// Returns nullopt when the window has fewer than two positive totals.
std::optional<double> trajectory_growth_rate(const Trajectory& t);

}  // namespace brwre
