#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "brwre/env_law.hpp"
#include "brwre/exec.hpp"

namespace brwre {

// Row n of the quenched expectation table: log E[eta_n(site)] for one fixed
// environment, for a process started with one particle at `start`. Sites
// outside [start, start + horizon] carry no mass.
struct MomentProfile {
  std::int64_t horizon = 0;
  std::int64_t start = 0;
  std::vector<double> log_values;  // index i -> site start + i; -inf allowed
  std::string env_ref;

  double log_value_at(std::int64_t site) const;
};

// Exact log-space dynamic program over the two incoming branches
// (move from site-1, stay at site). Requires env to cover sites
// start .. start + n.
MomentProfile expected_profile(const Environment& env, std::int64_t n,
                               std::int64_t start = 0, Exec exec = Exec::Serial);

// log E[Z_n]: log-sum-exp over row n.
double expected_total(const Environment& env, std::int64_t n);

struct FeynmanKacEstimate {
  double log_total = 0;   // log of the sample mean of the walk-product
  double std_error = 0;   // delta-method standard error of the log
};

// Independent Monte Carlo route to expected_total: averages the product of
// site means along delayed-right random walks.
FeynmanKacEstimate feynman_kac_total(const Environment& env, std::int64_t n,
                                     std::int64_t walkers, std::uint64_t seed,
                                     Exec exec = Exec::Parallel);

struct GrowthPoint {
  double x = 0;             // requested grid fraction
  std::int64_t site = 0;    // realized lattice site floor(x * n)
  double beta_hat = 0;
  double std_error = 0;
};

struct GrowthProfile {
  std::vector<GrowthPoint> grid;
  std::int64_t n_used = 0;
  std::int64_t replicas = 0;
  // Per-replica values (replicas x grid), kept for correlated diagnostics.
  std::vector<std::vector<double>> samples;
};

// Finite-n estimate of the growth profile: mean over replicas of
// (1/n) log E[eta_n(floor(x n))], each replica drawing a fresh environment.
// Requires the strong ellipticity condition and grid points in [gamma, 1].
GrowthProfile estimate_beta(const EnvironmentLaw& law, const std::vector<double>& grid,
                            std::int64_t n, std::int64_t replicas, std::uint64_t seed,
                            Exec exec = Exec::Parallel, double gamma = 0.1);

// Finite-n convergence diagnostic: the same estimate at horizons n and 2n.
// `shift` is the per-point change; a large shift flags an unconverged grid
// point, no convergence claim is made either way.
struct BetaDiagnostic {
  GrowthProfile at_n;
  GrowthProfile at_2n;
  std::vector<double> shift;  // beta_hat(2n) - beta_hat(n)
};

BetaDiagnostic beta_convergence_diagnostic(const EnvironmentLaw& law,
                                           const std::vector<double>& grid,
                                           std::int64_t n, std::int64_t replicas,
                                           std::uint64_t seed,
                                           Exec exec = Exec::Parallel,
                                           double gamma = 0.1);

struct BetaMax {
  double x_star = 0;
  double beta_star = 0;
};

// Maximum over the estimated grid plus the analytic x = 0 endpoint
// (log of the law's best stay-and-branch mean). Ties go to smaller x.
BetaMax max_beta(const GrowthProfile& profile, const EnvironmentLaw& law);

struct BetaEndpoints {
  double at_zero = 0;  // log Lambda
  double at_one = 0;   // E[log(mean * drift)]
};
BetaEndpoints analytic_beta_endpoints(const EnvironmentLaw& law);

}  // namespace brwre
