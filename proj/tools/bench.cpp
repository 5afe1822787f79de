// Timing harness for the replica/walker kernels: runs each once serially and
// once under OpenMP and reports the speedup. The two paths must agree
// bit-for-bit; a mismatch is reported as FAIL.

#include <chrono>
#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#include "brwre/criteria.hpp"
#include "brwre/env_law.hpp"
#include "brwre/exec.hpp"
#include "brwre/moments.hpp"
#include "brwre/particle_sim.hpp"

using namespace brwre;

namespace {

double now_ms() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double, std::milli>(clock::now().time_since_epoch()).count();
}

struct Row {
  std::string name;
  double serial_ms;
  double parallel_ms;
  bool equal;
};

template <typename Fn>
Row bench(const std::string& name, Fn&& fn) {
  const double t0 = now_ms();
  auto serial = fn(Exec::Serial);
  const double t1 = now_ms();
  auto parallel = fn(Exec::Parallel);
  const double t2 = now_ms();
  return {name, t1 - t0, t2 - t1, serial == parallel};
}

EnvironmentLaw two_atom_law() {
  return EnvironmentLaw::atomic(
      {{OffspringDistribution::from_pmf({0.0, 0.0, 1.0}), 0.5, 0.5},
       {OffspringDistribution::from_pmf({2.0 / 3.0, 0.0, 1.0 / 3.0}), 0.5, 0.5}},
      0.1);
}

}  // namespace

int main(int argc, char** argv) {
  const bool quick = argc > 1 && std::strcmp(argv[1], "--quick") == 0;
  const int threads = configure_threads();
  std::printf("threads=%d mode=%s\n", threads, quick ? "quick" : "full");

  const EnvironmentLaw law = two_atom_law();
  const std::int64_t dp_n = quick ? 256 : 2000;
  const std::int64_t fk_n = quick ? 20 : 40;
  const std::int64_t fk_walkers = quick ? 20'000 : 400'000;
  const std::int64_t beta_n = quick ? 60 : 250;
  const std::int64_t beta_reps = quick ? 8 : 64;
  const std::int64_t surv_reps = quick ? 2'000 : 40'000;

  const Environment dp_env = sample_environment(law, dp_n + 1, 7);
  const Environment fk_env = sample_environment(law, fk_n + 1, 7);

  std::vector<Row> rows;
  rows.push_back(bench("expected_profile(n=" + std::to_string(dp_n) + ")", [&](Exec e) {
    return expected_profile(dp_env, dp_n, 0, e).log_values;
  }));
  rows.push_back(bench("feynman_kac(n=" + std::to_string(fk_n) + ",w=" +
                           std::to_string(fk_walkers) + ")",
                       [&](Exec e) {
                         const FeynmanKacEstimate est =
                             feynman_kac_total(fk_env, fk_n, fk_walkers, 11, e);
                         return std::pair(est.log_total, est.std_error);
                       }));
  std::vector<double> grid;
  for (int i = 1; i <= 10; ++i) grid.push_back(0.1 * i);
  rows.push_back(bench("estimate_beta(n=" + std::to_string(beta_n) + ",r=" +
                           std::to_string(beta_reps) + ")",
                       [&](Exec e) {
                         return estimate_beta(law, grid, beta_n, beta_reps, 13, e).samples;
                       }));
  const EnvironmentLaw gw = EnvironmentLaw::atomic(
      {{OffspringDistribution::from_pmf({0.25, 0.0, 0.75}), 1.0, 1.0}}, 0.05);
  rows.push_back(bench("survival(r=" + std::to_string(surv_reps) + ")", [&](Exec e) {
    SimParams params;
    params.exact_threshold = 10'000;
    const SurvivalEstimate est = survival_probability(gw, 100, surv_reps, 17, params, e);
    return std::pair(est.survivors, est.estimate);
  }));

  std::printf("%-38s %12s %12s %9s %7s\n", "kernel", "serial_ms", "parallel_ms",
              "speedup", "equal");
  bool all_equal = true;
  for (const Row& r : rows) {
    std::printf("%-38s %12.1f %12.1f %8.2fx %7s\n", r.name.c_str(), r.serial_ms,
                r.parallel_ms, r.serial_ms / r.parallel_ms, r.equal ? "yes" : "FAIL");
    all_equal = all_equal && r.equal;
  }
  return all_equal ? 0 : 1;
}
