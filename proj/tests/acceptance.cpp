// Acceptance suite: one line per criterion, exit code = number of failures.
// Run all criteria with no arguments, or a single one by number.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <string>
#include <vector>

#include "brwre/criteria.hpp"
#include "brwre/env_law.hpp"
#include "brwre/errors.hpp"
#include "brwre/exec.hpp"
#include "brwre/moments.hpp"
#include "brwre/numeric.hpp"
#include "brwre/particle_sim.hpp"
#include "laws.hpp"
#include "oracles.hpp"

using namespace brwre;

namespace {

struct Criterion {
  std::vector<std::string> failures;

  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// 1. Critical drifts of the three-regime two-atom law.
void criterion1(Criterion& c) {
  const EnvironmentLaw law = testlaws::figure1();
  const double m_max = law_extremes(law).max_mean;
  const CriticalDrifts cd = critical_drifts(law, 1e-10);

  c.expect(cd.h_ls == 1.0 - 1.0 / m_max, "h_ls equals the closed form 1 - 1/M");
  c.expect(std::abs(cd.h_ls - 0.1) <= 1e-15, "h_ls = 0.1 (within fp rounding)");
  c.expect(cd.theorem_case == TheoremCase::A, "root case detected");
  c.expect(std::abs(phi(law, cd.h_gs)) < 1e-8, "|phi(h_gs)| < 1e-8");
  // bracket verified by the independent simplified form
  c.expect(oracles::fig1_phi(0.19) > 0.0 && oracles::fig1_phi(0.20) < 0.0,
           "oracle sign change on (0.19, 0.20)");
  c.expect(cd.h_gs > 0.19 && cd.h_gs < 0.20, "h_gs inside (0.19, 0.20)");
}

// 2. Two-regime two-atom law: infinite global threshold.
void criterion2(Criterion& c) {
  const EnvironmentLaw law = testlaws::figure2();
  const CriticalDrifts cd = critical_drifts(law);
  c.expect(cd.h_ls == 0.5, "h_ls = 0.5 exactly");
  const double phi1 = phi(law, 1.0);
  const double closed = 0.5 * std::log(2.0) + 0.5 * std::log(2.0 / 3.0);
  c.expect(std::abs(phi1 - closed) <= 1e-12, "phi(1) matches the closed form to 1e-12");
  c.expect(phi1 > 0.0, "phi(1) > 0");
  c.expect(cd.theorem_case == TheoremCase::C, "case c");
  c.expect(cd.h_gs == kInf, "h_gs = inf");

  std::vector<double> grid;
  for (int i = 1; i <= 99; ++i) grid.push_back(0.01 + 0.98 * double(i - 1) / 98.0);
  const std::vector<Regime> regimes = classify_regimes(law, grid);
  bool two_regimes = true;
  for (std::size_t i = 0; i < grid.size(); ++i)
    two_regimes = two_regimes && regimes[i] == (grid[i] < 0.5 ? Regime::I : Regime::II);
  c.expect(two_regimes, "phase diagram shows exactly regimes {I, II} split at 0.5");
}

// 3. Piecewise-density law: thresholds coincide.
void criterion3(Criterion& c) {
  const EnvironmentLaw law = testlaws::example2();
  const double value = phi(law, 0.5);
  const double closed = oracles::example2_phi_at_half();
  c.expect(std::abs(value - closed) < 1e-10, "quadrature matches the closed form to 1e-10");
  c.expect(value < 0.0, "phi(0.5) < 0");
  const CriticalDrifts cd = critical_drifts(law);
  c.expect(cd.theorem_case == TheoremCase::B, "case b");
  c.expect(cd.h_ls == 0.5 && cd.h_gs == 0.5, "h_gs = h_ls = 0.5");
}

// 4. Embedded first-passage mean against the closed form.
void criterion4(Criterion& c) {
  const auto dist = OffspringDistribution::from_pmf({0.25, 0.0, 0.25, 0.5});  // mean 2
  std::vector<SiteEnv> sites(2, SiteEnv{dist, 0.75});
  const Environment env(std::move(sites), 0, "eq4");
  const std::int64_t runs = 100'000;
  std::vector<double> xi1(static_cast<std::size_t>(runs));
  for_each_index(runs, Exec::Parallel, [&](std::int64_t r) {
    RngStream rng(4242, std::uint64_t(r));
    xi1[std::size_t(r)] = double(embedded_first_passage(env, 1, rng).xi[0]);
  });
  const MeanStdError ms = mean_std_error(xi1);
  c.expect(ms.std_error > 0.0, "positive standard error");
  c.expect(std::abs(ms.mean - 3.0) <= 3.0 * ms.std_error,
           "mean of xi_1 within 3 stderr of 3");
}

// 5. Dynamic program vs exhaustive enumeration, then the Monte Carlo route.
void criterion5(Criterion& c) {
  std::mt19937_64 gen(50505);
  bool entries_match = true;
  for (int trial = 0; trial < 50; ++trial) {
    const Environment env = oracles::random_environment(gen, 11);
    for (std::int64_t n = 0; n <= 10 && entries_match; ++n) {
      const MomentProfile p = expected_profile(env, n);
      const std::vector<double> brute = oracles::enumerate_profile(env, n);
      for (std::int64_t x = 0; x <= n; ++x) {
        const double a = p.log_value_at(x), b = brute[std::size_t(x)];
        if (a == kNegInf && b == kNegInf) continue;
        if (std::abs(a - b) >= 1e-9) entries_match = false;
      }
    }
  }
  c.expect(entries_match, "50 random environments, all n <= 10, entrywise 1e-9 in log space");

  const Environment env = oracles::random_environment(gen, 21);
  const double exact = expected_total(env, 20);
  const FeynmanKacEstimate est = feynman_kac_total(env, 20, 100'000, 321);
  c.expect(est.std_error > 0.0, "walk-product estimate has a positive standard error");
  c.expect(std::abs(est.log_total - exact) <= 3.0 * est.std_error,
           "walk-product route within 3 stderr of the recursion");
}

// 6. Growth-profile endpoints and shape.
void criterion6(Criterion& c) {
  // stochastic law: the x = 1 estimate has a known analytic target
  const EnvironmentLaw fig2 = testlaws::figure2();
  const GrowthProfile end = estimate_beta(fig2, {1.0}, 400, 200, 606);
  const double target = analytic_beta_endpoints(fig2).at_one;
  c.expect(end.grid[0].std_error > 0.0, "x = 1 estimate has a positive standard error");
  c.expect(std::abs(end.grid[0].beta_hat - target) <= 3.0 * end.grid[0].std_error,
           "beta(1) within 3 stderr of E[log(m h)]");

  // deterministic-atom law: the whole profile has a closed form
  const auto det = testlaws::single_atom(
      OffspringDistribution::from_pmf({0.25, 0.0, 0.25, 0.5}), 0.5);
  std::vector<double> grid;
  for (int i = 2; i <= 20; ++i) grid.push_back(0.05 * i);
  const GrowthProfile profile = estimate_beta(det, grid, 400, 2, 607);
  bool within = true;
  for (const GrowthPoint& p : profile.grid) {
    const double x_real = double(p.site) / 400.0;
    if (std::abs(p.beta_hat - oracles::closed_beta(x_real, 2.0, 0.5)) > 0.02) within = false;
  }
  c.expect(within, "deterministic profile matches the closed form within 0.02 per point");

  bool concave = true;
  for (std::size_t i = 1; i + 1 < profile.grid.size(); ++i) {
    std::vector<double> defect;
    for (const auto& row : profile.samples)
      defect.push_back(row[i] - 0.5 * (row[i - 1] + row[i + 1]));
    const MeanStdError ms = mean_std_error(defect);
    if (ms.mean < -3.0 * ms.std_error - 1e-12) concave = false;
  }
  c.expect(concave, "estimated profile concave up to 3-stderr slack");
}

// 7. Almost-sure growth rate vs the profile maximum.
void criterion7(Criterion& c) {
  const auto law = testlaws::single_atom(
      OffspringDistribution::from_pmf({0.25, 0.0, 0.25, 0.5}), 0.5);
  const GrowthRateEstimate rate = empirical_growth_rate(law, 200, 100, 707);
  c.expect(rate.survivors >= 50, "at least 50 surviving replicas");
  c.expect(std::abs(rate.mean - std::log(2.0)) <= 0.05,
           "mean empirical growth rate within 0.05 of log 2");

  std::vector<double> grid;
  for (int i = 2; i <= 20; ++i) grid.push_back(0.05 * i);
  const GrowthProfile profile = estimate_beta(law, grid, 400, 2, 708);
  const BetaMax best = max_beta(profile, law);
  c.expect(std::abs(best.beta_star - std::log(2.0)) <= 0.05,
           "profile maximum within 0.05 of log 2");
}

// 8. Structural invariants in bulk.
void criterion8(Criterion& c) {
  std::mt19937_64 gen(80808);

  bool lemma1 = true;
  for (int trial = 0; trial < 20; ++trial) {
    const std::int64_t n = 5 + trial;
    const Environment env = oracles::random_environment(gen, n + 1);
    double max_m = 0.0, max_stay = 0.0;
    for (std::int64_t x = 0; x <= n; ++x) {
      max_m = std::max(max_m, env.site(x).dist.mean());
      max_stay = std::max(max_stay, env.site(x).dist.mean() * (1.0 - env.site(x).drift));
    }
    const MomentProfile p = expected_profile(env, n);
    for (std::int64_t y = 0; y <= n; ++y) {
      const double bound = log_binomial(n, y) + double(n - y) * std::log(max_stay) +
                           double(y) * std::log(max_m);
      if (p.log_value_at(y) > bound + 1e-9) lemma1 = false;
    }
  }
  c.expect(lemma1, "binomial bound holds for every profile entry");

  bool superadditive = true;
  std::uniform_int_distribution<int> s_pick(1, 4), n_pick(2, 8);
  for (int trial = 0; trial < 100; ++trial) {
    const std::int64_t s = s_pick(gen);
    const std::int64_t r = std::uniform_int_distribution<int>(1, int(s))(gen);
    const std::int64_t n = n_pick(gen);
    const std::int64_t m = std::uniform_int_distribution<int>(1, int(n - 1))(gen);
    const Environment env = oracles::random_environment(gen, s * n + 1);
    const double whole = expected_profile(env, s * n).log_value_at(r * n);
    const double first = expected_profile(env, s * m).log_value_at(r * m);
    const double second = expected_profile(env, s * (n - m), r * m).log_value_at(r * n);
    if (!(whole >= first + second - 1e-9)) superadditive = false;
  }
  c.expect(superadditive, "superadditivity holds for 100 random splits");

  bool monotone = true, ls_implies_gs = true;
  for (int trial = 0; trial < 100; ++trial) {
    const EnvironmentLaw law = oracles::random_law(gen);
    std::vector<double> grid;
    for (int i = 1; i <= 20; ++i) grid.push_back(0.05 * i);
    const auto regimes = classify_regimes(law, grid);
    for (std::size_t i = 1; i < regimes.size(); ++i)
      if (int(regimes[i]) < int(regimes[i - 1])) monotone = false;
    const SurvivalClassification sc = classify_survival(law);
    if (sc.local && !sc.global) ls_implies_gs = false;
  }
  c.expect(monotone, "regime labels monotone in the drift for 100 random laws");
  c.expect(ls_implies_gs, "local survival implies global survival for all classified laws");
}

// 9. Full-drift reduction to a plain branching process.
void criterion9(Criterion& c) {
  const auto law = testlaws::single_atom(
      OffspringDistribution::from_pmf({0.25, 0.0, 0.75}), 1.0);
  SimParams params;
  params.exact_threshold = 10'000;  // survival is insensitive to the convolution cutoff
  const SurvivalEstimate est = survival_probability(law, 100, 100'000, 909, params);
  const double target = 1.0 - oracles::gw_extinction(0.25, 0.75);
  c.expect(std::abs(target - 2.0 / 3.0) < 1e-15, "fixed-point oracle gives 2/3");
  c.expect(est.ci_lo <= target && target <= est.ci_hi, "95% CI covers 2/3");
}

struct Entry {
  int number;
  const char* description;
  void (*fn)(Criterion&);
};

const Entry kEntries[] = {
    {1, "critical drifts, three-regime two-atom law", criterion1},
    {2, "infinite global threshold, two-regime law", criterion2},
    {3, "piecewise-density law, coinciding thresholds", criterion3},
    {4, "embedded first-passage mean (Monte Carlo)", criterion4},
    {5, "moment recursion vs enumeration and walk products", criterion5},
    {6, "growth-profile endpoints and concavity", criterion6},
    {7, "growth rate equals the profile maximum", criterion7},
    {8, "bound, superadditivity, and classification invariants", criterion8},
    {9, "full-drift reduction to a branching process", criterion9},
};

}  // namespace

int main(int argc, char** argv) {
  configure_threads();
  const int only = argc > 1 ? std::atoi(argv[1]) : 0;
  int failures = 0;
  for (const Entry& entry : kEntries) {
    if (only != 0 && entry.number != only) continue;
    Criterion c;
    const auto t0 = std::chrono::steady_clock::now();
    entry.fn(c);
    const double dt = seconds_since(t0);
    if (c.failures.empty()) {
      std::printf("[PASS] criterion %d: %s (%.2fs)\n", entry.number, entry.description, dt);
    } else {
      ++failures;
      std::printf("[FAIL] criterion %d: %s (%.2fs)\n", entry.number, entry.description, dt);
      for (const std::string& f : c.failures) std::printf("       unmet: %s\n", f.c_str());
    }
  }
  return failures;
}
