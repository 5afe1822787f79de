#include "brwre/particle_sim.hpp"

#include <cmath>
#include <stdexcept>

#include "brwre/errors.hpp"
#include "brwre/numeric.hpp"

namespace brwre {

std::int64_t ParticleField::total() const {
  std::int64_t z = 0;
  for (const auto& [site, count] : counts) z += count;
  return z;
}

ParticleField ParticleField::origin() {
  ParticleField f;
  f.counts[0] = 1;
  f.generation = 0;
  return f;
}

ParticleField step(const ParticleField& field, const Environment& env,
                   const SimParams& params, RngStream& rng) {
  ParticleField out;
  out.generation = field.generation + 1;
  out.saturated = field.saturated;

  const std::int64_t old_max =
      field.counts.empty() ? 0 : field.counts.rbegin()->first;
  std::int64_t total = 0;
  for (const auto& [site, count] : field.counts) {
    if (count <= 0) continue;
    if (site < 0 || site >= env.size())
      throw std::out_of_range("step: occupied site outside the environment");
    const SiteEnv& s = env.site(site);
    const std::int64_t offspring =
        s.dist.sample_sum(count, params.exact_threshold, rng);
    if (offspring == 0) continue;
    const std::int64_t movers =
        rng.next_binomial(offspring, s.drift, params.exact_threshold);
    if (movers > 0) out.counts[site + 1] += movers;
    if (offspring - movers > 0) out.counts[site] += offspring - movers;
    total += offspring;
  }
  if (total > params.cap) out.saturated = true;

  // Movement is at most one step right per generation.
  if (!out.counts.empty() && out.counts.rbegin()->first > old_max + 1)
    throw std::logic_error("step: spatial support grew by more than one site");
  return out;
}

Trajectory run(const Environment& env, std::int64_t horizon, const SimParams& params,
               RngStream& rng) {
  if (horizon < 0) throw std::invalid_argument("run: horizon must be >= 0");
  Trajectory t;
  ParticleField field = ParticleField::origin();
  t.totals.push_back(field.total());
  for (std::int64_t n = 1; n <= horizon; ++n) {
    field = step(field, env, params, rng);
    const std::int64_t z = field.total();
    t.totals.push_back(z);
    if (z == 0) {
      t.extinct_at = n;
      break;
    }
    if (field.saturated) {
      t.saturated_at = n;
      break;
    }
  }
  return t;
}

namespace {

SurvivalEstimate summarize_survival(const std::vector<char>& alive, std::int64_t horizon) {
  SurvivalEstimate est;
  est.replicas = std::int64_t(alive.size());
  est.horizon = horizon;
  for (char a : alive) est.survivors += a ? 1 : 0;
  est.estimate = double(est.survivors) / double(est.replicas);
  const WilsonInterval ci = wilson_interval(est.survivors, est.replicas);
  est.ci_lo = ci.lo;
  est.ci_hi = ci.hi;
  est.proxy_note =
      "estimates P(Z_horizon > 0), an upper-bound proxy for survival";
  return est;
}

}  // namespace

SurvivalEstimate survival_probability(const EnvironmentLaw& law, std::int64_t horizon,
                                      std::int64_t replicas, std::uint64_t seed,
                                      const SimParams& params, Exec exec) {
  if (replicas < 1) throw std::invalid_argument("survival_probability: replicas must be >= 1");
  const ValidationReport report = validate_law(law);
  if (!report.ok)
    throw LawValidationError("survival_probability: invalid law: " + report.summary());

  std::vector<char> alive(std::size_t(replicas), 0);
  for_each_index(replicas, exec, [&](std::int64_t r) {
    const std::uint64_t env_seed = derive_key(seed, std::uint64_t(r), 0);
    const Environment env = sample_environment(law, horizon + 1, env_seed);
    RngStream noise(derive_key(seed, std::uint64_t(r), 1));
    const Trajectory t = run(env, horizon, params, noise);
    alive[std::size_t(r)] = t.survived_to_end() ? 1 : 0;
  });
  return summarize_survival(alive, horizon);
}

SurvivalEstimate survival_probability(const Environment& env, std::int64_t horizon,
                                      std::int64_t replicas, std::uint64_t seed,
                                      const SimParams& params, Exec exec) {
  if (replicas < 1) throw std::invalid_argument("survival_probability: replicas must be >= 1");
  if (env.size() < horizon + 1)
    throw std::invalid_argument("survival_probability: environment shorter than horizon + 1");

  std::vector<char> alive(std::size_t(replicas), 0);
  for_each_index(replicas, exec, [&](std::int64_t r) {
    RngStream noise(derive_key(seed, std::uint64_t(r), 1));
    const Trajectory t = run(env, horizon, params, noise);
    alive[std::size_t(r)] = t.survived_to_end() ? 1 : 0;
  });
  return summarize_survival(alive, horizon);
}

EmbeddedSample embedded_first_passage(const Environment& env, std::int64_t k,
                                      RngStream& rng, std::int64_t budget,
                                      const SimParams& params) {
  if (k < 1) throw std::invalid_argument("embedded_first_passage: k must be >= 1");
  if (env.size() < k)
    throw std::invalid_argument("embedded_first_passage: environment shorter than k sites");
  if (budget < 1) throw std::invalid_argument("embedded_first_passage: budget must be >= 1");

  EmbeddedSample sample;
  std::int64_t population = 1;  // particles waiting at site j-1
  for (std::int64_t j = 1; j <= k; ++j) {
    const SiteEnv& s = env.site(j - 1);
    std::int64_t emigrants = 0;
    std::int64_t local = population;
    std::int64_t generations = 0;
    while (local > 0) {
      if (generations >= budget || local > params.cap) {
        sample.truncated = true;
        sample.truncated_stage = j;
        return sample;
      }
      const std::int64_t offspring =
          s.dist.sample_sum(local, params.exact_threshold, rng);
      const std::int64_t movers =
          rng.next_binomial(offspring, s.drift, params.exact_threshold);
      emigrants += movers;
      local = offspring - movers;
      ++generations;
    }
    sample.xi.push_back(emigrants);
    population = emigrants;
    if (population == 0) {
      // Extinct stages stay extinct; fill the remaining entries.
      for (std::int64_t rest = j + 1; rest <= k; ++rest) sample.xi.push_back(0);
      return sample;
    }
  }
  return sample;
}

std::optional<double> trajectory_growth_rate(const Trajectory& t) {
  // Window ends at the last pre-saturation generation.
  std::int64_t end = std::int64_t(t.totals.size()) - 1;
  if (t.saturated_at) end = *t.saturated_at - 1;
  if (end < 1) return std::nullopt;
  const std::int64_t lo = end / 2;
  std::vector<double> logs;
  logs.reserve(std::size_t(end - lo + 1));
  for (std::int64_t i = lo; i <= end; ++i) {
    if (t.totals[std::size_t(i)] <= 0) return std::nullopt;
    logs.push_back(std::log(double(t.totals[std::size_t(i)])));
  }
  if (logs.size() < 2) return std::nullopt;
  return least_squares_line(logs, lo).slope;
}

GrowthRateEstimate empirical_growth_rate(const EnvironmentLaw& law, std::int64_t horizon,
                                         std::int64_t replicas, std::uint64_t seed,
                                         const SimParams& params, Exec exec) {
  if (replicas < 1) throw std::invalid_argument("empirical_growth_rate: replicas must be >= 1");
  const ValidationReport report = validate_law(law);
  if (!report.ok)
    throw LawValidationError("empirical_growth_rate: invalid law: " + report.summary());

  constexpr double kNoRate = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> slot(std::size_t(replicas), kNoRate);
  for_each_index(replicas, exec, [&](std::int64_t r) {
    const std::uint64_t env_seed = derive_key(seed, std::uint64_t(r), 0);
    const Environment env = sample_environment(law, horizon + 1, env_seed);
    RngStream noise(derive_key(seed, std::uint64_t(r), 1));
    const Trajectory t = run(env, horizon, params, noise);
    if (!t.survived_to_end()) return;
    if (const auto rate = trajectory_growth_rate(t)) slot[std::size_t(r)] = *rate;
  });

  GrowthRateEstimate est;
  est.replicas = replicas;
  for (double v : slot)
    if (!std::isnan(v)) est.rates.push_back(v);
  est.survivors = std::int64_t(est.rates.size());
  if (est.survivors == 0)
    throw InsufficientDataError("empirical_growth_rate: no surviving replicas");
  est.insufficient = est.survivors < 10;
  const MeanStdError ms = mean_std_error(est.rates);
  est.mean = ms.mean;
  est.std_error = ms.std_error;
  return est;
}

}  // namespace brwre
