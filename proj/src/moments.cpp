#include "brwre/moments.hpp"

#include <cmath>
#include <stdexcept>

#include "brwre/errors.hpp"
#include "brwre/numeric.hpp"
#include "brwre/rng.hpp"

namespace brwre {

namespace {

// Row length below which parallelizing the DP row update is not worth the
// barrier cost.
constexpr std::int64_t kParallelRowMin = 512;

struct LogKernel {
  std::vector<double> log_move;  // log(h_x * m_x)
  std::vector<double> log_stay;  // log((1 - h_x) * m_x)
};

double log_or_neg_inf(double v) { return v > 0.0 ? std::log(v) : kNegInf; }

LogKernel make_kernel(const Environment& env, std::int64_t lo, std::int64_t hi) {
  LogKernel k;
  k.log_move.resize(std::size_t(hi - lo + 1));
  k.log_stay.resize(std::size_t(hi - lo + 1));
  for (std::int64_t x = lo; x <= hi; ++x) {
    const SiteEnv& s = env.site(x);
    k.log_move[std::size_t(x - lo)] = log_or_neg_inf(s.drift * s.dist.mean());
    k.log_stay[std::size_t(x - lo)] = log_or_neg_inf((1.0 - s.drift) * s.dist.mean());
  }
  return k;
}

}  // namespace

double MomentProfile::log_value_at(std::int64_t site) const {
  const std::int64_t i = site - start;
  if (i < 0 || i > horizon) return kNegInf;
  return log_values[std::size_t(i)];
}

MomentProfile expected_profile(const Environment& env, std::int64_t n,
                               std::int64_t start, Exec exec) {
  if (n < 0) throw std::invalid_argument("expected_profile: n must be >= 0");
  if (start < 0) throw std::invalid_argument("expected_profile: start must be >= 0");
  if (env.size() < start + n + 1)
    throw std::invalid_argument("expected_profile: environment shorter than start + n + 1 sites");

  const LogKernel kernel = make_kernel(env, start, start + n);

  std::vector<double> row(std::size_t(n) + 1, kNegInf);
  std::vector<double> next(std::size_t(n) + 1, kNegInf);
  row[0] = 0.0;  // one particle at `start`

  for (std::int64_t k = 1; k <= n; ++k) {
    const auto update = [&](std::int64_t j) {
      const double from_left =
          j > 0 ? kernel.log_move[std::size_t(j - 1)] + row[std::size_t(j - 1)] : kNegInf;
      const double from_here =
          j < k ? kernel.log_stay[std::size_t(j)] + row[std::size_t(j)] : kNegInf;
      next[std::size_t(j)] = log_add(from_left, from_here);
    };
    if (exec == Exec::Parallel && k >= kParallelRowMin) {
      for_each_index(k + 1, Exec::Parallel, update);
    } else {
      for (std::int64_t j = 0; j <= k; ++j) update(j);
    }
    row.swap(next);
  }

  MomentProfile profile;
  profile.horizon = n;
  profile.start = start;
  profile.log_values = std::move(row);
  profile.env_ref = env.law_id();
  return profile;
}

double expected_total(const Environment& env, std::int64_t n) {
  const MomentProfile profile = expected_profile(env, n);
  return log_sum_exp(profile.log_values);
}

FeynmanKacEstimate feynman_kac_total(const Environment& env, std::int64_t n,
                                     std::int64_t walkers, std::uint64_t seed,
                                     Exec exec) {
  if (walkers < 1) throw std::invalid_argument("feynman_kac_total: walkers must be >= 1");
  if (n < 0) throw std::invalid_argument("feynman_kac_total: n must be >= 0");
  if (env.size() < n + 1)
    throw std::invalid_argument("feynman_kac_total: environment shorter than n + 1 sites");

  std::vector<double> log_products(static_cast<std::size_t>(walkers));
  for_each_index(walkers, exec, [&](std::int64_t w) {
    RngStream rng(seed, std::uint64_t(w));
    std::int64_t pos = 0;
    double log_prod = 0.0;
    for (std::int64_t i = 0; i < n; ++i) {
      const SiteEnv& s = env.site(pos);
      const double m = s.dist.mean();
      if (m > 0.0) {
        log_prod += std::log(m);
      } else {
        log_prod = kNegInf;
      }
      if (rng.next_bernoulli(s.drift)) ++pos;
    }
    log_products[std::size_t(w)] = log_prod;
  });

  // log of the sample mean, then a delta-method error bar for the log.
  const double log_w = std::log(double(walkers));
  const double log_sum = log_sum_exp(log_products);
  FeynmanKacEstimate est;
  est.log_total = log_sum - log_w;
  if (walkers == 1) {
    est.std_error = kInf;
    return est;
  }
  std::vector<double> doubled(log_products.size());
  for (std::size_t i = 0; i < log_products.size(); ++i) doubled[i] = 2.0 * log_products[i];
  const double log_sum_sq = log_sum_exp(doubled);
  const double expo = 2.0 * log_sum - log_w - log_sum_sq;  // log(W mean^2 / sum_sq)
  if (!(expo < 0.0)) {
    est.std_error = 0.0;  // zero sample variance (constant integrand)
    return est;
  }
  const double log_var =
      log_sum_sq + std::log1p(-std::exp(expo)) - std::log(double(walkers - 1));
  est.std_error = std::exp(0.5 * log_var - est.log_total - 0.5 * log_w);
  return est;
}

GrowthProfile estimate_beta(const EnvironmentLaw& law, const std::vector<double>& grid,
                            std::int64_t n, std::int64_t replicas, std::uint64_t seed,
                            Exec exec, double gamma) {
  if (n < 1) throw std::invalid_argument("estimate_beta: n must be >= 1");
  if (replicas < 1) throw std::invalid_argument("estimate_beta: replicas must be >= 1");
  if (grid.empty()) throw std::invalid_argument("estimate_beta: empty grid");
  const ValidationReport report = validate_law(law);
  if (!report.strong_ok)
    throw LawValidationError("estimate_beta: law must satisfy the strong ellipticity condition: " +
                             report.summary());
  for (double x : grid) {
    if (!(x >= gamma && x <= 1.0))
      throw std::invalid_argument("estimate_beta: grid points must lie in [gamma, 1]");
  }

  std::vector<std::int64_t> sites(grid.size());
  for (std::size_t g = 0; g < grid.size(); ++g)
    sites[g] = std::int64_t(std::floor(grid[g] * double(n) + 1e-9));

  std::vector<std::vector<double>> samples(std::size_t(replicas),
                                           std::vector<double>(grid.size()));
  for_each_index(replicas, exec, [&](std::int64_t r) {
    const Environment env =
        sample_environment(law, n + 1, derive_key(seed, std::uint64_t(r)));
    const MomentProfile profile = expected_profile(env, n, 0, Exec::Serial);
    for (std::size_t g = 0; g < grid.size(); ++g)
      samples[std::size_t(r)][g] = profile.log_value_at(sites[g]) / double(n);
  });

  GrowthProfile out;
  out.n_used = n;
  out.replicas = replicas;
  out.grid.resize(grid.size());
  for (std::size_t g = 0; g < grid.size(); ++g) {
    std::vector<double> col(static_cast<std::size_t>(replicas));
    for (std::int64_t r = 0; r < replicas; ++r) col[std::size_t(r)] = samples[std::size_t(r)][g];
    const MeanStdError ms = mean_std_error(col);
    out.grid[g] = {grid[g], sites[g], ms.mean, ms.std_error};
  }
  out.samples = std::move(samples);
  return out;
}

BetaDiagnostic beta_convergence_diagnostic(const EnvironmentLaw& law,
                                           const std::vector<double>& grid,
                                           std::int64_t n, std::int64_t replicas,
                                           std::uint64_t seed, Exec exec, double gamma) {
  BetaDiagnostic diag;
  diag.at_n = estimate_beta(law, grid, n, replicas, seed, exec, gamma);
  diag.at_2n = estimate_beta(law, grid, 2 * n, replicas, derive_key(seed, 1), exec, gamma);
  diag.shift.resize(grid.size());
  for (std::size_t g = 0; g < grid.size(); ++g)
    diag.shift[g] = diag.at_2n.grid[g].beta_hat - diag.at_n.grid[g].beta_hat;
  return diag;
}

BetaMax max_beta(const GrowthProfile& profile, const EnvironmentLaw& law) {
  if (profile.grid.empty()) throw std::invalid_argument("max_beta: empty profile");
  const LawExtremes ex = law_extremes(law);
  BetaMax best;
  best.x_star = 0.0;
  best.beta_star = ex.max_stay_mean > 0.0 ? std::log(ex.max_stay_mean) : kNegInf;
  for (const GrowthPoint& p : profile.grid) {
    if (p.beta_hat > best.beta_star) {
      best.x_star = p.x;
      best.beta_star = p.beta_hat;
    }
  }
  return best;
}

BetaEndpoints analytic_beta_endpoints(const EnvironmentLaw& law) {
  const LawExtremes ex = law_extremes(law);
  BetaEndpoints ep;
  ep.at_zero = ex.max_stay_mean > 0.0 ? std::log(ex.max_stay_mean) : kNegInf;
  if (law.kind == LawKind::Atomic) {
    double acc = 0.0;
    for (const LawAtom& a : law.atoms) {
      if (a.weight <= 0.0) continue;
      acc += a.weight * std::log(a.dist.mean() * a.drift);
    }
    ep.at_one = acc;
  } else {
    // E[log m] has a closed form per constant-density piece.
    double acc = 0.0;
    for (const DensityPiece& p : law.pieces) {
      const auto primitive = [](double m) { return m * std::log(m) - m; };
      acc += p.density * (primitive(p.hi) - primitive(p.lo));
    }
    ep.at_one = acc + std::log(law.drift);
  }
  return ep;
}

}  // namespace brwre
