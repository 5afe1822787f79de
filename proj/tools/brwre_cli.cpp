// Command-line front end: parses law files, dispatches to the analysis and
// simulation modules, and writes reproducible CSV/JSON artifacts.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "brwre/criteria.hpp"
#include "brwre/csv.hpp"
#include "brwre/env_law.hpp"
#include "brwre/errors.hpp"
#include "brwre/exec.hpp"
#include "brwre/law_io.hpp"
#include "brwre/moments.hpp"
#include "brwre/numeric.hpp"
#include "brwre/particle_sim.hpp"

namespace {

using nlohmann::json;
using namespace brwre;

constexpr const char* kArtifactVersion = "0.1.0";

// Exit codes: 0 ok, 2 config/parse problem, 3 law failed validation,
// 4 runtime insufficiency (e.g. no surviving replicas).
constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitLaw = 3;
constexpr int kExitRuntime = 4;

struct GlobalOpts {
  std::uint64_t seed = 1;
  std::string out;
  std::string format = "csv";
};

json json_double(double v) {
  if (std::isfinite(v)) return v;
  return format_double(v);  // "inf"/"-inf" tokens; json cannot carry infinities
}

std::vector<double> parse_grid(const std::string& spec) {
  double a = 0, b = 0;
  long steps = 0;
  int consumed = 0;
  if (std::sscanf(spec.c_str(), "%lf:%lf:%ld%n", &a, &b, &steps, &consumed) != 3 ||
      consumed != int(spec.size()))
    throw CLI::ValidationError("grid", "expected a:b:steps, got \"" + spec + "\"");
  if (steps < 1) throw CLI::ValidationError("grid", "steps must be >= 1");
  if (b < a) throw CLI::ValidationError("grid", "grid end must be >= start");
  std::vector<double> xs;
  xs.reserve(std::size_t(steps));
  if (steps == 1) {
    xs.push_back(a);
    return xs;
  }
  for (long i = 0; i < steps; ++i) xs.push_back(a + (b - a) * double(i) / double(steps - 1));
  return xs;
}

void emit(const GlobalOpts& g, const std::string& body) {
  if (g.out.empty()) {
    std::cout << body;
    return;
  }
  std::ofstream f(g.out, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open output file: " + g.out);
  f << body;
}

Metadata base_meta(const std::string& command, const EnvironmentLaw& law,
                   const GlobalOpts& g) {
  return {
      {"artifact_version", kArtifactVersion},
      {"command", command},
      {"law_hash", law_hash_hex(law)},
      {"seed", std::to_string(g.seed)},
  };
}

json meta_to_json(const Metadata& meta) {
  json j;
  for (const auto& [k, v] : meta) j[k] = v;
  return j;
}

// ---- validate ----

std::string cmd_validate(const EnvironmentLaw& law, const GlobalOpts& g) {
  const ValidationReport report = validate_law(law);
  Metadata meta = base_meta("validate", law, g);
  meta.push_back({"ok", report.ok ? "1" : "0"});
  meta.push_back({"strong_ok", report.strong_ok ? "1" : "0"});
  if (g.format == "json") {
    json j;
    j["meta"] = meta_to_json(meta);
    j["ok"] = report.ok;
    j["strong_ok"] = report.strong_ok;
    json issues = json::array();
    for (const ValidationIssue& v : report.issues)
      issues.push_back({{"message", v.message}, {"strong_only", v.strong_only}});
    j["issues"] = std::move(issues);
    return j.dump(2) + "\n";
  }
  std::ostringstream os;
  write_metadata(os, meta);
  os << "issue,strong_only,message\n";
  for (std::size_t i = 0; i < report.issues.size(); ++i)
    os << i << "," << (report.issues[i].strong_only ? 1 : 0) << ","
       << report.issues[i].message << "\n";
  return os.str();
}

// ---- classify ----

std::string cmd_classify(const EnvironmentLaw& law, const GlobalOpts& g, double tol) {
  const SurvivalClassification sc = classify_survival(law);
  const CriticalDrifts cd = critical_drifts(law, tol);
  Metadata meta = base_meta("classify", law, g);
  meta.push_back({"tol", format_double(tol)});
  if (g.format == "json") {
    json j;
    j["meta"] = meta_to_json(meta);
    j["h_ls"] = json_double(cd.h_ls);
    j["h_gs"] = json_double(cd.h_gs);
    j["case"] = to_string(cd.theorem_case);
    j["lambda"] = json_double(sc.lambda);
    j["local"] = sc.local;
    j["global"] = sc.global;
    j["gs_value"] = json_double(sc.gs_functional_value);
    j["case_label"] = to_string(sc.case_label);
    return j.dump(2) + "\n";
  }
  std::ostringstream os;
  write_metadata(os, meta);
  os << "h_ls,h_gs,case,lambda,local,global,gs_value,case_label\n";
  os << format_double(cd.h_ls) << "," << format_double(cd.h_gs) << ","
     << to_string(cd.theorem_case) << "," << format_double(sc.lambda) << ","
     << (sc.local ? 1 : 0) << "," << (sc.global ? 1 : 0) << ","
     << format_double(sc.gs_functional_value) << "," << to_string(sc.case_label) << "\n";
  return os.str();
}

// ---- phi-sweep / phase-diagram ----

std::string cmd_phi_sweep(const EnvironmentLaw& law, const GlobalOpts& g,
                          const std::vector<double>& grid) {
  for (double h : grid)
    if (!(h > 0.0 && h <= 1.0))
      throw CLI::ValidationError("h-grid", "drift grid points must lie in (0, 1]");
  const std::vector<Regime> regimes = classify_regimes(law, grid);
  std::vector<PhiSweepRow> rows(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i)
    rows[i] = {grid[i], phi(law, grid[i]), to_string(regimes[i])};
  Metadata meta = base_meta("phi-sweep", law, g);
  meta.push_back({"points", std::to_string(grid.size())});
  if (g.format == "json") {
    json j;
    j["meta"] = meta_to_json(meta);
    json out = json::array();
    for (const PhiSweepRow& r : rows)
      out.push_back({{"h", r.h}, {"phi", json_double(r.phi)}, {"regime", r.regime}});
    j["rows"] = std::move(out);
    return j.dump(2) + "\n";
  }
  std::ostringstream os;
  write_csv(os, rows, meta);
  return os.str();
}

std::string cmd_phase_diagram(const EnvironmentLaw& law, const GlobalOpts& g,
                              const std::vector<double>& grid) {
  for (double h : grid)
    if (!(h > 0.0 && h <= 1.0))
      throw CLI::ValidationError("h-grid", "drift grid points must lie in (0, 1]");
  const CriticalDrifts cd = critical_drifts(law);
  const std::vector<Regime> regimes = classify_regimes(law, grid);
  Metadata meta = base_meta("phase-diagram", law, g);
  meta.push_back({"h_ls", format_double(cd.h_ls)});
  meta.push_back({"h_gs", format_double(cd.h_gs)});
  meta.push_back({"case", to_string(cd.theorem_case)});
  if (g.format == "json") {
    json j;
    j["meta"] = meta_to_json(meta);
    j["h_ls"] = json_double(cd.h_ls);
    j["h_gs"] = json_double(cd.h_gs);
    j["case"] = to_string(cd.theorem_case);
    json out = json::array();
    for (std::size_t i = 0; i < grid.size(); ++i)
      out.push_back({{"h", grid[i]}, {"regime", to_string(regimes[i])}});
    j["rows"] = std::move(out);
    return j.dump(2) + "\n";
  }
  std::ostringstream os;
  write_metadata(os, meta);
  os << "h,regime\n";
  for (std::size_t i = 0; i < grid.size(); ++i)
    os << format_double(grid[i]) << "," << to_string(regimes[i]) << "\n";
  return os.str();
}

// ---- beta ----

std::string cmd_beta(const EnvironmentLaw& law, const GlobalOpts& g,
                     const std::vector<double>& grid, std::int64_t n,
                     std::int64_t replicas, double gamma, bool diagnose) {
  if (diagnose) {
    const BetaDiagnostic diag =
        beta_convergence_diagnostic(law, grid, n, replicas, g.seed, Exec::Parallel, gamma);
    Metadata meta = base_meta("beta", law, g);
    meta.push_back({"n", std::to_string(n)});
    meta.push_back({"replicas", std::to_string(replicas)});
    meta.push_back({"diagnose", "1"});
    if (g.format == "json") {
      json j;
      j["meta"] = meta_to_json(meta);
      json out = json::array();
      for (std::size_t i = 0; i < grid.size(); ++i)
        out.push_back({{"x", grid[i]},
                       {"beta_hat", json_double(diag.at_n.grid[i].beta_hat)},
                       {"stderr", json_double(diag.at_n.grid[i].std_error)},
                       {"beta_hat_2n", json_double(diag.at_2n.grid[i].beta_hat)},
                       {"shift", json_double(diag.shift[i])}});
      j["rows"] = std::move(out);
      return j.dump(2) + "\n";
    }
    std::ostringstream os;
    write_metadata(os, meta);
    os << "x,beta_hat,stderr,beta_hat_2n,shift\n";
    for (std::size_t i = 0; i < grid.size(); ++i)
      os << format_double(grid[i]) << "," << format_double(diag.at_n.grid[i].beta_hat)
         << "," << format_double(diag.at_n.grid[i].std_error) << ","
         << format_double(diag.at_2n.grid[i].beta_hat) << ","
         << format_double(diag.shift[i]) << "\n";
    return os.str();
  }
  const GrowthProfile profile = estimate_beta(law, grid, n, replicas, g.seed,
                                              Exec::Parallel, gamma);
  const BetaEndpoints ep = analytic_beta_endpoints(law);
  const BetaMax best = max_beta(profile, law);
  Metadata meta = base_meta("beta", law, g);
  meta.push_back({"n", std::to_string(n)});
  meta.push_back({"replicas", std::to_string(replicas)});
  meta.push_back({"gamma", format_double(gamma)});
  meta.push_back({"beta0_analytic", format_double(ep.at_zero)});
  meta.push_back({"beta1_analytic", format_double(ep.at_one)});
  meta.push_back({"max_beta_x", format_double(best.x_star)});
  meta.push_back({"max_beta", format_double(best.beta_star)});
  if (g.format == "json") {
    json j;
    j["meta"] = meta_to_json(meta);
    json out = json::array();
    for (const GrowthPoint& p : profile.grid)
      out.push_back({{"x", p.x},
                     {"site", p.site},
                     {"beta_hat", json_double(p.beta_hat)},
                     {"stderr", json_double(p.std_error)}});
    j["rows"] = std::move(out);
    j["max_beta_x"] = json_double(best.x_star);
    j["max_beta"] = json_double(best.beta_star);
    return j.dump(2) + "\n";
  }
  std::ostringstream os;
  write_csv(os, profile, meta);
  return os.str();
}

// ---- simulate ----

struct ReplicaRow {
  std::int64_t replica;
  bool survived;
  std::int64_t extinct_at;    // -1 when not extinct
  std::int64_t saturated_at;  // -1 when not saturated
  double rate;                // -inf when no finite growth rate exists
};

std::string cmd_simulate(const EnvironmentLaw& law, const GlobalOpts& g,
                         std::int64_t horizon, std::int64_t replicas,
                         const SimParams& params,
                         std::optional<std::uint64_t> env_seed) {
  Metadata meta = base_meta("simulate", law, g);
  meta.push_back({"horizon", std::to_string(horizon)});
  meta.push_back({"replicas", std::to_string(replicas)});
  meta.push_back({"cap", std::to_string(params.cap)});
  meta.push_back({"exact_threshold", std::to_string(params.exact_threshold)});
  meta.push_back({"mode", env_seed ? "quenched" : "annealed"});
  if (env_seed) meta.push_back({"env_seed", std::to_string(*env_seed)});

  std::optional<Environment> fixed_env;
  if (env_seed) fixed_env = sample_environment(law, horizon + 1, *env_seed);

  if (replicas == 1) {
    Environment env = fixed_env
                          ? *fixed_env
                          : sample_environment(law, horizon + 1, derive_key(g.seed, 0, 0));
    RngStream noise(derive_key(g.seed, 0, 1));
    const Trajectory t = run(env, horizon, params, noise);
    const auto rate = trajectory_growth_rate(t);
    meta.push_back({"survived", t.survived_to_end() ? "1" : "0"});
    meta.push_back({"extinct_at", std::to_string(t.extinct_at.value_or(-1))});
    meta.push_back({"saturated_at", std::to_string(t.saturated_at.value_or(-1))});
    meta.push_back({"rate", format_double(rate.value_or(kNegInf))});
    if (g.format == "json") {
      json j;
      j["meta"] = meta_to_json(meta);
      j["totals"] = t.totals;
      j["survived"] = t.survived_to_end();
      j["rate"] = json_double(rate.value_or(kNegInf));
      return j.dump(2) + "\n";
    }
    std::ostringstream os;
    write_csv(os, t, meta);
    return os.str();
  }

  std::vector<ReplicaRow> rows(static_cast<std::size_t>(replicas));
  for_each_index(replicas, Exec::Parallel, [&](std::int64_t r) {
    const Environment env =
        fixed_env ? *fixed_env
                  : sample_environment(law, horizon + 1,
                                       derive_key(g.seed, std::uint64_t(r), 0));
    RngStream noise(derive_key(g.seed, std::uint64_t(r), 1));
    const Trajectory t = run(env, horizon, params, noise);
    const auto rate = trajectory_growth_rate(t);
    rows[std::size_t(r)] = {r, t.survived_to_end(), t.extinct_at.value_or(-1),
                            t.saturated_at.value_or(-1),
                            t.survived_to_end() ? rate.value_or(kNegInf) : kNegInf};
  });

  std::int64_t survivors = 0;
  for (const ReplicaRow& r : rows) survivors += r.survived ? 1 : 0;
  if (survivors == 0)
    throw InsufficientDataError("no replicas survived to the horizon");
  std::vector<double> survivor_rates;
  for (const ReplicaRow& r : rows)
    if (r.survived && std::isfinite(r.rate)) survivor_rates.push_back(r.rate);
  const MeanStdError growth = mean_std_error(survivor_rates);
  const WilsonInterval ci = wilson_interval(survivors, replicas);
  meta.push_back({"survivors", std::to_string(survivors)});
  meta.push_back({"growth_mean", format_double(growth.mean)});
  meta.push_back({"growth_stderr", format_double(growth.std_error)});
  meta.push_back({"survival_estimate", format_double(double(survivors) / double(replicas))});
  meta.push_back({"ci95_lo", format_double(ci.lo)});
  meta.push_back({"ci95_hi", format_double(ci.hi)});
  meta.push_back({"proxy_note", "estimates P(Z_horizon > 0), an upper-bound proxy for survival"});

  if (g.format == "json") {
    json j;
    j["meta"] = meta_to_json(meta);
    json out = json::array();
    for (const ReplicaRow& r : rows)
      out.push_back({{"replica", r.replica},
                     {"survived", r.survived},
                     {"extinct_at", r.extinct_at},
                     {"saturated_at", r.saturated_at},
                     {"rate", json_double(r.rate)}});
    j["rows"] = std::move(out);
    j["survival_estimate"] = double(survivors) / double(replicas);
    j["ci95"] = {ci.lo, ci.hi};
    return j.dump(2) + "\n";
  }
  std::ostringstream os;
  write_metadata(os, meta);
  os << "replica,survived,extinct_at,saturated_at,rate\n";
  for (const ReplicaRow& r : rows)
    os << r.replica << "," << (r.survived ? 1 : 0) << "," << r.extinct_at << ","
       << r.saturated_at << "," << format_double(r.rate) << "\n";
  return os.str();
}

// ---- embedded ----

std::string cmd_embedded(const EnvironmentLaw& law, const GlobalOpts& g, std::int64_t k,
                         std::int64_t budget, std::int64_t runs,
                         std::optional<std::uint64_t> env_seed, const SimParams& params) {
  const std::uint64_t es = env_seed.value_or(derive_key(g.seed, 0, 0));
  const Environment env = sample_environment(law, k, es);
  std::vector<EmbeddedSample> samples(static_cast<std::size_t>(runs));
  for_each_index(runs, Exec::Parallel, [&](std::int64_t r) {
    RngStream rng(derive_key(g.seed, std::uint64_t(r), 2));
    samples[std::size_t(r)] = embedded_first_passage(env, k, rng, budget, params);
  });

  std::int64_t truncated = 0;
  std::vector<double> xi1;
  for (const EmbeddedSample& s : samples) {
    truncated += s.truncated ? 1 : 0;
    if (!s.xi.empty()) xi1.push_back(double(s.xi[0]));
  }
  const MeanStdError ms = mean_std_error(xi1);

  Metadata meta = base_meta("embedded", law, g);
  meta.push_back({"k", std::to_string(k)});
  meta.push_back({"budget", std::to_string(budget)});
  meta.push_back({"runs", std::to_string(runs)});
  meta.push_back({"env_seed", std::to_string(es)});
  meta.push_back({"truncated_runs", std::to_string(truncated)});
  meta.push_back({"mean_xi1", format_double(ms.mean)});
  meta.push_back({"stderr_xi1", format_double(ms.std_error)});

  if (g.format == "json") {
    json j;
    j["meta"] = meta_to_json(meta);
    json out = json::array();
    for (const EmbeddedSample& s : samples)
      out.push_back({{"xi", s.xi}, {"truncated", s.truncated}});
    j["samples"] = std::move(out);
    j["mean_xi1"] = json_double(ms.mean);
    return j.dump(2) + "\n";
  }
  std::ostringstream os;
  write_csv(os, samples, meta);
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  configure_threads();

  CLI::App app{"Branching random walk in random environment: survival criteria, "
               "moment growth profiles, and particle simulation"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  GlobalOpts g;
  app.add_option("--seed", g.seed, "Base seed for all randomized commands");
  app.add_option("--out", g.out, "Output path (default: stdout)");
  app.add_option("--format", g.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));

  std::string law_path;
  double tol = 1e-9;
  std::string h_grid_spec = "0.01:1.0:100";
  std::string x_grid_spec = "0.1:1.0:10";
  std::int64_t n = 200;
  std::int64_t replicas = 1;
  double gamma = 0.1;
  std::int64_t horizon = 100;
  std::int64_t k = 1;
  std::int64_t budget = 1'000'000;
  std::int64_t runs = 1;
  SimParams params;
  std::optional<std::uint64_t> env_seed;

  auto* validate_cmd = app.add_subcommand("validate", "Check a law against the ellipticity conditions");
  validate_cmd->add_option("law", law_path, "Law definition file")->required();

  auto* classify_cmd = app.add_subcommand("classify", "Survival classification and critical drifts");
  classify_cmd->add_option("law", law_path)->required();
  classify_cmd->add_option("--tol", tol, "Bisection tolerance for the critical drift");

  auto* phi_cmd = app.add_subcommand("phi-sweep", "Evaluate the drift functional over a grid");
  phi_cmd->add_option("law", law_path)->required();
  phi_cmd->add_option("--h-grid", h_grid_spec, "Drift grid a:b:steps");

  auto* beta_cmd = app.add_subcommand("beta", "Estimate the moment growth profile");
  beta_cmd->add_option("law", law_path)->required();
  beta_cmd->add_option("--n", n, "Horizon")->check(CLI::PositiveNumber);
  beta_cmd->add_option("--replicas", replicas, "Environments to average")
      ->check(CLI::PositiveNumber);
  beta_cmd->add_option("--grid", x_grid_spec, "Profile grid a:b:steps");
  beta_cmd->add_option("--gamma", gamma, "Lower grid cutoff");

  auto* sim_cmd = app.add_subcommand("simulate", "Forward particle simulation");
  sim_cmd->add_option("law", law_path)->required();
  sim_cmd->add_option("--horizon", horizon)->check(CLI::NonNegativeNumber);
  sim_cmd->add_option("--replicas", replicas)->check(CLI::PositiveNumber);
  sim_cmd->add_option("--cap", params.cap, "Population cap")->check(CLI::PositiveNumber);
  sim_cmd->add_option("--threshold", params.exact_threshold,
                      "Exact-convolution count limit")
      ->check(CLI::PositiveNumber);
  sim_cmd->add_option("--env-seed", env_seed,
                      "Fix one environment for all replicas (quenched mode)");

  auto* emb_cmd = app.add_subcommand("embedded", "Sample the embedded first-passage process");
  emb_cmd->add_option("law", law_path)->required();
  emb_cmd->add_option("--k", k, "Number of stages")->check(CLI::PositiveNumber);
  emb_cmd->add_option("--budget", budget, "Generation budget per stage")
      ->check(CLI::PositiveNumber);
  emb_cmd->add_option("--runs", runs)->check(CLI::PositiveNumber);
  emb_cmd->add_option("--env-seed", env_seed, "Environment seed (default: derived from --seed)");

  auto* phase_cmd = app.add_subcommand("phase-diagram", "Regime labels over a drift grid");
  phase_cmd->add_option("law", law_path)->required();
  phase_cmd->add_option("--h-grid", h_grid_spec, "Drift grid a:b:steps");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
    std::cerr << json{{"error", "config"}, {"message", e.what()}}.dump() << "\n";
    return kExitConfig;
  }

  try {
    const EnvironmentLaw law = parse_law_file(law_path);
    std::string body;
    if (*validate_cmd) body = cmd_validate(law, g);
    else if (*classify_cmd) body = cmd_classify(law, g, tol);
    else if (*phi_cmd) body = cmd_phi_sweep(law, g, parse_grid(h_grid_spec));
    else if (*beta_cmd) body = cmd_beta(law, g, parse_grid(x_grid_spec), n, replicas, gamma);
    else if (*sim_cmd) body = cmd_simulate(law, g, horizon, replicas, params, env_seed);
    else if (*emb_cmd) body = cmd_embedded(law, g, k, budget, runs, env_seed, params);
    else if (*phase_cmd) body = cmd_phase_diagram(law, g, parse_grid(h_grid_spec));
    emit(g, body);
    return kExitOk;
  } catch (const LawParseError& e) {
    std::cerr << json{{"error", "law_parse"}, {"message", e.what()}}.dump() << "\n";
    return kExitConfig;
  } catch (const CLI::ValidationError& e) {
    std::cerr << json{{"error", "config"}, {"message", e.what()}}.dump() << "\n";
    return kExitConfig;
  } catch (const LawValidationError& e) {
    std::cerr << json{{"error", "law_invalid"}, {"message", e.what()}}.dump() << "\n";
    return kExitLaw;
  } catch (const InsufficientDataError& e) {
    std::cerr << json{{"error", "insufficient_data"}, {"message", e.what()}}.dump() << "\n";
    return kExitRuntime;
  } catch (const std::invalid_argument& e) {
    std::cerr << json{{"error", "config"}, {"message", e.what()}}.dump() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << json{{"error", "internal"}, {"message", e.what()}}.dump() << "\n";
    return 1;
  }
}
