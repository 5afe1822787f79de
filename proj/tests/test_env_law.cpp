#include <cmath>
#include <random>

#include "doctest.h"

#include "brwre/env_law.hpp"
#include "brwre/errors.hpp"
#include "laws.hpp"

using namespace brwre;

TEST_SUITE_BEGIN("env_law");

TEST_CASE("offspring distribution families") {
  const auto pmf = OffspringDistribution::from_pmf({0.25, 0.0, 0.25, 0.5});
  CHECK(pmf.mean() == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(pmf.p_zero() == 0.25);

  const auto geo = OffspringDistribution::geometric(1.5);
  CHECK(geo.mean() == 1.5);
  CHECK(geo.variance() == doctest::Approx(1.5 * 2.5));
  CHECK(geo.p_zero() == doctest::Approx(0.4));

  const auto pair = OffspringDistribution::bernoulli_pair(0.25, 2);
  CHECK(pair.mean() == doctest::Approx(1.5));
  CHECK(pair.variance() == doctest::Approx(0.75 * 4.0 - 2.25));

  CHECK_THROWS_AS(OffspringDistribution::from_pmf({0.5, 0.4}), std::invalid_argument);
  CHECK_THROWS_AS(OffspringDistribution::from_pmf({-0.1, 1.1}), std::invalid_argument);
  CHECK_THROWS_AS(OffspringDistribution::geometric(0.0), std::invalid_argument);
  CHECK_THROWS_AS(OffspringDistribution::bernoulli_pair(0.5, 0), std::invalid_argument);
}

TEST_CASE("validate: trivial branching is a violation") {
  const auto law = testlaws::single_atom(OffspringDistribution::from_pmf({0.0, 1.0}), 0.5);
  const ValidationReport report = validate_law(law);
  CHECK_FALSE(report.ok);
  bool found = false;
  for (const auto& v : report.issues)
    found = found || v.message.find("branching trivial") != std::string::npos;
  CHECK(found);
}

TEST_CASE("validate: zero drift is not elliptic") {
  const auto law = testlaws::single_atom(OffspringDistribution::bernoulli_pair(0.2, 2), 0.0);
  const ValidationReport report = validate_law(law);
  CHECK_FALSE(report.ok);
  bool found = false;
  for (const auto& v : report.issues)
    found = found || v.message.find("drift not elliptic") != std::string::npos;
  CHECK(found);
}

TEST_CASE("validate: two-regime two-atom law passes both conditions") {
  const ValidationReport report = validate_law(testlaws::figure2());
  CHECK(report.ok);
  CHECK(report.strong_ok);
  CHECK(report.issues.empty());
}

TEST_CASE("validate: strong condition is reported separately") {
  // drift 1 is fine for the weak condition but not the strong one
  const auto law = testlaws::single_atom(OffspringDistribution::bernoulli_pair(0.25, 2), 1.0);
  const ValidationReport report = validate_law(law);
  CHECK(report.ok);
  CHECK_FALSE(report.strong_ok);
}

TEST_CASE("validate: delta range and weight sum") {
  auto law = testlaws::figure2();
  law.delta = 0.7;
  CHECK_FALSE(validate_law(law).ok);
  auto law2 = testlaws::figure2();
  law2.atoms[0].weight = 0.4;  // weights now sum to 0.9
  CHECK_FALSE(validate_law(law2).ok);
}

TEST_CASE("sampling: degenerate mixture hits the only weighted atom") {
  auto law = testlaws::figure2();
  law.atoms[0].weight = 1.0;
  law.atoms[1].weight = 0.0;
  const Environment env = sample_environment(law, 200, 5);
  for (std::int64_t x = 0; x < env.size(); ++x)
    CHECK(env.site(x).dist == law.atoms[0].dist);
}

TEST_CASE("sampling: deterministic in (law, length, seed) and prefix-stable") {
  const auto law = testlaws::figure1();
  const Environment a = sample_environment(law, 64, 99);
  const Environment b = sample_environment(law, 64, 99);
  const Environment longer = sample_environment(law, 128, 99);
  for (std::int64_t x = 0; x < 64; ++x) {
    CHECK(a.site(x).dist == b.site(x).dist);
    CHECK(a.site(x).drift == b.site(x).drift);
    CHECK(a.site(x).dist == longer.site(x).dist);
  }
  const Environment other = sample_environment(law, 64, 100);
  bool differs = false;
  for (std::int64_t x = 0; x < 64; ++x) differs = differs || !(a.site(x).dist == other.site(x).dist);
  CHECK(differs);
}

TEST_CASE("sampling: high-mean fraction matches the mixture weight") {
  const auto law = testlaws::figure1();
  const std::int64_t n = 100000;
  const Environment env = sample_environment(law, n, 31);
  std::int64_t high = 0;
  for (std::int64_t x = 0; x < n; ++x)
    if (env.site(x).dist.mean() > 1.0) ++high;
  CHECK(std::abs(double(high) / double(n) - 0.75) < 0.01);
}

TEST_CASE("sampling: chi-square goodness of fit at significance 1e-3") {
  auto law = testlaws::figure2();
  law.atoms[0].weight = 0.3;
  law.atoms[1].weight = 0.7;
  const std::int64_t n = 100000;
  const Environment env = sample_environment(law, n, 77);
  std::int64_t counts[2] = {0, 0};
  for (std::int64_t x = 0; x < n; ++x)
    ++counts[env.site(x).dist.mean() > 1.0 ? 0 : 1];
  const double expected[2] = {0.3 * double(n), 0.7 * double(n)};
  double chi2 = 0.0;
  for (int i = 0; i < 2; ++i)
    chi2 += (double(counts[i]) - expected[i]) * (double(counts[i]) - expected[i]) / expected[i];
  CHECK(chi2 < 10.828);  // chi-square critical value, 1 dof, p = 1e-3
}

TEST_CASE("sampling: every site satisfies the declared ellipticity bounds") {
  for (const auto& law : {testlaws::figure1(), testlaws::figure2(), testlaws::example2()}) {
    const Environment env = sample_environment(law, 2000, 13);
    for (std::int64_t x = 0; x < env.size(); ++x) {
      CHECK(env.site(x).dist.p_zero() <= 1.0 - law.delta);
      CHECK(env.site(x).drift >= law.delta);
      CHECK(env.site(x).drift <= 1.0);
    }
  }
}

TEST_CASE("sampling: invalid law is rejected") {
  auto law = testlaws::figure2();
  law.atoms[0].weight = 0.4;
  CHECK_THROWS_AS(sample_environment(law, 10, 1), LawValidationError);
  CHECK_THROWS_AS(sample_environment(testlaws::figure2(), 0, 1), std::invalid_argument);
}

TEST_CASE("extremes: two-atom law at drift 0.1") {
  const auto law = testlaws::figure1(0.1);
  const LawExtremes ex = law_extremes(law);
  CHECK(ex.max_mean == doctest::Approx(10.0 / 9.0).epsilon(1e-15));
  CHECK(std::abs(ex.max_stay_mean - 1.0) <= 1e-15);
}

TEST_CASE("extremes: deterministic atom") {
  const auto law = testlaws::single_atom(OffspringDistribution::bernoulli_pair(0.25, 2), 0.4);
  const LawExtremes ex = law_extremes(law);
  CHECK(ex.max_mean == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(ex.max_stay_mean == doctest::Approx(1.5 * 0.6).epsilon(1e-15));
}

TEST_CASE("extremes: density law upper endpoint") {
  const LawExtremes ex = law_extremes(testlaws::example2());
  CHECK(ex.max_mean == 2.0);
  CHECK(1.0 - 1.0 / ex.max_mean == 0.5);  // local-survival threshold
}

TEST_CASE("extremes: invariant under atom permutation and splitting") {
  std::mt19937_64 gen(17);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    auto law = testlaws::figure1(0.1 + 0.8 * unit(gen));
    const LawExtremes before = law_extremes(law);

    auto permuted = law;
    std::swap(permuted.atoms[0], permuted.atoms[1]);
    const LawExtremes after_perm = law_extremes(permuted);
    CHECK(before.max_mean == after_perm.max_mean);
    CHECK(before.max_stay_mean == after_perm.max_stay_mean);

    auto split = law;
    LawAtom half = split.atoms[0];
    half.weight /= 2.0;
    split.atoms[0].weight /= 2.0;
    split.atoms.push_back(half);
    const LawExtremes after_split = law_extremes(split);
    CHECK(before.max_mean == after_split.max_mean);
    CHECK(before.max_stay_mean == after_split.max_stay_mean);
  }
}

TEST_CASE("law hash tracks content") {
  CHECK(law_hash(testlaws::figure1()) == law_hash(testlaws::figure1()));
  CHECK(law_hash(testlaws::figure1()) != law_hash(testlaws::figure2()));
  CHECK(law_hash(testlaws::figure1(0.15)) != law_hash(testlaws::figure1(0.2)));
  CHECK(law_hash_hex(testlaws::figure2()).size() == 16);
}

TEST_CASE("with_drift overrides every component") {
  const auto atomic = testlaws::figure2(0.5).with_drift(0.8);
  for (const auto& a : atomic.atoms) CHECK(a.drift == 0.8);
  const auto dens = testlaws::example2(0.5).with_drift(0.9);
  CHECK(dens.drift == 0.9);
}

TEST_SUITE_END();
