#pragma once

#include <span>
#include <vector>

#include "brwre/env_law.hpp"

namespace brwre {

enum class SurvivalCase { LS, GSOnly, Extinct };

struct SurvivalClassification {
  bool local = false;
  bool global = false;
  double gs_functional_value = 0;  // may be +inf
  double lambda = 0;
  SurvivalCase case_label = SurvivalCase::Extinct;
};

// Local survival holds iff Lambda > 1 (strictly).
bool classify_local(const EnvironmentLaw& law);

// E[log(m h / (1 - m (1 - h)))] over the law. Sites with m (1 - h) >= 1 have
// infinite embedded offspring mean and push the expectation to +inf whenever
// they carry positive mass.
double gs_functional(const EnvironmentLaw& law);

SurvivalClassification classify_survival(const EnvironmentLaw& law);

// The constant-drift functional: gs_functional of the law with every drift
// replaced by h. Requires h in (0, 1].
double phi(const EnvironmentLaw& law, double h);

// d/dh of phi: E[1/h - m / (1 - m (1 - h))]. Only defined right of the
// local-survival threshold, where the expectation is finite.
double phi_derivative(const EnvironmentLaw& law, double h);

// Closed-form mean of the embedded first-passage offspring count at one site.
double embedded_offspring_mean(const SiteEnv& site);

enum class TheoremCase { MLeOne, A, B, C };

struct CriticalDrifts {
  double h_ls = 0;       // local-survival threshold
  double h_gs = 0;       // global-survival threshold; +inf when GS holds for all h
  TheoremCase theorem_case = TheoremCase::MLeOne;
  double tol = 0;
};

// Critical drifts of the constant-drift family built from the law's
// offspring marginal. h_gs is found by sign-change bisection of phi.
CriticalDrifts critical_drifts(const EnvironmentLaw& law, double tol = 1e-9);

enum class Regime { I, II, III };  // I: LS, II: GS only, III: no GS

std::vector<Regime> classify_regimes(const EnvironmentLaw& law,
                                     std::span<const double> h_grid);

const char* to_string(Regime r);
const char* to_string(TheoremCase c);
const char* to_string(SurvivalCase c);

}  // namespace brwre
