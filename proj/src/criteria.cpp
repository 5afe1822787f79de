#include "brwre/criteria.hpp"

#include <cmath>
#include <stdexcept>

#include "brwre/errors.hpp"
#include "brwre/numeric.hpp"

namespace brwre {

namespace {

constexpr double kQuadTol = 1e-11;  // per-piece absolute quadrature target

void require_valid(const EnvironmentLaw& law, const char* where) {
  const ValidationReport report = validate_law(law);
  if (!report.ok)
    throw LawValidationError(std::string(where) + ": invalid law: " + report.summary());
}

// log(m h / (1 - m (1 - h))) for one site; +inf once the stay-and-branch
// mean reaches 1 (the geometric series for the embedded mean diverges).
double phi_site(double m, double h) {
  const double stay = m * (1.0 - h);
  if (stay >= 1.0) return kInf;
  if (m <= 0.0) return kNegInf;
  return std::log(m * h / (1.0 - stay));
}

// Expectation of f(mean) over a density law, where f is +inf on
// [singular_from, inf). Pieces are smooth away from that point, so each is
// integrated adaptively, splitting at the singular abscissa when needed.
double density_expectation(const EnvironmentLaw& law,
                           const std::function<double(double)>& f,
                           double singular_from) {
  double acc = 0.0;
  for (const DensityPiece& p : law.pieces) {
    if (p.hi > singular_from) return kInf;  // positive mass at or beyond the singularity
    // p.hi may coincide with the singular abscissa; the quadrature nodes are
    // interior, and the log divergence there is integrable.
    acc += integrate_gk(f, p.lo, p.hi, kQuadTol) * p.density;
  }
  return acc;
}

}  // namespace

bool classify_local(const EnvironmentLaw& law) {
  require_valid(law, "classify_local");
  return law_extremes(law).max_stay_mean > 1.0;
}

// Core expectation without law validation: phi evaluates the functional at
// arbitrary drifts in (0, 1], below the declared ellipticity bound included.
static double gs_functional_unchecked(const EnvironmentLaw& law) {
  if (law.kind == LawKind::Atomic) {
    double acc = 0.0;
    for (const LawAtom& a : law.atoms) {
      if (a.weight <= 0.0) continue;
      const double v = phi_site(a.dist.mean(), a.drift);
      if (v == kInf) return kInf;
      acc += a.weight * v;
    }
    return acc;
  }
  const double h = law.drift;
  const double singular_from = h < 1.0 ? 1.0 / (1.0 - h) : kInf;
  return density_expectation(
      law, [h](double m) { return phi_site(m, h); }, singular_from);
}

double gs_functional(const EnvironmentLaw& law) {
  require_valid(law, "gs_functional");
  return gs_functional_unchecked(law);
}

SurvivalClassification classify_survival(const EnvironmentLaw& law) {
  SurvivalClassification c;
  c.lambda = law_extremes(law).max_stay_mean;
  c.local = classify_local(law);
  c.gs_functional_value = gs_functional(law);
  c.global = c.local || c.gs_functional_value > 0.0;
  c.case_label = c.local ? SurvivalCase::LS
                         : (c.global ? SurvivalCase::GSOnly : SurvivalCase::Extinct);
  return c;
}

double phi(const EnvironmentLaw& law, double h) {
  if (!(h > 0.0 && h <= 1.0)) throw std::invalid_argument("phi: h must lie in (0, 1]");
  require_valid(law, "phi");
  return gs_functional_unchecked(law.with_drift(h));
}

double phi_derivative(const EnvironmentLaw& law, double h) {
  require_valid(law, "phi_derivative");
  const double m_max = law_extremes(law).max_mean;
  const double h_ls = m_max > 1.0 ? 1.0 - 1.0 / m_max : 0.0;
  if (!(h > h_ls && h <= 1.0))
    throw std::domain_error("phi_derivative: h must lie in (h_ls, 1]");
  const auto site = [h](double m) { return 1.0 / h - m / (1.0 - m * (1.0 - h)); };
  if (law.kind == LawKind::Atomic) {
    double acc = 0.0;
    for (const LawAtom& a : law.atoms) {
      if (a.weight <= 0.0) continue;
      acc += a.weight * site(a.dist.mean());
    }
    return acc;
  }
  // h > h_ls keeps m (1 - h) < 1 across the support, so no singularity.
  return density_expectation(law, site, kInf);
}

double embedded_offspring_mean(const SiteEnv& site) {
  const double m = site.dist.mean();
  const double stay = m * (1.0 - site.drift);
  if (stay >= 1.0) return kInf;
  return m * site.drift / (1.0 - stay);
}

CriticalDrifts critical_drifts(const EnvironmentLaw& law, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("critical_drifts: tol must be > 0");
  require_valid(law, "critical_drifts");

  CriticalDrifts out;
  out.tol = tol;
  const double m_max = law_extremes(law).max_mean;
  if (m_max <= 1.0) {
    // phi <= 0 everywhere: no global survival at any drift.
    out.h_ls = 0.0;
    out.h_gs = 0.0;
    out.theorem_case = TheoremCase::MLeOne;
    return out;
  }
  out.h_ls = 1.0 - 1.0 / m_max;

  const double phi_at_one = phi(law, 1.0);
  if (phi_at_one > 0.0) {
    out.h_gs = kInf;
    out.theorem_case = TheoremCase::C;
    return out;
  }
  const double phi_at_ls = phi(law, out.h_ls);  // may be +inf
  if (phi_at_ls < 0.0) {
    out.h_gs = out.h_ls;
    out.theorem_case = TheoremCase::B;
    return out;
  }

  // Unique sign change on [h_ls, 1]: phi starts >= 0, ends <= 0, and is
  // strictly decreasing at every zero.
  double lo = out.h_ls, hi = 1.0;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (phi(law, mid) >= 0.0 ? lo : hi) = mid;
  }
  out.h_gs = 0.5 * (lo + hi);
  out.theorem_case = TheoremCase::A;
  return out;
}

std::vector<Regime> classify_regimes(const EnvironmentLaw& law,
                                     std::span<const double> h_grid) {
  const CriticalDrifts cd = critical_drifts(law);
  std::vector<Regime> out;
  out.reserve(h_grid.size());
  for (double h : h_grid) {
    if (h < cd.h_ls)
      out.push_back(Regime::I);
    else if (h < cd.h_gs)
      out.push_back(Regime::II);
    else
      out.push_back(Regime::III);  // h == h_gs already has no global survival
  }
  return out;
}

const char* to_string(Regime r) {
  switch (r) {
    case Regime::I: return "I";
    case Regime::II: return "II";
    case Regime::III: return "III";
  }
  return "?";
}

const char* to_string(TheoremCase c) {
  switch (c) {
    case TheoremCase::MLeOne: return "M_le_1";
    case TheoremCase::A: return "a";
    case TheoremCase::B: return "b";
    case TheoremCase::C: return "c";
  }
  return "?";
}

const char* to_string(SurvivalCase c) {
  switch (c) {
    case SurvivalCase::LS: return "LS";
    case SurvivalCase::GSOnly: return "GS_only";
    case SurvivalCase::Extinct: return "extinct";
  }
  return "?";
}

}  // namespace brwre
