#include "brwre/env_law.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "brwre/errors.hpp"
#include "brwre/numeric.hpp"

namespace brwre {

namespace {

constexpr double kWeightSumTol = 1e-12;

std::string format_g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void check_delta(const EnvironmentLaw& law, ValidationReport& report) {
  if (!(law.delta > 0.0 && law.delta < 0.5))
    report.issues.push_back({"delta must lie in (0, 1/2)", false});
}

void validate_atomic(const EnvironmentLaw& law, ValidationReport& report) {
  if (law.atoms.empty()) {
    report.issues.push_back({"atomic law has no atoms", false});
    return;
  }
  double weight_sum = 0.0;
  double trivial_weight = 0.0;
  for (std::size_t i = 0; i < law.atoms.size(); ++i) {
    const LawAtom& a = law.atoms[i];
    const std::string tag = "atom " + std::to_string(i);
    if (!(a.weight >= 0.0 && a.weight <= 1.0))
      report.issues.push_back({tag + ": weight outside [0, 1]", false});
    weight_sum += a.weight;
    if (a.weight <= 0.0) continue;  // zero-weight atoms carry no mass
    if (!std::isfinite(a.dist.mean()))
      report.issues.push_back({tag + ": offspring mean not finite", false});
    if (a.dist.p_zero() > 1.0 - law.delta)
      report.issues.push_back({tag + ": death probability not elliptic (p0 > 1 - delta)", false});
    if (!(a.drift >= law.delta && a.drift <= 1.0))
      report.issues.push_back({tag + ": drift not elliptic (h outside [delta, 1])", false});
    else if (a.drift > 1.0 - law.delta)
      report.issues.push_back({tag + ": drift exceeds 1 - delta (strong condition)", true});
    if (a.dist.single_child_certain()) trivial_weight += a.weight;
  }
  if (std::abs(weight_sum - 1.0) > kWeightSumTol)
    report.issues.push_back({"atom weights must sum to 1", false});
  if (trivial_weight >= 1.0 - kWeightSumTol)
    report.issues.push_back({"branching trivial: all mass on exactly one child", false});
}

void validate_density(const EnvironmentLaw& law, ValidationReport& report) {
  if (law.pieces.empty()) {
    report.issues.push_back({"density law has no pieces", false});
    return;
  }
  if (law.family_k < 1)
    report.issues.push_back({"family_k must be >= 1", false});
  double mass = 0.0;
  for (std::size_t i = 0; i < law.pieces.size(); ++i) {
    const DensityPiece& p = law.pieces[i];
    const std::string tag = "piece " + std::to_string(i);
    if (!(p.lo < p.hi))
      report.issues.push_back({tag + ": empty or inverted interval", false});
    if (!(p.density > 0.0))
      report.issues.push_back({tag + ": density must be > 0", false});
    mass += p.density * (p.hi - p.lo);
    if (!(p.lo > 0.0))
      report.issues.push_back({tag + ": offspring means must be > 0", false});
    if (p.hi > double(law.family_k) + 1e-12)
      report.issues.push_back({tag + ": mean exceeds family_k (no pmf available)", false});
    // Worst-case death probability over the piece is at the lower mean.
    if (1.0 - p.lo / double(law.family_k) > 1.0 - law.delta)
      report.issues.push_back({tag + ": death probability not elliptic (p0 > 1 - delta)", false});
  }
  if (std::abs(mass - 1.0) > kWeightSumTol)
    report.issues.push_back({"piece densities must integrate to 1", false});
  if (!(law.drift >= law.delta && law.drift <= 1.0))
    report.issues.push_back({"drift not elliptic (h outside [delta, 1])", false});
  else if (law.drift > 1.0 - law.delta)
    report.issues.push_back({"drift exceeds 1 - delta (strong condition)", true});
}

}  // namespace

EnvironmentLaw EnvironmentLaw::atomic(std::vector<LawAtom> atoms, double delta) {
  EnvironmentLaw law;
  law.kind = LawKind::Atomic;
  law.delta = delta;
  law.atoms = std::move(atoms);
  return law;
}

EnvironmentLaw EnvironmentLaw::density(std::vector<DensityPiece> pieces, double drift,
                                       double delta, std::int64_t family_k) {
  EnvironmentLaw law;
  law.kind = LawKind::DensityConstantDrift;
  law.delta = delta;
  law.pieces = std::move(pieces);
  law.drift = drift;
  law.family_k = family_k;
  return law;
}

EnvironmentLaw EnvironmentLaw::with_drift(double h) const {
  EnvironmentLaw out = *this;
  if (kind == LawKind::Atomic) {
    for (LawAtom& a : out.atoms) a.drift = h;
  } else {
    out.drift = h;
  }
  return out;
}

std::string EnvironmentLaw::canonical() const {
  std::string s;
  if (kind == LawKind::Atomic) {
    s = "atomic|delta=" + format_g17(delta);
    for (const LawAtom& a : atoms)
      s += "|atom{" + a.dist.describe() + ",h=" + format_g17(a.drift) +
           ",w=" + format_g17(a.weight) + "}";
  } else {
    s = "density|delta=" + format_g17(delta) + "|h=" + format_g17(drift) +
        "|k=" + std::to_string(family_k);
    for (const DensityPiece& p : pieces)
      s += "|piece{" + format_g17(p.lo) + "," + format_g17(p.hi) + "," +
           format_g17(p.density) + "}";
  }
  return s;
}

std::string ValidationReport::summary() const {
  if (issues.empty()) return "ok";
  std::string s;
  for (const ValidationIssue& v : issues) {
    if (!s.empty()) s += "; ";
    s += v.message;
  }
  return s;
}

ValidationReport validate_law(const EnvironmentLaw& law) {
  ValidationReport report;
  check_delta(law, report);
  if (law.kind == LawKind::Atomic)
    validate_atomic(law, report);
  else
    validate_density(law, report);
  bool weak = true, strong = true;
  for (const ValidationIssue& v : report.issues) {
    strong = false;
    if (!v.strong_only) weak = false;
  }
  report.ok = weak;
  report.strong_ok = weak && strong;
  return report;
}

Environment::Environment(std::vector<SiteEnv> sites, std::uint64_t seed, std::string law_id)
    : sites_(std::move(sites)), seed_(seed), law_id_(std::move(law_id)) {}

const SiteEnv& Environment::site(std::int64_t x) const {
  if (x < 0 || x >= size()) throw std::out_of_range("Environment::site: index out of range");
  return sites_[std::size_t(x)];
}

OffspringDistribution offspring_for_mean(double mean, std::int64_t family_k) {
  return OffspringDistribution::bernoulli_pair(1.0 - mean / double(family_k), family_k);
}

Environment sample_environment(const EnvironmentLaw& law, std::int64_t length,
                               std::uint64_t seed) {
  if (length < 1) throw std::invalid_argument("sample_environment: length must be >= 1");
  const ValidationReport report = validate_law(law);
  if (!report.ok)
    throw LawValidationError("sample_environment: invalid law: " + report.summary());

  std::vector<SiteEnv> sites;
  sites.reserve(std::size_t(length));
  for (std::int64_t x = 0; x < length; ++x) {
    RngStream rng(seed, std::uint64_t(x));  // counter-based: prefix-stable in length
    if (law.kind == LawKind::Atomic) {
      const double u = rng.next_unit();
      double cum = 0.0;
      std::size_t pick = law.atoms.size() - 1;
      for (std::size_t i = 0; i < law.atoms.size(); ++i) {
        cum += law.atoms[i].weight;
        if (u < cum) {
          pick = i;
          break;
        }
      }
      sites.push_back({law.atoms[pick].dist, law.atoms[pick].drift});
    } else {
      const double u = rng.next_unit();
      double cum = 0.0;
      std::size_t pick = law.pieces.size() - 1;
      for (std::size_t i = 0; i < law.pieces.size(); ++i) {
        cum += law.pieces[i].density * (law.pieces[i].hi - law.pieces[i].lo);
        if (u < cum) {
          pick = i;
          break;
        }
      }
      const DensityPiece& p = law.pieces[pick];
      const double mean = p.lo + rng.next_unit() * (p.hi - p.lo);
      sites.push_back({offspring_for_mean(mean, law.family_k), law.drift});
    }
  }
  return Environment(std::move(sites), seed, law_hash_hex(law));
}

LawExtremes law_extremes(const EnvironmentLaw& law) {
  LawExtremes ex;
  ex.max_mean = kNegInf;
  ex.max_stay_mean = kNegInf;
  if (law.kind == LawKind::Atomic) {
    for (const LawAtom& a : law.atoms) {
      if (a.weight <= 0.0) continue;  // essential supremum ignores null atoms
      ex.max_mean = std::max(ex.max_mean, a.dist.mean());
      ex.max_stay_mean = std::max(ex.max_stay_mean, a.dist.mean() * (1.0 - a.drift));
    }
  } else {
    for (const DensityPiece& p : law.pieces) {
      if (!(p.density > 0.0)) continue;
      ex.max_mean = std::max(ex.max_mean, p.hi);
      ex.max_stay_mean = std::max(ex.max_stay_mean, p.hi * (1.0 - law.drift));
    }
  }
  return ex;
}

std::uint64_t law_hash(const EnvironmentLaw& law) {
  // FNV-1a over the canonical serialization.
  const std::string s = law.canonical();
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

std::string law_hash_hex(const EnvironmentLaw& law) {
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", (unsigned long long)law_hash(law));
  return buf;
}

}  // namespace brwre
