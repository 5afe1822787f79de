#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "brwre/offspring.hpp"

namespace brwre {

// One mixture component of an environment law: an offspring distribution
// paired with a drift (probability of stepping right) and a mixture weight.
struct LawAtom {
  OffspringDistribution dist;
  double drift = 1.0;  // in (0, 1]
  double weight = 1.0;
};

// Constant-density piece of a mean-offspring distribution on [lo, hi).
struct DensityPiece {
  double lo = 0.0;
  double hi = 0.0;
  double density = 0.0;
};

enum class LawKind { Atomic, DensityConstantDrift };

// The site law: either a finite mixture of (offspring, drift) atoms, or a
// piecewise-constant density for the offspring mean combined with one fixed
// drift. `delta` is the declared ellipticity constant: every site must have
// P(no offspring) <= 1 - delta and drift in [delta, 1]; the strong variant
// additionally needs drift <= 1 - delta.
struct EnvironmentLaw {
  LawKind kind = LawKind::Atomic;
  double delta = 0.05;
  std::vector<LawAtom> atoms;       // Atomic
  std::vector<DensityPiece> pieces; // DensityConstantDrift
  double drift = 1.0;               // DensityConstantDrift
  std::int64_t family_k = 2;        // mean -> bernoulli_pair(1 - m/k, k)

  static EnvironmentLaw atomic(std::vector<LawAtom> atoms, double delta = 0.05);
  static EnvironmentLaw density(std::vector<DensityPiece> pieces, double drift,
                                double delta = 0.05, std::int64_t family_k = 2);

  // Copy of the law with every drift replaced by h.
  EnvironmentLaw with_drift(double h) const;

  // Stable serialization used for hashing and reproducibility metadata.
  std::string canonical() const;
};

struct ValidationIssue {
  std::string message;
  bool strong_only = false;  // violates only the strong ellipticity condition
};

struct ValidationReport {
  bool ok = false;         // structure plus the weak ellipticity condition
  bool strong_ok = false;  // additionally drift <= 1 - delta everywhere
  std::vector<ValidationIssue> issues;
  std::string summary() const;
};

ValidationReport validate_law(const EnvironmentLaw& law);

struct SiteEnv {
  OffspringDistribution dist;
  double drift = 1.0;
};

// A realized i.i.d. environment over sites 0..size()-1. Site x is a pure
// function of (law, seed, x), so environments of different lengths drawn
// from the same seed agree on their common prefix.
class Environment {
 public:
  Environment(std::vector<SiteEnv> sites, std::uint64_t seed, std::string law_id);

  const SiteEnv& site(std::int64_t x) const;
  std::int64_t size() const { return std::int64_t(sites_.size()); }
  std::uint64_t seed() const { return seed_; }
  const std::string& law_id() const { return law_id_; }

 private:
  std::vector<SiteEnv> sites_;
  std::uint64_t seed_ = 0;
  std::string law_id_;
};

// Draws `length` i.i.d. sites. Throws LawValidationError if the law fails
// validate_law.
Environment sample_environment(const EnvironmentLaw& law, std::int64_t length,
                               std::uint64_t seed);

struct LawExtremes {
  double max_mean = 0.0;       // M: essential supremum of the offspring mean
  double max_stay_mean = 0.0;  // Lambda: essential supremum of mean * (1 - drift)
};
LawExtremes law_extremes(const EnvironmentLaw& law);

// Offspring distribution assigned to a sampled mean under a density law.
OffspringDistribution offspring_for_mean(double mean, std::int64_t family_k);

std::uint64_t law_hash(const EnvironmentLaw& law);
std::string law_hash_hex(const EnvironmentLaw& law);

}  // namespace brwre
