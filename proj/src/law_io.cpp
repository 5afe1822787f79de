#include "brwre/law_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace brwre {

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed,
                         const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key))
      throw LawParseError("unknown key \"" + key + "\" in " + where);
  }
}

double require_number(const json& obj, const std::string& key, const std::string& where) {
  if (!obj.contains(key)) throw LawParseError("missing \"" + key + "\" in " + where);
  if (!obj[key].is_number()) throw LawParseError("\"" + key + "\" must be a number in " + where);
  return obj[key].get<double>();
}

OffspringDistribution parse_offspring(const json& atom, const std::string& where) {
  const int specs = int(atom.contains("pmf")) + int(atom.contains("geometric_mean")) +
                    int(atom.contains("bernoulli_pair"));
  if (specs != 1)
    throw LawParseError(where +
                        ": exactly one of pmf / geometric_mean / bernoulli_pair required");
  if (atom.contains("pmf")) {
    if (!atom["pmf"].is_array()) throw LawParseError(where + ": pmf must be an array");
    std::vector<double> pmf;
    for (const auto& v : atom["pmf"]) {
      if (!v.is_number()) throw LawParseError(where + ": pmf entries must be numbers");
      pmf.push_back(v.get<double>());
    }
    try {
      return OffspringDistribution::from_pmf(std::move(pmf));
    } catch (const std::invalid_argument& e) {
      throw LawParseError(where + ": " + e.what());
    }
  }
  if (atom.contains("geometric_mean")) {
    try {
      return OffspringDistribution::geometric(require_number(atom, "geometric_mean", where));
    } catch (const std::invalid_argument& e) {
      throw LawParseError(where + ": " + e.what());
    }
  }
  const json& bp = atom["bernoulli_pair"];
  if (!bp.is_object()) throw LawParseError(where + ": bernoulli_pair must be an object");
  reject_unknown_keys(bp, {"p0", "k"}, where + ".bernoulli_pair");
  const double p0 = require_number(bp, "p0", where + ".bernoulli_pair");
  const double k = require_number(bp, "k", where + ".bernoulli_pair");
  if (k != std::floor(k)) throw LawParseError(where + ": bernoulli_pair k must be an integer");
  try {
    return OffspringDistribution::bernoulli_pair(p0, std::int64_t(k));
  } catch (const std::invalid_argument& e) {
    throw LawParseError(where + ": " + e.what());
  }
}

}  // namespace

EnvironmentLaw parse_law_json(const json& j) {
  if (!j.is_object()) throw LawParseError("law document must be an object");
  if (!j.contains("kind") || !j["kind"].is_string())
    throw LawParseError("law document needs a string \"kind\"");
  const std::string kind = j["kind"].get<std::string>();

  if (kind == "atomic") {
    reject_unknown_keys(j, {"kind", "delta", "atoms"}, "atomic law");
    if (!j.contains("atoms") || !j["atoms"].is_array() || j["atoms"].empty())
      throw LawParseError("atomic law needs a non-empty \"atoms\" array");
    std::vector<LawAtom> atoms;
    std::size_t index = 0;
    for (const auto& a : j["atoms"]) {
      const std::string where = "atoms[" + std::to_string(index++) + "]";
      if (!a.is_object()) throw LawParseError(where + " must be an object");
      reject_unknown_keys(a, {"pmf", "geometric_mean", "bernoulli_pair", "drift", "weight"},
                          where);
      LawAtom atom{parse_offspring(a, where), require_number(a, "drift", where),
                   require_number(a, "weight", where)};
      atoms.push_back(std::move(atom));
    }
    EnvironmentLaw law = EnvironmentLaw::atomic(std::move(atoms));
    if (j.contains("delta")) law.delta = require_number(j, "delta", "law");
    return law;
  }

  if (kind == "density_constant_drift") {
    reject_unknown_keys(j, {"kind", "delta", "drift", "family_k", "pieces"}, "density law");
    if (!j.contains("pieces") || !j["pieces"].is_array() || j["pieces"].empty())
      throw LawParseError("density law needs a non-empty \"pieces\" array");
    std::vector<DensityPiece> pieces;
    std::size_t index = 0;
    for (const auto& p : j["pieces"]) {
      const std::string where = "pieces[" + std::to_string(index++) + "]";
      if (!p.is_object()) throw LawParseError(where + " must be an object");
      reject_unknown_keys(p, {"from", "to", "density"}, where);
      pieces.push_back({require_number(p, "from", where), require_number(p, "to", where),
                        require_number(p, "density", where)});
    }
    const double drift = require_number(j, "drift", "density law");
    EnvironmentLaw law = EnvironmentLaw::density(std::move(pieces), drift);
    if (j.contains("delta")) law.delta = require_number(j, "delta", "law");
    if (j.contains("family_k")) {
      const double k = require_number(j, "family_k", "law");
      if (k != std::floor(k) || k < 1) throw LawParseError("family_k must be a positive integer");
      law.family_k = std::int64_t(k);
    }
    return law;
  }

  throw LawParseError("unknown law kind \"" + kind + "\"");
}

EnvironmentLaw parse_law_string(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw LawParseError(std::string("malformed law document: ") + e.what());
  }
  return parse_law_json(j);
}

EnvironmentLaw parse_law_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw LawParseError("cannot open law file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_law_string(buf.str());
}

nlohmann::json law_to_json(const EnvironmentLaw& law) {
  json j;
  j["delta"] = law.delta;
  if (law.kind == LawKind::Atomic) {
    j["kind"] = "atomic";
    json atoms = json::array();
    for (const LawAtom& a : law.atoms) {
      json atom;
      switch (a.dist.kind()) {
        case OffspringKind::Explicit:
          atom["pmf"] = a.dist.pmf();
          break;
        case OffspringKind::Geometric:
          atom["geometric_mean"] = a.dist.mean();
          break;
        case OffspringKind::BernoulliPair:
          atom["bernoulli_pair"] = {{"p0", a.dist.pair_p0()}, {"k", a.dist.pair_k()}};
          break;
      }
      atom["drift"] = a.drift;
      atom["weight"] = a.weight;
      atoms.push_back(std::move(atom));
    }
    j["atoms"] = std::move(atoms);
  } else {
    j["kind"] = "density_constant_drift";
    j["drift"] = law.drift;
    j["family_k"] = law.family_k;
    json pieces = json::array();
    for (const DensityPiece& p : law.pieces)
      pieces.push_back({{"from", p.lo}, {"to", p.hi}, {"density", p.density}});
    j["pieces"] = std::move(pieces);
  }
  return j;
}

}  // namespace brwre
