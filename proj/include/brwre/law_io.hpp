#pragma once

#include <stdexcept>
#include <string>

#include "json.hpp"

#include "brwre/env_law.hpp"

namespace brwre {

class LawParseError : public std::runtime_error {
 public:
  explicit LawParseError(const std::string& what) : std::runtime_error(what) {}
};

// Strict parsing: unknown keys are rejected; structural checks only.
// Semantic checks (ellipticity, weight sums) stay with validate_law.
EnvironmentLaw parse_law_json(const nlohmann::json& j);
EnvironmentLaw parse_law_string(const std::string& text);
EnvironmentLaw parse_law_file(const std::string& path);

nlohmann::json law_to_json(const EnvironmentLaw& law);

}  // namespace brwre
