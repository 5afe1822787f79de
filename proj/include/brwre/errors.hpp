#pragma once

#include <stdexcept>
#include <string>

namespace brwre {

// An operation received a law that fails its ellipticity/structure checks.
class LawValidationError : public std::runtime_error {
 public:
  explicit LawValidationError(const std::string& what) : std::runtime_error(what) {}
};

// A randomized estimate could not be formed (e.g. no surviving replicas).
class InsufficientDataError : public std::runtime_error {
 public:
  explicit InsufficientDataError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace brwre
