#pragma once

#include <stdexcept>
#include <string>

namespace singser {

// Invalid mathematical input (empty tuple, zero shift, principal character
// where a non-principal one is required, ...).
class DomainError : public std::runtime_error {
 public:
  explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

// Request exceeds a configured resource bound (sieve size, subset count,
// enumeration cardinality).  Distinct from DomainError so callers can map it
// to a dedicated exit code.
class CapacityError : public std::runtime_error {
 public:
  explicit CapacityError(const std::string& msg) : std::runtime_error(msg) {}
};

// Numerical routine failed to reach its target accuracy.
class ToleranceError : public std::runtime_error {
 public:
  explicit ToleranceError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace singser
