#pragma once

#include <stdexcept>
#include <string>

namespace rhea {

// Raised when an argument falls outside the domain an operation is defined on
// (out-of-range context, degenerate sample set, empty reference front, ...).
class DomainError : public std::invalid_argument {
 public:
  explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

// Raised by configuration validation before any work is started.
class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

// Unknown id in a lineage log.
class LookupError : public std::out_of_range {
 public:
  explicit LookupError(const std::string& what) : std::out_of_range(what) {}
};

// An internal invariant was found violated at runtime.
class InvariantError : public std::logic_error {
 public:
  explicit InvariantError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace rhea
