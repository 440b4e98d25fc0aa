#pragma once

#include <stdexcept>
#include <string>

namespace cosupp {

/// Base class for all engine errors.
struct error : std::runtime_error {
  explicit error(const std::string& what) : std::runtime_error(what) {}
};

/// A query that cannot be decided with the available structure.  The reason
/// names the blocking step (attribute-only ring, unverified primality, ...).
struct unknown_error : error {
  explicit unknown_error(const std::string& reason) : error(reason) {}
};

/// Raised when a computation exceeds the configured reduction-step budget.
struct resource_limit_error : error {
  explicit resource_limit_error(const std::string& what) : error(what) {}
};

}  // namespace cosupp
