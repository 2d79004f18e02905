#pragma once

#include <stdexcept>
#include <string>

namespace hyptm {

/// A mathematical hypothesis of an estimate is violated by the input (for
/// example a window norm >= 1 in the local Trudinger-Moser bound).
class HypothesisError : public std::domain_error {
 public:
  explicit HypothesisError(const std::string& what) : std::domain_error(what) {}
};

/// The requested object cannot be represented on the given grid.
class ResolutionError : public std::domain_error {
 public:
  explicit ResolutionError(const std::string& what) : std::domain_error(what) {}
};

}  // namespace hyptm
