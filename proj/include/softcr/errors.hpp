#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace softcr {

/// Raised when an input violates a documented precondition or invariant.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {

inline void require(bool condition, const std::string& message) {
  if (!condition) throw ValidationError(message);
}

inline void require_positive(double value, const char* name) {
  if (!std::isfinite(value) || value <= 0.0)
    throw ValidationError(std::string(name) + " must be finite and strictly positive");
}

inline void require_finite(double value, const char* name) {
  if (!std::isfinite(value)) throw ValidationError(std::string(name) + " must be finite");
}

}  // namespace detail
}  // namespace softcr
