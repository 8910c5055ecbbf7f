#pragma once

#include <stdexcept>
#include <string>

namespace logse {

/// Violated precondition on user-facing input (bad domain, non-finite value,
/// grid too coarse).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Iterative solver stopped without meeting its convergence criterion.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline void require(bool condition, const std::string& message) {
  if (!condition) throw DomainError(message);
}

}  // namespace detail
}  // namespace logse
