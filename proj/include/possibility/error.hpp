#pragma once

#include <stdexcept>
#include <string>

namespace possibility {

/// Broad failure classes. The CLI maps these onto exit codes.
enum class ErrorCategory {
  usage,  // malformed invocation
  data,   // invalid input values, schema violations
  math,   // divergence, infeasibility
};

inline const char* to_string(ErrorCategory c) {
  switch (c) {
    case ErrorCategory::usage: return "usage";
    case ErrorCategory::data: return "data";
    case ErrorCategory::math: return "math";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& what)
      : std::runtime_error(what), category_(category) {}

  ErrorCategory category() const noexcept { return category_; }

 private:
  ErrorCategory category_;
};

/// Input violates a domain invariant (value out of [0,1], label mismatch, ...).
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what)
      : Error(ErrorCategory::data, what) {}
};

/// The requested quantity does not exist (divergent integral, empty feasible set).
class MathError : public Error {
 public:
  explicit MathError(const std::string& what)
      : Error(ErrorCategory::math, what) {}
};

}  // namespace possibility
