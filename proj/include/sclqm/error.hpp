#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sclqm {

// Coarse failure categories; the CLI maps each one to its own exit status.
enum class ErrorCategory {
  invalid_input,         // malformed words, spec files, out-of-range letters
  hypothesis_violation,  // a construction's mathematical precondition fails
  limit_exceeded,        // enumeration would exceed a configured cap
  internal,              // an invariant that should be impossible was broken
};

constexpr std::string_view category_name(ErrorCategory c) noexcept {
  switch (c) {
    case ErrorCategory::invalid_input:
      return "invalid_input";
    case ErrorCategory::hypothesis_violation:
      return "hypothesis_violation";
    case ErrorCategory::limit_exceeded:
      return "limit_exceeded";
    case ErrorCategory::internal:
      return "internal";
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

class InvalidInput : public Error {
 public:
  explicit InvalidInput(const std::string& what)
      : Error(ErrorCategory::invalid_input, what) {}
};

class HypothesisViolation : public Error {
 public:
  explicit HypothesisViolation(const std::string& what)
      : Error(ErrorCategory::hypothesis_violation, what) {}
};

class LimitExceeded : public Error {
 public:
  explicit LimitExceeded(const std::string& what)
      : Error(ErrorCategory::limit_exceeded, what) {}
};

class InternalError : public Error {
 public:
  explicit InternalError(const std::string& what)
      : Error(ErrorCategory::internal, what) {}
};

}  // namespace sclqm
