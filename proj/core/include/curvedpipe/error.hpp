#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace curvedpipe {

enum class ErrorCategory { domain, config, linear_solver, convergence, io, internal };

constexpr std::string_view to_string(ErrorCategory c) noexcept {
  switch (c) {
    case ErrorCategory::domain: return "domain";
    case ErrorCategory::config: return "config";
    case ErrorCategory::linear_solver: return "linear-solver";
    case ErrorCategory::convergence: return "convergence";
    case ErrorCategory::io: return "io";
    case ErrorCategory::internal: return "internal";
  }
  return "internal";
}

/// Base exception for the library. The category drives the CLI exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& what)
      : std::runtime_error(what), category_(category) {}

  ErrorCategory category() const noexcept { return category_; }

 private:
  ErrorCategory category_;
};

inline void require(bool condition, const std::string& message) {
  if (!condition) throw Error(ErrorCategory::domain, message);
}

}  // namespace curvedpipe
