#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sqzcool {

enum class ErrorKind {
  kThresholdViolation,
  kNonPositiveRate,
  kNegativeInput,
  kInfeasible,
  kDomainError,
  kNotCooling,
  kInternalInconsistency,
  kUnstableModel,
  kSolverFailure,
  kNoMinimumInWindow,
  kEmptyInput,
  kIoError,
  kConfigError,
};

std::string_view to_string(ErrorKind kind);

// Every failure raised by the library carries one of the kinds above so the
// command-line front end can map it onto an exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace sqzcool
