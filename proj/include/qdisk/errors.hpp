#pragma once

#include <stdexcept>
#include <string>

namespace qdisk {

enum class ErrorCode {
  ZeroValue,
  AmbiguousBranch,
  Overflow,
  ClosureDefect,
  DomainError,
  SingularPoint,
  NotExtendable,
  DegenerateJacobian,
  NoConvergence,
  OriginSingularity,
  InvalidArgument,
  SupportViolation,
  ConfigError,
};

const char* to_string(ErrorCode code);

// Every failure raised by the library carries a machine-readable code so the
// CLI can map it to an exit status without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ZeroValue: return "ZeroValue";
    case ErrorCode::AmbiguousBranch: return "AmbiguousBranch";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::ClosureDefect: return "ClosureDefect";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::SingularPoint: return "SingularPoint";
    case ErrorCode::NotExtendable: return "NotExtendable";
    case ErrorCode::DegenerateJacobian: return "DegenerateJacobian";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::OriginSingularity: return "OriginSingularity";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::SupportViolation: return "SupportViolation";
    case ErrorCode::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

}  // namespace qdisk
