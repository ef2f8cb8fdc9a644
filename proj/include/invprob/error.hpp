#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace invprob {

enum class ErrorKind {
  InvalidOrder,
  InvalidGroup,
  OrbitAmbiguity,
  MissingProjection,
  ConditioningOnNull,
  Structural,
  Domain,
  DegenerateConstraint,
  Range,
  DegenerateMap,
  UnsupportedPushforward,
  Normalization,
  ImpossibleOutcome,
  Integration,
  Precondition,
  Parse,
  Validation,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidOrder: return "invalid-order";
    case ErrorKind::InvalidGroup: return "invalid-group";
    case ErrorKind::OrbitAmbiguity: return "orbit-ambiguity";
    case ErrorKind::MissingProjection: return "missing-projection";
    case ErrorKind::ConditioningOnNull: return "conditioning-on-null";
    case ErrorKind::Structural: return "structural";
    case ErrorKind::Domain: return "domain";
    case ErrorKind::DegenerateConstraint: return "degenerate-constraint";
    case ErrorKind::Range: return "range";
    case ErrorKind::DegenerateMap: return "degenerate-map";
    case ErrorKind::UnsupportedPushforward: return "unsupported-pushforward";
    case ErrorKind::Normalization: return "normalization";
    case ErrorKind::ImpossibleOutcome: return "impossible-outcome";
    case ErrorKind::Integration: return "integration";
    case ErrorKind::Precondition: return "precondition";
    case ErrorKind::Parse: return "parse";
    case ErrorKind::Validation: return "validation";
  }
  return "unknown";
}

/// Every failure raised by the library carries a machine-checkable kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + " error: " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace invprob
