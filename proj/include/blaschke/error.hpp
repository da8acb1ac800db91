#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace blaschke {

enum class ErrorKind {
  DomainError,
  NonConvergence,
  NormalizationError,
  NoSolution,
  OrbitNotClosed,
  OrbitDegenerate,
  NoInteriorFixedPoint,
  OrbitClusterError,
  BadShape,
  ConditionsUnsatisfied,
  NondegeneracyError,
  NoConcurrentPairing,
  NoIntersection,
  InvalidArgument,
};

constexpr std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::NonConvergence: return "NonConvergence";
    case ErrorKind::NormalizationError: return "NormalizationError";
    case ErrorKind::NoSolution: return "NoSolution";
    case ErrorKind::OrbitNotClosed: return "OrbitNotClosed";
    case ErrorKind::OrbitDegenerate: return "OrbitDegenerate";
    case ErrorKind::NoInteriorFixedPoint: return "NoInteriorFixedPoint";
    case ErrorKind::OrbitClusterError: return "OrbitClusterError";
    case ErrorKind::BadShape: return "BadShape";
    case ErrorKind::ConditionsUnsatisfied: return "ConditionsUnsatisfied";
    case ErrorKind::NondegeneracyError: return "NondegeneracyError";
    case ErrorKind::NoConcurrentPairing: return "NoConcurrentPairing";
    case ErrorKind::NoIntersection: return "NoIntersection";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

/// Every failure raised by the library carries a machine-readable kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail)
      : std::runtime_error(detail), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& detail) {
  throw Error(kind, detail);
}

}  // namespace blaschke
