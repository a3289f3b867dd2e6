#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ptwell {

enum class ErrorCode {
  // numerics
  NoConvergence,
  DegreeZero,
  DerivativeUnderflow,
  BoundaryZeroSuspected,
  // potential
  InvalidPotential,
  NotDoubleWell,
  NearDegenerateTurningPoint,
  // turning points
  LabelAmbiguity,
  StepTooLarge,
  // actions
  BranchJump,
  // quantization / bifurcation
  CertificationMismatch,
  A7Violation,
  // stokes
  BranchAmbiguity,
  SeedCountMismatch,
  // fdsolve
  InvalidGrid,
  SingularShift,
  NotConverged,
  // harness
  ConfigError,
  PairLost,
  MatchCardinalityMismatch,
  InvalidArgument,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every fatal condition raised by the library. The code identifies the
/// failure class; what() carries the numbers that triggered it.
class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

}  // namespace ptwell
