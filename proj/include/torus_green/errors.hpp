// errors.hpp
// Error type shared by every module. Each failure carries a code so the CLI
// can map it onto an exit status.

#pragma once

#include <stdexcept>
#include <string>

namespace tg {

enum class ErrorCode {
  NonPositiveImaginaryPart,
  ZeroOfTheta,
  PoleAtLattice,
  Unconverged,
  HalfPeriodInput,
  QuadratureNotConverged,
  CountViolation,
  NoConvergence,
  InconsistentComparison,
  NotInExtraRegime,
  BracketFailure,
  NotACriticalPoint,
  HalfPeriodBranch,
  NoExtraCriticalPoint,
  ConstructionInconsistent,
  InvalidArgument,
};

const char* to_string(ErrorCode code);

/// True for the codes that signal a broken implementation rather than bad
/// input (a sixth critical point, disagreeing comparison routes, ...).
bool is_consistency_violation(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace tg
