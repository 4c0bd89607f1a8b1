// errors.cpp

#include "torus_green/errors.hpp"

namespace tg {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonPositiveImaginaryPart: return "NonPositiveImaginaryPart";
    case ErrorCode::ZeroOfTheta: return "ZeroOfTheta";
    case ErrorCode::PoleAtLattice: return "PoleAtLattice";
    case ErrorCode::Unconverged: return "Unconverged";
    case ErrorCode::HalfPeriodInput: return "HalfPeriodInput";
    case ErrorCode::QuadratureNotConverged: return "QuadratureNotConverged";
    case ErrorCode::CountViolation: return "CountViolation";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::InconsistentComparison: return "InconsistentComparison";
    case ErrorCode::NotInExtraRegime: return "NotInExtraRegime";
    case ErrorCode::BracketFailure: return "BracketFailure";
    case ErrorCode::NotACriticalPoint: return "NotACriticalPoint";
    case ErrorCode::HalfPeriodBranch: return "HalfPeriodBranch";
    case ErrorCode::NoExtraCriticalPoint: return "NoExtraCriticalPoint";
    case ErrorCode::ConstructionInconsistent: return "ConstructionInconsistent";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

bool is_consistency_violation(ErrorCode code) {
  return code == ErrorCode::CountViolation || code == ErrorCode::InconsistentComparison ||
         code == ErrorCode::NoConvergence;
}

}  // namespace tg
