#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lorentzfd {

enum class ErrorCode {
  InvalidArgument,
  NotHyperbolic,
  BudgetExceeded,
  InconsistentProduct,
  NoLevelLift,
  DomainError,
  StabilizationFailure,
  SheetConditionActive,
  EmptyConstraintSet,
  NoVertices,
  NonManifold,
  EulerCheckFailed,
  UnpairedFace,
  ReadingRejected,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid_argument";
    case ErrorCode::NotHyperbolic: return "not_hyperbolic";
    case ErrorCode::BudgetExceeded: return "budget_exceeded";
    case ErrorCode::InconsistentProduct: return "inconsistent_product";
    case ErrorCode::NoLevelLift: return "no_level_lift";
    case ErrorCode::DomainError: return "domain_error";
    case ErrorCode::StabilizationFailure: return "stabilization_failure";
    case ErrorCode::SheetConditionActive: return "sheet_condition_active";
    case ErrorCode::EmptyConstraintSet: return "empty_constraint_set";
    case ErrorCode::NoVertices: return "no_vertices";
    case ErrorCode::NonManifold: return "non_manifold";
    case ErrorCode::EulerCheckFailed: return "euler_check_failed";
    case ErrorCode::UnpairedFace: return "unpaired_face";
    case ErrorCode::ReadingRejected: return "reading_rejected";
  }
  return "unknown";
}

// All hard failures in the library are reported through this type.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace lorentzfd
