#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ncl {

enum class ErrorCode {
  // input errors
  ShapeMismatch,
  InvalidTolerance,
  NotHermitian,
  NotPSD,
  NonSquareGenerator,
  NotInAlgebra,
  NotPositive,
  NotCyclic,
  NotSeparating,
  ParseError,
  UnknownState,
  MissingDynamics,
  TooLarge,
  // negative mathematical verdicts
  IllDefined,
  NotAbsolutelyContinuous,
  // numerical-integrity failures
  NotClosed,
  BicommutantMismatch,
  NoComplementUnit,
  NotRepresentable,
  RepresentabilityBreach,
  SolveSingular,
};

/// Coarse grouping used for CLI exit codes.
enum class ErrorCategory { Input, Verdict, Integrity };

constexpr std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::InvalidTolerance: return "InvalidTolerance";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NotPSD: return "NotPSD";
    case ErrorCode::NonSquareGenerator: return "NonSquareGenerator";
    case ErrorCode::NotInAlgebra: return "NotInAlgebra";
    case ErrorCode::NotPositive: return "NotPositive";
    case ErrorCode::NotCyclic: return "NotCyclic";
    case ErrorCode::NotSeparating: return "NotSeparating";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::UnknownState: return "UnknownState";
    case ErrorCode::MissingDynamics: return "MissingDynamics";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::IllDefined: return "IllDefined";
    case ErrorCode::NotAbsolutelyContinuous: return "NotAbsolutelyContinuous";
    case ErrorCode::NotClosed: return "NotClosed";
    case ErrorCode::BicommutantMismatch: return "BicommutantMismatch";
    case ErrorCode::NoComplementUnit: return "NoComplementUnit";
    case ErrorCode::NotRepresentable: return "NotRepresentable";
    case ErrorCode::RepresentabilityBreach: return "RepresentabilityBreach";
    case ErrorCode::SolveSingular: return "SolveSingular";
  }
  return "Unknown";
}

constexpr ErrorCategory error_category(ErrorCode code) {
  switch (code) {
    case ErrorCode::IllDefined:
    case ErrorCode::NotAbsolutelyContinuous:
      return ErrorCategory::Verdict;
    case ErrorCode::NotClosed:
    case ErrorCode::BicommutantMismatch:
    case ErrorCode::NoComplementUnit:
    case ErrorCode::NotRepresentable:
    case ErrorCode::RepresentabilityBreach:
    case ErrorCode::SolveSingular:
      return ErrorCategory::Integrity;
    default:
      return ErrorCategory::Input;
  }
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }
  ErrorCategory category() const noexcept { return error_category(code_); }

 private:
  ErrorCode code_;
};

}  // namespace ncl
