#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ncg {

enum class ErrorCode {
  InvalidArgument,
  NoSuchRoot,
  UnsupportedField,
  FieldMismatch,
  Overflow,
  NonHomogeneous,
  TruncationTooLow,
  DegreeBeyondTruncation,
  AlgebraMismatch,
  InvalidAutomorphism,
  WindowExceeded,
  IncompleteKernel,
  ShapeMismatch,
  NonSplitResidue,
  HypothesisViolated,
  FieldTooSmall,
  NonSplit,
  NotQuadratic,
  NotCentral,
  NotStabilized,
  NotCommutative,
  NotSemisimple,
  NotConnected,
  ParseError,
  UnknownReference,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NoSuchRoot: return "NoSuchRoot";
    case ErrorCode::UnsupportedField: return "UnsupportedField";
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::NonHomogeneous: return "NonHomogeneous";
    case ErrorCode::TruncationTooLow: return "TruncationTooLow";
    case ErrorCode::DegreeBeyondTruncation: return "DegreeBeyondTruncation";
    case ErrorCode::AlgebraMismatch: return "AlgebraMismatch";
    case ErrorCode::InvalidAutomorphism: return "InvalidAutomorphism";
    case ErrorCode::WindowExceeded: return "WindowExceeded";
    case ErrorCode::IncompleteKernel: return "IncompleteKernel";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::NonSplitResidue: return "NonSplitResidue";
    case ErrorCode::HypothesisViolated: return "HypothesisViolated";
    case ErrorCode::FieldTooSmall: return "FieldTooSmall";
    case ErrorCode::NonSplit: return "NonSplit";
    case ErrorCode::NotQuadratic: return "NotQuadratic";
    case ErrorCode::NotCentral: return "NotCentral";
    case ErrorCode::NotStabilized: return "NotStabilized";
    case ErrorCode::NotCommutative: return "NotCommutative";
    case ErrorCode::NotSemisimple: return "NotSemisimple";
    case ErrorCode::NotConnected: return "NotConnected";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::UnknownReference: return "UnknownReference";
  }
  return "Unknown";
}

/// Every failure in the library is reported through this exception type; the
/// code identifies the condition, the message carries the context.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace ncg
