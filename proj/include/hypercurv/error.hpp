#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hypercurv {

enum class ErrorCode {
  EmptyEdge,
  DuplicateVertex,
  NonPositiveWeight,
  VertexOutOfRange,
  HyperloopInLooplessModel,
  NotConnected,
  NotStronglyConnected,
  NotClosedUnderReversal,
  Unreachable,
  UnsupportedVariant,
  AlphaOutOfRange,
  IndexOutOfRange,
  DivisionByZeroDegree,
  NotOriented,
  MassMismatch,
  MissingDistance,
  NotLipschitz,
  ShapeMismatch,
  SamePair,
  UnsupportedFlavor,
  NoStabilization,
  NonUnitWeights,
  HypothesisNotMet,
  ParseError,
  UnknownTarget,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptyEdge: return "EmptyEdge";
    case ErrorCode::DuplicateVertex: return "DuplicateVertex";
    case ErrorCode::NonPositiveWeight: return "NonPositiveWeight";
    case ErrorCode::VertexOutOfRange: return "VertexOutOfRange";
    case ErrorCode::HyperloopInLooplessModel: return "HyperloopInLooplessModel";
    case ErrorCode::NotConnected: return "NotConnected";
    case ErrorCode::NotStronglyConnected: return "NotStronglyConnected";
    case ErrorCode::NotClosedUnderReversal: return "NotClosedUnderReversal";
    case ErrorCode::Unreachable: return "Unreachable";
    case ErrorCode::UnsupportedVariant: return "UnsupportedVariant";
    case ErrorCode::AlphaOutOfRange: return "AlphaOutOfRange";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::DivisionByZeroDegree: return "DivisionByZeroDegree";
    case ErrorCode::NotOriented: return "NotOriented";
    case ErrorCode::MassMismatch: return "MassMismatch";
    case ErrorCode::MissingDistance: return "MissingDistance";
    case ErrorCode::NotLipschitz: return "NotLipschitz";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::SamePair: return "SamePair";
    case ErrorCode::UnsupportedFlavor: return "UnsupportedFlavor";
    case ErrorCode::NoStabilization: return "NoStabilization";
    case ErrorCode::NonUnitWeights: return "NonUnitWeights";
    case ErrorCode::HypothesisNotMet: return "HypothesisNotMet";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::UnknownTarget: return "UnknownTarget";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above; the
/// message always starts with the code name so it can be matched verbatim.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + (detail.empty() ? "" : ": " + detail)),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace hypercurv
