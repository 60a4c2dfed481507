#include "c0forge/error.hpp"

namespace c0forge {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotSquare: return "NotSquare";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::Asymmetric: return "Asymmetric";
    case ErrorCode::NonzeroDiagonal: return "NonzeroDiagonal";
    case ErrorCode::NegativeDistance: return "NegativeDistance";
    case ErrorCode::DuplicatePoints: return "DuplicatePoints";
    case ErrorCode::TriangleViolation: return "TriangleViolation";
    case ErrorCode::EmptySet: return "EmptySet";
    case ErrorCode::BadParams: return "BadParams";
    case ErrorCode::MuTooSmall: return "MuTooSmall";
    case ErrorCode::UnequalRadii: return "UnequalRadii";
    case ErrorCode::NotPositiveCone: return "NotPositiveCone";
    case ErrorCode::EpsilonSearchFailed: return "EpsilonSearchFailed";
    case ErrorCode::ThetaInfeasible: return "ThetaInfeasible";
    case ErrorCode::ConstantTooTight: return "ConstantTooTight";
    case ErrorCode::ProviderMismatch: return "ProviderMismatch";
    case ErrorCode::LambdaOutOfRange: return "LambdaOutOfRange";
    case ErrorCode::PhiMissing: return "PhiMissing";
    case ErrorCode::ScheduleTooLong: return "ScheduleTooLong";
    case ErrorCode::NotUltrametric: return "NotUltrametric";
    case ErrorCode::NotPrefixClosed: return "NotPrefixClosed";
    case ErrorCode::NotIncreasing: return "NotIncreasing";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::MissingBlockMeta: return "MissingBlockMeta";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

}  // namespace c0forge
