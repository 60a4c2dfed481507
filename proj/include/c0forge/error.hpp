#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace c0forge {

enum class ErrorCode {
  NotSquare,
  NonFinite,
  Asymmetric,
  NonzeroDiagonal,
  NegativeDistance,
  DuplicatePoints,
  TriangleViolation,
  EmptySet,
  BadParams,
  MuTooSmall,
  UnequalRadii,
  NotPositiveCone,
  EpsilonSearchFailed,
  ThetaInfeasible,
  ConstantTooTight,
  ProviderMismatch,
  LambdaOutOfRange,
  PhiMissing,
  ScheduleTooLong,
  NotUltrametric,
  NotPrefixClosed,
  NotIncreasing,
  ShapeMismatch,
  MissingBlockMeta,
  ParseError,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so
/// callers (and the CLI exit-code mapping) can branch on it.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace c0forge
