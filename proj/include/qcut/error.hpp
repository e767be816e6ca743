#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qcut {

enum class ErrorCode {
  ZeroVector,
  DimMismatch,
  NotSymmetric,
  NoConvergence,
  Singular,
  InvalidInput,
  DegenerateInterval,
  ZeroNotInterior,
  SliceOutsideBall,
  UnsupportedCombination,
  BadWeights,
  RecessionFailure,
  NotInside,
  CutViolated,
  UnsupportedFamily,
  NotInForbidden,
  BisectionFailure,
  EmptySample,
  DimUnsupported,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace qcut
