#include "qcut/error.hpp"

namespace qcut {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::DimMismatch: return "DimMismatch";
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::Singular: return "Singular";
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::DegenerateInterval: return "DegenerateInterval";
    case ErrorCode::ZeroNotInterior: return "ZeroNotInterior";
    case ErrorCode::SliceOutsideBall: return "SliceOutsideBall";
    case ErrorCode::UnsupportedCombination: return "UnsupportedCombination";
    case ErrorCode::BadWeights: return "BadWeights";
    case ErrorCode::RecessionFailure: return "RecessionFailure";
    case ErrorCode::NotInside: return "NotInside";
    case ErrorCode::CutViolated: return "CutViolated";
    case ErrorCode::UnsupportedFamily: return "UnsupportedFamily";
    case ErrorCode::NotInForbidden: return "NotInForbidden";
    case ErrorCode::BisectionFailure: return "BisectionFailure";
    case ErrorCode::EmptySample: return "EmptySample";
    case ErrorCode::DimUnsupported: return "DimUnsupported";
  }
  return "Unknown";
}

}  // namespace qcut
