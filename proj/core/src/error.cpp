#include "entdyn/error.hpp"

namespace entdyn {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidModel: return "InvalidModel";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NonPhysicalAmplitude: return "NonPhysicalAmplitude";
    case ErrorCode::NotAState: return "NotAState";
    case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorCode::StepTooLarge: return "StepTooLarge";
    case ErrorCode::GridTooCoarse: return "GridTooCoarse";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::UnknownPreset: return "UnknownPreset";
    case ErrorCode::IoFailure: return "IoFailure";
  }
  return "Unknown";
}

}  // namespace entdyn
