#include "kreinlab/errors.hpp"

namespace kreinlab {

const char* error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::SingularForm: return "SingularForm";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NoSeparatingContour: return "NoSeparatingContour";
    case ErrorCode::QuadratureDivergence: return "QuadratureDivergence";
    case ErrorCode::AmbiguousClassification: return "AmbiguousClassification";
    case ErrorCode::UnmatchedReflection: return "UnmatchedReflection";
    case ErrorCode::CorrectionFailed: return "CorrectionFailed";
    case ErrorCode::DegenerateForm: return "DegenerateForm";
    case ErrorCode::OddDimension: return "OddDimension";
    case ErrorCode::SpectrumTooClose: return "SpectrumTooClose";
    case ErrorCode::ClusterMatchFailed: return "ClusterMatchFailed";
    case ErrorCode::IncompatibleDimensions: return "IncompatibleDimensions";
    case ErrorCode::SymmetryViolated: return "SymmetryViolated";
    case ErrorCode::InvariantConstraintViolated: return "InvariantConstraintViolated";
    case ErrorCode::StepUnderflow: return "StepUnderflow";
    case ErrorCode::UnresolvedEvent: return "UnresolvedEvent";
    case ErrorCode::UnknownScenario: return "UnknownScenario";
    case ErrorCode::DegenerateSubspace: return "DegenerateSubspace";
    case ErrorCode::NotInvariant: return "NotInvariant";
    case ErrorCode::FramePreparationFailed: return "FramePreparationFailed";
    case ErrorCode::NotLagrangian: return "NotLagrangian";
    case ErrorCode::NotFredholmPair: return "NotFredholmPair";
    case ErrorCode::PathBlocked: return "PathBlocked";
    case ErrorCode::NotInClass: return "NotInClass";
    case ErrorCode::NotGapped: return "NotGapped";
    case ErrorCode::FixtureMismatch: return "FixtureMismatch";
    case ErrorCode::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}

void fail(ErrorCode code, const std::string& detail) { throw Error(code, detail); }

}  // namespace kreinlab
