#pragma once

#include <stdexcept>
#include <string>

namespace kreinlab {

enum class ErrorCode {
  SingularMatrix,
  NoConvergence,
  NotHermitian,
  SingularForm,
  DimensionMismatch,
  NoSeparatingContour,
  QuadratureDivergence,
  AmbiguousClassification,
  UnmatchedReflection,
  CorrectionFailed,
  DegenerateForm,
  OddDimension,
  SpectrumTooClose,
  ClusterMatchFailed,
  IncompatibleDimensions,
  SymmetryViolated,
  InvariantConstraintViolated,
  StepUnderflow,
  UnresolvedEvent,
  UnknownScenario,
  DegenerateSubspace,
  NotInvariant,
  FramePreparationFailed,
  NotLagrangian,
  NotFredholmPair,
  PathBlocked,
  NotInClass,
  NotGapped,
  FixtureMismatch,
  InvalidInput,
};

const char* error_name(ErrorCode code);

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& detail);

}  // namespace kreinlab
