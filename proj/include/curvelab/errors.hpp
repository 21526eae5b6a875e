#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace curvelab {

enum class ErrorCode {
  // geometry
  CoincidentPoints,
  CoincidentLines,
  OnInfinity,
  // genericity gate
  NotImmersed,
  DegenerateFlex,
  TangentialIntersection,
  TripleTangent,
  InfinityTangency,
  AmbiguousSide,
  NonTransverseInfinity,
  NonGenericTangent,
  NonSimpleTangency,
  NotAffine,
  SingularPointHit,
  NodeClassificationAmbiguous,
  // numerical self-diagnostics
  UncataloguedJump,
  EmptyRealLocus,
  TracingGapError,
  FlexMismatch,
  CrossCheckMismatch,
  PolishDivergence,
  // identities
  KleinViolation,
  IdentityViolation,
  // input
  SchemaError,
  DegreeMismatch,
  EmptyCurve,
  IoError,
};

enum class ErrorCategory { Genericity, Identity, Schema, Io };

std::string_view to_string(ErrorCode code);
ErrorCategory category(ErrorCode code);

class CurveError : public std::runtime_error {
 public:
  CurveError(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw CurveError(code, what); }

}  // namespace curvelab
