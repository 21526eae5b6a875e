#pragma once

// The half-tangent counting function f_j(t) = |D+ n C| - |D- n C| and its
// jumps. f_j is locally constant away from a finite set of parameters; each
// jump must be one of the catalogued events below.

#include <string>
#include <vector>

#include "curvelab/features.hpp"

namespace curvelab {

enum class JumpKind { Node, Flex, BitangentT, BitangentS, InfinityCrossing, TangentThroughInfinityPoint };

const char* to_string(JumpKind k);

struct JumpEvent {
  CurveParameter at;
  JumpKind kind;
  int expected;  // catalogued jump
  int measured;  // f(t+) - f(t-) as evaluated
};

struct JumpSample {
  double t;
  int f;
};

struct JumpProfile {
  std::vector<std::vector<JumpSample>> samples;  // per component, sorted by t
  std::vector<JumpEvent> events;                 // sorted by (component, t)

  /// Sum of catalogued jumps on one component; zero since f_j is periodic.
  int total(int component) const;
  /// 4t - 4s - 4n - 2i + 2 sum(|C n T| - 1) + 2 sum_T sigma_T(C).
  int grouped() const;
};

/// Value of f_j at parameter t of component j; t must avoid every event.
int half_tangent_balance(const Curve& curve, int j, double t, const Chart& chart, const Tolerances& tol);

/// Evaluates f_j on an offset grid of `n_samples` points per component,
/// localizes every change of f_j and matches it against the catalogue built
/// from `features`. Throws UncataloguedJump on the first unmatched change.
JumpProfile jump_profile(const Curve& curve, const FeatureSet& features, const Chart& chart, int n_samples,
                         const Tolerances& tol);

}  // namespace curvelab
