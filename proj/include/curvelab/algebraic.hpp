#pragma once

// Real algebraic curves F(x, y, z) = 0: the traced real locus, algebraic
// polishing of its flexes and split bitangents, Klein's formula and the
// signed bitangent count rho = t0 + sigma.

#include <memory>
#include <optional>
#include <vector>

#include "curvelab/features.hpp"
#include "curvelab/polynomial.hpp"
#include "curvelab/traced.hpp"

namespace curvelab {

struct AlgebraicCurve {
  Polynomial F;
  /// Total number of nodes N, real and complex. Set for nodal curves only.
  std::optional<int> total_nodes;

  bool nodal() const { return total_nodes.has_value(); }
};

struct TracedCurve {
  Curve curve;
  TraceResult trace;
};

/// Traces the real locus of F into closed components. Throws EmptyRealLocus,
/// SingularPointHit (smooth mode) or TracingGapError.
TracedCurve trace_real_curve(const Polynomial& F, bool nodal, const Tolerances& tol);

struct AlgebraicFlex {
  CurveParameter at;
  Vec3 point;  // polished solution of F = det(Hess F) = 0
  double residual;
};

/// Polishes every parametric flex onto F = det(Hess F) = 0 and checks the
/// count against the sign changes of det(Hess F) along the trace, away from
/// the bridges at nodes.
std::vector<AlgebraicFlex> real_flexes(const Polynomial& F, const Curve& trace, const CurveSamples& samples,
                                       const std::vector<Flex>& parametric, const Tolerances& tol);

struct SplitBitangent {
  Bitangent bitangent;  // as found on the trace, with its T/S kind
  Vec3 p;               // polished tangency points
  Vec3 q;
  Line line;
  double residual;
};

/// Newton on F(p) = F(q) = 0, grad F(p).q = grad F(q).p = 0 with |p| = |q| = 1.
/// Throws PolishDivergence when the residual stays above tol.polish.
std::vector<SplitBitangent> split_bitangents(const Polynomial& F, const std::vector<Bitangent>& parametric,
                                             const Tolerances& tol);

/// Number of distinct real points of F = 0 on a line transverse to the curve.
int real_points_on_line(const Polynomial& F, const Line& line, const Tolerances& tol);

/// |RC n T| for the tangent T at the real point q, the tangency point counted once.
int real_points_on_tangent(const Polynomial& F, const Vec3& q, const Line& T, const Tolerances& tol);

/// Non-split bitangents from Klein's formula, d + i + 2 t0 = d(d - 1) - 2N + 2 n0.
/// Throws KleinViolation when t0 comes out negative or fractional.
int klein_t0(int degree, int real_flexes, int total_nodes = 0, int isolated_nodes = 0);

struct NodalCounts {
  int total = 0;       // N
  int isolated = 0;    // n0
  int hyperbolic = 0;  // n2
  int real() const { return isolated + hyperbolic; }
};

struct AlgebraicReport {
  int degree = 0;
  FeatureSet features;  // on the traced locus
  std::vector<AlgebraicFlex> flexes;
  std::vector<SplitBitangent> bitangents;
  std::vector<SingularPoint> singular_points;
  std::optional<NodalCounts> nodes;
  int branches = 0;

  int a = 0;
  int tangent_excess = 0;  // sum over T of (|RC n T| - 1)
  int i_R = 0;
  int t0 = 0;
  SignedCount split;
  int rho = 0;  // t0 + sigma
  int rhs = 0;  // d(d-2)/2 + a(a-2)/2 - sum (+ n_R - N)

  int delta() const { return rho - rhs; }
  int lower_bound() const { return (degree - a) * (degree - a - 2) / 2; }
  bool even() const { return rho % 2 == 0; }
};

/// Traces, analyzes and polishes; every measured count is cross-checked
/// (Bezout gates, algebraic vs parametric counts). The identity itself is
/// left to the caller: delta() is not required to vanish here.
AlgebraicReport analyze_algebraic(const AlgebraicCurve& curve, const Chart& chart, const Tolerances& tol);

/// analyze_algebraic followed by the identity, parity and lower-bound checks;
/// throws IdentityViolation on any failure.
AlgebraicReport rho(const AlgebraicCurve& curve, const Chart& chart, const Tolerances& tol);

}  // namespace curvelab
