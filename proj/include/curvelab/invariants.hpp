#pragma once

// Identity checks over the feature finders. Each verifier returns a report
// with both sides of its identity (stored doubled so that half-integers stay
// exact), named boolean gates and the full feature inventory.

#include <optional>
#include <string>
#include <vector>

#include "curvelab/algebraic.hpp"
#include "curvelab/features.hpp"
#include "curvelab/jumps.hpp"

namespace curvelab {

enum class Check { Affine, Pencil, Projective, Algebraic, Nodal, Jumps };

const char* to_string(Check c);
/// Parses "affine", "pencil", ...; throws SchemaError otherwise.
Check parse_check(std::string_view name);

struct Gate {
  std::string name;
  bool passed;
};

/// One line L of the pencil check: sigma_L against |C n L| - |C n L_inf|.
struct PencilCase {
  Line line;
  bool tangent_at_infinity;  // L is one of the tangents at C n L_inf
  int sigma;
  int on_line;
  int expected;
};

struct VerificationReport {
  Check check = Check::Affine;
  std::string digest;
  int twice_lhs = 0;
  int twice_rhs = 0;
  std::vector<Gate> gates;
  std::vector<std::string> diagnostics;
  double wall_time_ms = 0.0;

  FeatureSet features;
  std::optional<AlgebraicReport> algebraic;
  std::optional<JumpProfile> jumps;
  std::vector<PencilCase> pencil;

  int twice_delta() const { return twice_lhs - twice_rhs; }
  bool passed() const;
};

/// sigma = n + i/2 for curves missing the line at infinity. Throws NotAffine if a > 0.
VerificationReport verify_affine(const Curve& curve, const Chart& chart, const Tolerances& tol);

/// sigma = n + i/2 + a(a-2)/2 - sum_T (|C n T| - 1).
VerificationReport verify_projective(const Curve& curve, const Chart& chart, const Tolerances& tol);

/// sigma_L = |C n L| - |C n L_inf| (+1 when L is tangent at a point of
/// C n L_inf) for every line in `lines` and every tangent at infinity.
/// Random lines that fail the genericity gate are replaced from `seed`.
VerificationReport verify_pencil(const Curve& curve, const Chart& chart, const std::vector<Line>& lines,
                                 int random_lines, unsigned long long seed, const Tolerances& tol);

/// rho = d(d-2)/2 + a(a-2)/2 - sum_T (|RC n T| - 1), even and at least (d-a)(d-a-2)/2.
VerificationReport verify_algebraic(const Polynomial& F, const Chart& chart, const Tolerances& tol);

/// The nodal version with N total nodes: rho picks up n_R - N.
VerificationReport verify_nodal(const Polynomial& F, int total_nodes, const Chart& chart, const Tolerances& tol);

/// Every jump of the half-tangent balance is catalogued and they sum to zero.
VerificationReport verify_jump_catalog(const Curve& curve, const Chart& chart, int n_samples,
                                       const Tolerances& tol);

}  // namespace curvelab
