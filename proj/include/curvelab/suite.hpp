#pragma once

// Seeded random suites for every check. Cases run concurrently; results
// come back in index order and depend only on (check, seed, index).

#include <optional>
#include <string>
#include <vector>

#include "curvelab/generators.hpp"
#include "curvelab/invariants.hpp"

namespace curvelab {

struct SuiteOptions {
  Check check = Check::Projective;
  int count = 50;
  unsigned long long seed = 1;
  int random_lines = 20;   // pencil suites
  int jump_samples = 512;  // jump suites
  int threads = 0;         // 0 = hardware concurrency
};

struct SuiteCase {
  int index = 0;
  int target_a = 0;
  std::optional<VerificationReport> report;  // set unless the case threw
  std::optional<ErrorCode> error;
  std::string message;

  bool rejected() const { return error && category(*error) == ErrorCategory::Genericity; }
  bool passed() const { return report && report->passed(); }
};

struct SuiteResult {
  Check check = Check::Projective;
  std::vector<SuiteCase> cases;

  int passed() const;
  int rejected() const;
  /// Cases that neither passed nor were rejected by the genericity gate.
  int failed() const;
  double rejection_rate() const;
};

/// Generator state of case `index`. A case draws its curve first, then
/// anything else it needs (pencil lines).
Rng suite_rng(unsigned long long seed, int index);

/// Intersection-count target of case `index`: 0 for affine, cycling 1..3 for
/// projective, 0..3 for pencil and jumps, 0, 2, 4 for quartics, and the node
/// type (0 hyperbolic, 1 isolated) for nodal cubics.
int suite_target(Check check, int index);

/// Runs one case; genericity rejections and identity failures are captured.
SuiteCase run_case(const SuiteOptions& options, int index, const Tolerances& tol);

SuiteResult run_suite(const SuiteOptions& options, const Tolerances& tol);

}  // namespace curvelab
