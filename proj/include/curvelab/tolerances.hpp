#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace curvelab {

/// Named numerical tolerances. Every integer the engine reports is an
/// identity count, so these only gate root deduplication and genericity.
struct Tolerances {
  double pt = 1e-9;          // projective point / line equality
  double orient = 1e-10;     // collinearity in orient()
  double flex = 1e-8;        // relative slope of the flex function at a root
  double line = 1e-7;        // two tangency lines considered equal
  double diag = 1e-3;        // diagonal guard for self pairs, in parameter units
  double newton = 1e-12;     // residual target for parameter polishing
  double trace = 1e-10;      // |F| / scale on traced points
  double glue = 1e-6;        // closure gap of a traced component
  double polish = 1e-10;     // algebraic residual after polishing
  double genericity = 1e-7;  // near-degeneracy threshold for the genericity gate
  int subdivision = 2048;    // cells per parameter axis
  int trace_resolution = 1024;

  /// Sets a tolerance by name ("pt", "subdivision", ...). Throws SchemaError
  /// on an unknown name.
  void set(std::string_view name, double value);
  double get(std::string_view name) const;

  static std::vector<std::string> names();

  /// Defaults overridden by CURVELAB_TOL_<NAME> environment variables.
  static Tolerances from_environment();
};

}  // namespace curvelab
