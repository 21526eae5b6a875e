#pragma once

// JSON curve files.
//
//   {"schema_version": 1, "kind": "trig", "line_at_infinity": [0, 0, 1],
//    "components": [{"x_cos": [...], "x_sin": [...], "y_cos": [...], "y_sin": [...],
//                    "z_cos": [...], "z_sin": [...], "half_integer": false}]}
//
//   {"schema_version": 1, "kind": "algebraic", "degree": 4,
//    "monomials": [{"i": 4, "j": 0, "k": 0, "c": 144.0}, ...], "nodal": {"N": 1}}
//
// Array index k is the harmonic of frequency k (k + 1/2 when half_integer).

#include <optional>
#include <string>

#include "curvelab/curve.hpp"
#include "curvelab/polynomial.hpp"

namespace curvelab {

inline constexpr int kCurveSchemaVersion = 1;

enum class CurveKind { Trig, Algebraic };

struct CurveFile {
  CurveKind kind = CurveKind::Trig;
  Curve curve;                    // trig
  Polynomial polynomial;          // algebraic
  std::optional<int> total_nodes;  // algebraic, nodal metadata N
  Line line_at_infinity = Line::at_infinity();

  bool operator==(const CurveFile& other) const;
};

/// Throws SchemaError (all problems listed, with JSON paths), DegreeMismatch
/// or EmptyCurve.
CurveFile parse_curve_json(const std::string& text);
/// As above; IoError when the file cannot be read.
CurveFile parse_curve_file(const std::string& path);

std::string emit_curve_json(const CurveFile& file);

}  // namespace curvelab
