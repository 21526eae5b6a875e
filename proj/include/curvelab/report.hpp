#pragma once

// Deterministic JSON reports. Keys are sorted; numbers are written with
// round-trip precision, so equal inputs give byte-identical reports once
// wall_time_ms is dropped.

#include <string>

#include "curvelab/curve_file.hpp"
#include "curvelab/invariants.hpp"
#include "curvelab/tolerances.hpp"
#include "json.hpp"

namespace curvelab {

inline constexpr int kReportSchemaVersion = 1;

/// 64-bit FNV-1a of the canonical curve file and the tolerances, in hex.
std::string input_digest(const CurveFile& file, const Tolerances& tol);

nlohmann::json inventory_json(const FeatureSet& features, const Chart& chart);
nlohmann::json algebraic_json(const AlgebraicReport& report);

/// Report of one verification. `with_time` = false omits wall_time_ms.
nlohmann::json report_json(const VerificationReport& report, const Chart& chart, bool with_time = true);

/// Report of the analyze command: counts and inventory without an identity.
nlohmann::json analysis_json(const FeatureSet& features, const std::optional<AlgebraicReport>& algebraic,
                             const Chart& chart, const std::string& digest);

}  // namespace curvelab
