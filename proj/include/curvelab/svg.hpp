#pragma once

#include <string>

#include "curvelab/features.hpp"

namespace curvelab {

/// Static SVG 1.1 drawing of the curve in the chart: T bitangents solid, S
/// bitangents dashed, flexes and nodes marked, tangents at infinity labelled
/// with |C n T|.
std::string svg_document(const Curve& curve, const FeatureSet& features, const Chart& chart, int samples = 2048);

/// Writes svg_document to path; throws IoError.
void render_svg(const Curve& curve, const FeatureSet& features, const Chart& chart, const std::string& path);

}  // namespace curvelab
