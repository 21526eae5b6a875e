#include "curvelab/report.hpp"

#include <cstdint>
#include <cstdio>

namespace curvelab {

namespace {

using nlohmann::json;

json vec(const Vec3& v) { return {v.x(), v.y(), v.z()}; }

json point(const Vec3& p, const Chart& chart) {
  const Vec3 u = normalize_projective<double>(p);
  json j{{"homogeneous", vec(u)}};
  if (!chart.on_infinity(u, 1e-12)) {
    const auto x = chart.map(u);
    j["chart"] = {x.x(), x.y()};
  }
  return j;
}

json parameter(const CurveParameter& p) { return {{"component", p.component}, {"t", p.t}}; }

// n / 2 as an integer when exact.
json half(int twice) {
  if (twice % 2 == 0) return twice / 2;
  return twice / 2.0;
}

}  // namespace

std::string input_digest(const CurveFile& file, const Tolerances& tol) {
  std::string text = emit_curve_json(file);
  for (const auto& name : Tolerances::names()) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s=%.17g;", name.c_str(), tol.get(name));
    text += buf;
  }
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char out[17];
  std::snprintf(out, sizeof out, "%016llx", static_cast<unsigned long long>(h));
  return out;
}

json inventory_json(const FeatureSet& fs, const Chart& chart) {
  json flexes = json::array(), nodes = json::array(), bitangents = json::array(), tangents = json::array();
  for (const auto& f : fs.flexes) flexes.push_back({{"at", parameter(f.at)}, {"point", point(f.point, chart)}});
  for (const auto& n : fs.nodes)
    nodes.push_back({{"first", parameter(n.first)}, {"second", parameter(n.second)}, {"point", point(n.point, chart)}});
  for (const auto& b : fs.bitangents)
    bitangents.push_back({{"line", vec(b.line.coeffs())},
                          {"first", parameter(b.first)},
                          {"second", parameter(b.second)},
                          {"first_point", point(b.first_point, chart)},
                          {"second_point", point(b.second_point, chart)},
                          {"kind", label(b.kind)},
                          {"sign", b.sign()}});
  for (const auto& e : fs.infinity.entries)
    tangents.push_back({{"at", parameter(e.at)},
                        {"point", vec(normalize_projective<double>(e.point))},
                        {"tangent", vec(e.tangent.coeffs())},
                        {"intersections", e.intersections}});
  const auto c = fs.counts();
  return {{"counts",
           {{"i", fs.i()},
            {"n", fs.n()},
            {"t", c.exterior},
            {"s", c.interior},
            {"sigma", c.sigma()},
            {"a", fs.a()},
            {"tangent_excess", fs.infinity.tangent_excess()}}},
          {"flexes", flexes},
          {"nodes", nodes},
          {"bitangents", bitangents},
          {"infinity", {{"a", fs.a()}, {"tangents", tangents}}}};
}

json algebraic_json(const AlgebraicReport& r) {
  json flexes = json::array(), bitangents = json::array(), singular = json::array();
  for (const auto& f : r.flexes)
    flexes.push_back({{"at", parameter(f.at)}, {"point", vec(f.point)}, {"residual", f.residual}});
  for (const auto& b : r.bitangents)
    bitangents.push_back({{"p", vec(b.p)},
                          {"q", vec(b.q)},
                          {"line", vec(b.line.coeffs())},
                          {"kind", label(b.bitangent.kind)},
                          {"residual", b.residual}});
  for (const auto& s : r.singular_points)
    singular.push_back({{"point", vec(s.p)}, {"kind", s.kind == NodeKind::Isolated ? "isolated" : "hyperbolic"}});
  json j{{"degree", r.degree},
         {"branches", r.branches},
         {"a", r.a},
         {"tangent_excess", r.tangent_excess},
         {"i_R", r.i_R},
         {"t0", r.t0},
         {"split_t", r.split.exterior},
         {"split_s", r.split.interior},
         {"sigma", r.split.sigma()},
         {"rho", r.rho},
         {"rhs", r.rhs},
         {"lower_bound", r.lower_bound()},
         {"flexes", flexes},
         {"split_bitangents", bitangents},
         {"singular_points", singular}};
  if (r.nodes)
    j["nodes"] = {{"N", r.nodes->total}, {"n_R", r.nodes->real()}, {"n0", r.nodes->isolated},
                  {"n2", r.nodes->hyperbolic}};
  return j;
}

json report_json(const VerificationReport& r, const Chart& chart, bool with_time) {
  json gates = json::array();
  for (const auto& g : r.gates) gates.push_back({{"name", g.name}, {"passed", g.passed}});
  json inventory = inventory_json(r.features, chart);
  if (r.algebraic) inventory["algebraic"] = algebraic_json(*r.algebraic);
  if (r.jumps) {
    json events = json::array();
    for (const auto& e : r.jumps->events)
      events.push_back({{"at", parameter(e.at)}, {"kind", to_string(e.kind)}, {"expected", e.expected},
                        {"measured", e.measured}});
    inventory["jumps"] = {{"events", events}, {"grouped_sum", r.jumps->grouped()}};
  }
  if (!r.pencil.empty()) {
    json lines = json::array();
    for (const auto& c : r.pencil)
      lines.push_back({{"line", vec(c.line.coeffs())},
                       {"tangent_at_infinity", c.tangent_at_infinity},
                       {"sigma_L", c.sigma},
                       {"on_line", c.on_line},
                       {"expected", c.expected}});
    inventory["pencil"] = lines;
  }
  json j{{"schema_version", kReportSchemaVersion},
         {"check", to_string(r.check)},
         {"digest", r.digest},
         {"lhs", half(r.twice_lhs)},
         {"rhs", half(r.twice_rhs)},
         {"delta", half(r.twice_delta())},
         {"passed", r.passed()},
         {"gates", gates},
         {"inventory", inventory},
         {"diagnostics", r.diagnostics}};
  if (with_time) j["wall_time_ms"] = r.wall_time_ms;
  return j;
}

json analysis_json(const FeatureSet& features, const std::optional<AlgebraicReport>& algebraic, const Chart& chart,
                   const std::string& digest) {
  json inventory = inventory_json(features, chart);
  if (algebraic) inventory["algebraic"] = algebraic_json(*algebraic);
  return {{"schema_version", kReportSchemaVersion},
          {"check", "analyze"},
          {"digest", digest},
          {"inventory", inventory},
          {"diagnostics", json::array()}};
}

}  // namespace curvelab
