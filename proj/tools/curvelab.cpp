// curvelab: analyze curves and check their bitangent identities.
//
//   curvelab analyze FILE [--json OUT] [--svg OUT]
//   curvelab verify FILE --theorem projective [--line u,v,w ...] [--json OUT]
//   curvelab oracle [FILE] [--theorem jumps] [--suite 50] [--seed 1]
//   curvelab render FILE --svg OUT
//
// Exit status: 0 pass, 1 identity violation, 2 genericity rejection,
// 3 schema or I/O error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "curvelab/algebraic.hpp"
#include "curvelab/curve_file.hpp"
#include "curvelab/errors.hpp"
#include "curvelab/invariants.hpp"
#include "curvelab/report.hpp"
#include "curvelab/suite.hpp"
#include "curvelab/svg.hpp"

using namespace curvelab;
using nlohmann::json;

namespace {

enum Exit { kPass = 0, kIdentity = 1, kGenericity = 2, kInput = 3 };

int exit_code(ErrorCode code) {
  switch (category(code)) {
    case ErrorCategory::Identity: return kIdentity;
    case ErrorCategory::Genericity: return kGenericity;
    case ErrorCategory::Schema:
    case ErrorCategory::Io: return kInput;
  }
  return kInput;
}

struct Options {
  std::string file;
  std::string line_at_infinity;
  std::string theorem;
  std::vector<std::string> lines;
  std::string json_path;
  std::string svg_path;
  int resolution = 0;
  std::vector<std::string> tolerances;
  unsigned long long seed = 1;
  int suite = 50;
  int random_lines = -1;
  int jump_samples = 512;
};

Vec3 parse_triple(const std::string& text, const std::string& flag) {
  std::stringstream in(text);
  std::vector<double> v;
  for (std::string item; std::getline(in, item, ',');) {
    try {
      size_t used = 0;
      v.push_back(std::stod(item, &used));
      if (used != item.size()) v.clear();
    } catch (const std::exception&) {
      v.clear();
      break;
    }
  }
  if (v.size() != 3 || Vec3(v[0], v[1], v[2]).norm() == 0)
    fail(ErrorCode::SchemaError, flag + " expects three numbers u,v,w, not '" + text + "'");
  return Vec3(v[0], v[1], v[2]);
}

Tolerances tolerances(const Options& o) {
  Tolerances tol = Tolerances::from_environment();
  for (const auto& item : o.tolerances) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) fail(ErrorCode::SchemaError, "--tol expects NAME=VALUE, not '" + item + "'");
    double value = 0;
    try {
      value = std::stod(item.substr(eq + 1));
    } catch (const std::exception&) {
      fail(ErrorCode::SchemaError, "--tol " + item + ": value is not a number");
    }
    tol.set(item.substr(0, eq), value);
  }
  if (o.resolution > 0) tol.subdivision = o.resolution;
  return tol;
}

struct Input {
  CurveFile file;
  Curve curve;  // trig components, or the traced real locus
  Chart chart;
};

Input load(const Options& o, const Tolerances& tol, bool trace) {
  Input in;
  in.file = parse_curve_file(o.file);
  if (!o.line_at_infinity.empty()) in.file.line_at_infinity = Line(parse_triple(o.line_at_infinity, "--line-at-infinity"));
  in.chart = Chart(in.file.line_at_infinity);
  if (in.file.kind == CurveKind::Trig) {
    in.curve = in.file.curve;
    check_immersed(in.curve, 2 * tol.subdivision, tol.genericity);
  } else if (trace) {
    in.curve = trace_real_curve(in.file.polynomial, in.file.total_nodes.has_value(), tol).curve;
  }
  return in;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::IoError, "cannot write " + path);
  out << text;
  if (!out) fail(ErrorCode::IoError, "failed writing " + path);
}

void write_json(const std::string& path, const json& j) {
  if (!path.empty()) write_text(path, j.dump(2) + "\n");
}

void print_counts(const FeatureSet& fs) {
  const auto c = fs.counts();
  std::printf("i=%d n=%d t=%d s=%d sigma=%d a=%d excess=%d\n", fs.i(), fs.n(), c.exterior, c.interior, c.sigma(),
              fs.a(), fs.infinity.tangent_excess());
}

void print_algebraic(const AlgebraicReport& r) {
  std::printf("d=%d branches=%d i_R=%d t0=%d split_t=%d split_s=%d rho=%d rhs=%d", r.degree, r.branches, r.i_R, r.t0,
              r.split.exterior, r.split.interior, r.rho, r.rhs);
  if (r.nodes) std::printf(" N=%d n0=%d n2=%d", r.nodes->total, r.nodes->isolated, r.nodes->hyperbolic);
  std::printf("\n");
}

std::string half(int twice) {
  char buf[32];
  if (twice % 2 == 0)
    std::snprintf(buf, sizeof buf, "%d", twice / 2);
  else
    std::snprintf(buf, sizeof buf, "%.1f", twice / 2.0);
  return buf;
}

int cmd_analyze(const Options& o) {
  const Tolerances tol = tolerances(o);
  const Input in = load(o, tol, false);
  const std::string digest = input_digest(in.file, tol);
  std::optional<AlgebraicReport> algebraic;
  FeatureSet fs;
  Curve drawn = in.curve;
  if (in.file.kind == CurveKind::Algebraic) {
    algebraic = analyze_algebraic(AlgebraicCurve{in.file.polynomial, in.file.total_nodes}, in.chart, tol);
    fs = algebraic->features;
    if (!o.svg_path.empty())
      drawn = trace_real_curve(in.file.polynomial, in.file.total_nodes.has_value(), tol).curve;
  } else {
    fs = analyze(in.curve, in.chart, tol);
  }
  print_counts(fs);
  if (algebraic) print_algebraic(*algebraic);
  write_json(o.json_path, analysis_json(fs, algebraic, in.chart, digest));
  if (!o.svg_path.empty()) render_svg(drawn, fs, in.chart, o.svg_path);
  return kPass;
}

VerificationReport verify(const Options& o, Check check, const Input& in, const Tolerances& tol) {
  switch (check) {
    case Check::Affine: return verify_affine(in.curve, in.chart, tol);
    case Check::Projective: return verify_projective(in.curve, in.chart, tol);
    case Check::Jumps: return verify_jump_catalog(in.curve, in.chart, o.jump_samples, tol);
    case Check::Pencil: {
      std::vector<Line> lines;
      for (const auto& l : o.lines) lines.emplace_back(parse_triple(l, "--line"));
      const int random = o.random_lines >= 0 ? o.random_lines : (lines.empty() ? 20 : 0);
      return verify_pencil(in.curve, in.chart, lines, random, o.seed, tol);
    }
    case Check::Algebraic:
    case Check::Nodal:
      if (in.file.kind != CurveKind::Algebraic)
        fail(ErrorCode::SchemaError, std::string(to_string(check)) + " needs an algebraic curve file");
      if (check == Check::Algebraic) return verify_algebraic(in.file.polynomial, in.chart, tol);
      if (!in.file.total_nodes) fail(ErrorCode::SchemaError, "nodal needs {\"nodal\": {\"N\": ...}} in the curve file");
      return verify_nodal(in.file.polynomial, *in.file.total_nodes, in.chart, tol);
  }
  fail(ErrorCode::SchemaError, "unknown check");
}

int cmd_verify(const Options& o) {
  const Tolerances tol = tolerances(o);
  const CurveFile probe = parse_curve_file(o.file);
  Check check = probe.kind == CurveKind::Trig ? Check::Projective
                : probe.total_nodes             ? Check::Nodal
                                                : Check::Algebraic;
  if (!o.theorem.empty()) check = parse_check(o.theorem);
  const bool needs_trace = check != Check::Algebraic && check != Check::Nodal;
  const Input in = load(o, tol, needs_trace);
  VerificationReport r = verify(o, check, in, tol);
  r.digest = input_digest(in.file, tol);

  print_counts(r.features);
  if (r.algebraic) print_algebraic(*r.algebraic);
  for (const auto& c : r.pencil)
    std::printf("  line [%.6g, %.6g, %.6g]%s sigma_L=%d |C n L|=%d expected=%d\n", c.line[0], c.line[1], c.line[2],
                c.tangent_at_infinity ? " (tangent at infinity)" : "", c.sigma, c.on_line, c.expected);
  for (const auto& g : r.gates) std::printf("  gate %-28s %s\n", g.name.c_str(), g.passed ? "ok" : "FAILED");
  for (const auto& d : r.diagnostics) std::printf("  note %s\n", d.c_str());
  std::printf("%s: lhs=%s rhs=%s delta=%s %s\n", to_string(check), half(r.twice_lhs).c_str(),
              half(r.twice_rhs).c_str(), half(r.twice_delta()).c_str(), r.passed() ? "PASS" : "FAIL");

  write_json(o.json_path, report_json(r, in.chart));
  if (!o.svg_path.empty()) render_svg(in.curve, r.features, in.chart, o.svg_path);
  return r.passed() ? kPass : kIdentity;
}

int cmd_oracle(const Options& o) {
  const Tolerances tol = tolerances(o);
  if (!o.file.empty()) {
    Options single = o;
    single.theorem = o.theorem.empty() ? "jumps" : o.theorem;
    return cmd_verify(single);
  }
  SuiteOptions so;
  so.check = o.theorem.empty() ? Check::Jumps : parse_check(o.theorem);
  so.count = o.suite;
  so.seed = o.seed;
  so.random_lines = o.random_lines >= 0 ? o.random_lines : 20;
  so.jump_samples = o.jump_samples;
  const SuiteResult result = run_suite(so, tol);

  json cases = json::array();
  for (const auto& c : result.cases) {
    json entry{{"index", c.index}, {"target", c.target_a}};
    if (c.report) {
      std::printf("#%-3d target=%d a=%d lhs=%s rhs=%s %s\n", c.index, c.target_a, c.report->features.a(),
                  half(c.report->twice_lhs).c_str(), half(c.report->twice_rhs).c_str(),
                  c.passed() ? "PASS" : "FAIL");
      entry["report"] = report_json(*c.report, Chart());
    } else {
      std::printf("#%-3d target=%d %s %s\n", c.index, c.target_a, c.rejected() ? "REJECTED" : "FAIL",
                  c.message.c_str());
      entry["error"] = {{"code", std::string(to_string(*c.error))}, {"message", c.message}};
    }
    cases.push_back(entry);
  }
  std::printf("%s suite: %d passed, %d failed, %d rejected of %zu (seed %llu)\n", to_string(so.check),
              result.passed(), result.failed(), result.rejected(), result.cases.size(), o.seed);
  write_json(o.json_path, {{"schema_version", kReportSchemaVersion},
                           {"check", to_string(so.check)},
                           {"seed", o.seed},
                           {"passed", result.passed()},
                           {"failed", result.failed()},
                           {"rejected", result.rejected()},
                           {"cases", cases}});
  if (result.failed() > 0) return kIdentity;
  if (result.passed() == 0 && result.rejected() > 0) return kGenericity;
  return kPass;
}

int cmd_render(const Options& o) {
  if (o.svg_path.empty()) fail(ErrorCode::SchemaError, "render needs --svg PATH");
  const Tolerances tol = tolerances(o);
  const Input in = load(o, tol, true);
  const FeatureSet fs = analyze(in.curve, in.chart, tol);
  render_svg(in.curve, fs, in.chart, o.svg_path);
  print_counts(fs);
  return kPass;
}

void add_common(CLI::App* app, Options& o, bool file_required) {
  auto* file = app->add_option("file", o.file, "Curve file (JSON)");
  if (file_required) file->required();
  app->add_option("--line-at-infinity", o.line_at_infinity, "Line at infinity u,v,w (overrides the file)");
  app->add_option("--json", o.json_path, "Write the JSON report here");
  app->add_option("--svg", o.svg_path, "Write an SVG drawing here");
  app->add_option("--resolution", o.resolution, "Cells per parameter axis for the feature scans");
  app->add_option("--tol", o.tolerances, "Override a tolerance, NAME=VALUE (repeatable)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Flexes, nodes, bitangents and signed bitangent identities of closed plane curves"};
  app.require_subcommand(1);
  Options o;

  auto* analyze_cmd = app.add_subcommand("analyze", "Report flexes, nodes, bitangents and the infinity profile");
  add_common(analyze_cmd, o, true);

  auto* verify_cmd = app.add_subcommand("verify", "Check one identity on a curve file");
  add_common(verify_cmd, o, true);
  const std::string checks = "affine|pencil|projective|algebraic|nodal|jumps";
  verify_cmd->add_option("--theorem", o.theorem, "Identity to check: " + checks);
  verify_cmd->add_option("--line", o.lines, "Pencil line u,v,w (repeatable)");
  verify_cmd->add_option("--random-lines", o.random_lines, "Random pencil lines (default 20 without --line)");
  verify_cmd->add_option("--seed", o.seed, "Seed for random pencil lines");
  verify_cmd->add_option("--jump-samples", o.jump_samples, "Grid points per component for the jump scan");

  auto* oracle_cmd = app.add_subcommand("oracle", "Jump oracle on a file, or a seeded random suite without one");
  add_common(oracle_cmd, o, false);
  oracle_cmd->add_option("--theorem", o.theorem, "Check for the suite (default jumps): " + checks);
  oracle_cmd->add_option("--suite", o.suite, "Number of random cases");
  oracle_cmd->add_option("--seed", o.seed, "Suite seed");
  oracle_cmd->add_option("--random-lines", o.random_lines, "Random lines per pencil case");
  oracle_cmd->add_option("--jump-samples", o.jump_samples, "Grid points per component for the jump scan");

  auto* render_cmd = app.add_subcommand("render", "Draw the curve and its features as SVG");
  add_common(render_cmd, o, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInput;
  }

  try {
    if (*analyze_cmd) return cmd_analyze(o);
    if (*verify_cmd) return cmd_verify(o);
    if (*oracle_cmd) return cmd_oracle(o);
    return cmd_render(o);
  } catch (const CurveError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    if (!o.json_path.empty()) {
      try {
        write_json(o.json_path, {{"schema_version", kReportSchemaVersion},
                                 {"error", {{"code", std::string(to_string(e.code()))}, {"message", e.what()}}}});
      } catch (const CurveError&) {
      }
    }
    return exit_code(e.code());
  }
}
