// Acceptance suite: one PASS/FAIL line per criterion, exit status 0 only
// when all of them pass.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "curvelab/algebraic.hpp"
#include "curvelab/curve_file.hpp"
#include "curvelab/errors.hpp"
#include "curvelab/invariants.hpp"
#include "curvelab/report.hpp"
#include "curvelab/suite.hpp"
#include "curves.hpp"

using namespace curvelab;
using namespace testcurves;

namespace {

constexpr double kGoldenSeconds = 5.0;     // per golden case
constexpr double kResidual = 1e-9;         // polished flexes and bitangents
constexpr int kSuiteSize = 50;             // generic curves per trig suite
constexpr int kMaxAttempts = 100;          // generated curves per trig suite
constexpr double kAffineSeconds = 120.0;   // whole a = 0 suite
constexpr double kMaxRejection = 0.30;     // genericity rejections / generated
constexpr int kPencilLines = 20;           // random lines per curve
constexpr int kMinTangentCases = 5;        // lines taken from the tangents at infinity
constexpr int kJumpSamples = 512;          // grid points per component
constexpr int kQuarticsPerTarget = 12;     // random quartics for each target a
constexpr unsigned long long kSeed = 20261018;

const std::string kData = CURVELAB_DATA_DIR;

class Clock {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

struct Outcome {
  bool ok = true;
  std::vector<std::string> problems;
  std::string summary;

  void require(bool condition, const std::string& what) {
    if (!condition) {
      ok = false;
      if (problems.size() < 6) problems.push_back(what);
    }
  }
};

std::string str(auto&&... parts) {
  std::ostringstream out;
  (out << ... << parts);
  return out.str();
}

// Everything the algebraic criteria look at, collected while running them.
std::vector<AlgebraicReport> algebraic_reports;

// Trig curves of criteria 2 and 3, reused by the pencil criterion.
std::vector<Curve> generic_curves;

struct Golden {
  std::string name;
  Polynomial F;
  Line infinity;
  int a;
};

std::vector<Golden> golden_set() {
  return {{"conic a=2", conic_hyperbola(), Line::at_infinity(), 2},
          {"cubic a=1", cubic(), Line(0.3, 0.2, 1), 1},
          {"cubic a=3", cubic(), Line(1, 0.1, 0.05), 3},
          {"Trott quartic a=0", trott(), Line::at_infinity(), 0}};
}

void check_residuals(Outcome& out, const AlgebraicReport& r, const std::string& name) {
  for (const auto& f : r.flexes) out.require(f.residual < kResidual, str(name, ": flex residual ", f.residual));
  for (const auto& b : r.bitangents)
    out.require(b.residual < kResidual, str(name, ": bitangent residual ", b.residual));
}

Outcome golden() {
  Outcome out;
  const Tolerances tol;
  for (const auto& g : golden_set()) {
    Clock clock;
    try {
      const auto r = rho(AlgebraicCurve{g.F, std::nullopt}, Chart(g.infinity), tol);
      algebraic_reports.push_back(r);
      const int expected = g.F.degree() == 4 ? 4 : 0;
      out.require(r.a == g.a, str(g.name, ": a = ", r.a));
      out.require(r.rho == expected, str(g.name, ": rho = ", r.rho));
      out.require(r.delta() == 0, str(g.name, ": delta = ", r.delta()));
      check_residuals(out, r, g.name);
    } catch (const CurveError& e) {
      out.require(false, str(g.name, ": ", e.what()));
    }
    out.require(clock.seconds() < kGoldenSeconds, str(g.name, ": ", clock.seconds(), " s"));
  }

  // Random quartics, bucketed by the number of real points at infinity they
  // actually have.
  std::map<int, std::set<int>> values;
  std::map<int, int> bucket;
  int rejected = 0;
  for (int index = 0; index < 3 * kQuarticsPerTarget; ++index) {
    Rng rng = suite_rng(kSeed, index);
    const Polynomial F = random_quartic(rng, suite_target(Check::Algebraic, index));
    Clock clock;
    try {
      const auto r = rho(AlgebraicCurve{F, std::nullopt}, Chart(), tol);
      algebraic_reports.push_back(r);
      values[r.a].insert(r.rho);
      ++bucket[r.a];
      check_residuals(out, r, str("quartic #", index));
      const std::set<int> allowed = r.a == 0 ? std::set<int>{4} : r.a == 2 ? std::set<int>{0, 2, 4}
                                                                             : std::set<int>{0, 2, 4, 6, 8};
      out.require(allowed.count(r.rho) == 1, str("quartic #", index, ": a = ", r.a, " but rho = ", r.rho));
    } catch (const CurveError& e) {
      out.require(category(e.code()) == ErrorCategory::Genericity, str("quartic #", index, ": ", e.what()));
      ++rejected;
    }
    out.require(clock.seconds() < kGoldenSeconds, str("quartic #", index, ": ", clock.seconds(), " s"));
  }
  for (int a : {0, 2, 4}) out.require(bucket[a] > 0, str("no random quartic landed at a = ", a));

  std::ostringstream s;
  s << "conic, cubics, Trott; quartics";
  for (const auto& [a, set] : values) {
    s << " a=" << a << " (" << bucket[a] << "): rho in {";
    bool first = true;
    for (int v : set) s << (first ? "" : ",") << v, first = false;
    s << "}";
  }
  s << ", " << rejected << " rejected";
  out.summary = s.str();
  return out;
}

struct TrigSuite {
  int generated = 0;
  int rejected = 0;
  int passed = 0;
  int off_target = 0;
};

// Draws suite curves until `kSuiteSize` pass the genericity gate with a
// measured a in `targets`, verifying each with `verify`.
TrigSuite trig_suite(Outcome& out, Check check, const std::set<int>& targets,
                     const std::function<VerificationReport(const Curve&)>& verify, bool keep) {
  TrigSuite s;
  const Tolerances tol;
  int accepted = 0;
  for (int index = 0; accepted < kSuiteSize && index < kMaxAttempts; ++index) {
    Rng rng = suite_rng(kSeed, index);
    const Curve curve{{CurveComponent(random_trig_curve(rng, suite_target(check, index)))}};
    ++s.generated;
    try {
      check_immersed(curve, 4096, tol.genericity);
      const auto r = verify(curve);
      if (!targets.count(r.features.a())) {
        ++s.off_target;
        continue;
      }
      ++accepted;
      if (keep) generic_curves.push_back(curve);
      if (r.passed())
        ++s.passed;
      else
        out.require(false, str(to_string(check), " #", index, ": lhs ", r.twice_lhs, "/2, rhs ", r.twice_rhs, "/2"));
    } catch (const CurveError& e) {
      if (category(e.code()) == ErrorCategory::Genericity) {
        ++s.rejected;
      } else {
        ++accepted;
        out.require(false, str(to_string(check), " #", index, ": ", e.what()));
      }
    }
  }
  out.require(accepted >= kSuiteSize, str("only ", accepted, " usable curves in ", s.generated));
  return s;
}

Outcome affine_suite() {
  Outcome out;
  Clock clock;
  const auto s = trig_suite(out, Check::Affine, {0},
                            [](const Curve& c) { return verify_affine(c, Chart(), Tolerances()); }, true);
  out.require(clock.seconds() < kAffineSeconds, str("suite took ", clock.seconds(), " s"));
  out.summary = str(s.passed, " curves exact, ", s.rejected, " rejected, ", s.off_target, " off target, ",
                    static_cast<int>(clock.seconds()), " s");
  return out;
}

Outcome projective_suite() {
  Outcome out;
  const auto s = trig_suite(out, Check::Projective, {1, 2, 3},
                            [](const Curve& c) { return verify_projective(c, Chart(), Tolerances()); }, true);
  const double rate = double(s.rejected) / s.generated;
  out.require(rate < kMaxRejection, str("rejection rate ", rate));
  out.summary = str(s.passed, " curves exact, ", s.rejected, "/", s.generated, " rejected, ", s.off_target,
                    " off target");
  return out;
}

Outcome pencil_suite() {
  Outcome out;
  const Tolerances tol;
  int lines = 0, tangent_cases = 0, curves = 0;
  for (size_t k = 0; k < generic_curves.size(); ++k) {
    try {
      const auto r = verify_pencil(generic_curves[k], Chart(), {}, kPencilLines, kSeed + k, tol);
      ++curves;
      for (const auto& c : r.pencil) {
        ++lines;
        tangent_cases += c.tangent_at_infinity;
        out.require(c.sigma == c.expected, str("curve ", k, ": sigma_L ", c.sigma, " but expected ", c.expected));
      }
    } catch (const CurveError& e) {
      out.require(false, str("curve ", k, ": ", e.what()));
    }
  }
  out.require(curves >= 2 * kSuiteSize, str("only ", curves, " curves"));
  out.require(tangent_cases >= kMinTangentCases, str("only ", tangent_cases, " tangent cases"));
  out.summary = str(curves, " curves, ", lines, " lines, ", tangent_cases, " through tangents at infinity");
  return out;
}

Outcome jump_suite() {
  Outcome out;
  int events = 0;
  const auto s = trig_suite(out, Check::Jumps, {0, 1, 2, 3}, [&](const Curve& c) {
    auto r = verify_jump_catalog(c, Chart(), kJumpSamples, Tolerances());
    events += static_cast<int>(r.jumps->events.size());
    return r;
  }, false);
  out.summary = str(s.passed, " curves, ", events, " events all catalogued, ", s.rejected, " rejected");
  return out;
}

Outcome klein() {
  Outcome out;
  Tolerances tol;
  for (const Line& infinity : {Line(0.3, 0.2, 1), Line(1, 0.1, 0.05), Line(0.1, -0.4, 1)}) {
    try {
      const auto r = analyze_algebraic(AlgebraicCurve{cubic(), std::nullopt}, Chart(infinity), tol);
      algebraic_reports.push_back(r);
      out.require(r.i_R == 3, str("cubic: i_R = ", r.i_R));
      out.require(r.t0 == 0, str("cubic: t0 = ", r.t0));
    } catch (const CurveError& e) {
      out.require(false, str("cubic: ", e.what()));
    }
  }
  Tolerances fine = tol;
  fine.subdivision *= 2;
  fine.trace_resolution *= 2;
  int split = 0, i_R = 0;
  for (const Tolerances* t : {&tol, &fine}) {
    try {
      const auto r = analyze_algebraic(AlgebraicCurve{trott(), std::nullopt}, Chart(), *t);
      algebraic_reports.push_back(r);
      const int count = static_cast<int>(r.bitangents.size());
      out.require(count == 28, str("Trott: ", count, " split bitangents"));
      out.require(2 * r.t0 + r.i_R == 8, str("Trott: t0 = ", r.t0, ", i_R = ", r.i_R));
      if (t == &tol) {
        split = count;
        i_R = r.i_R;
      } else {
        out.require(count == split && r.i_R == i_R, "Trott: counts change at 2x resolution");
      }
    } catch (const CurveError& e) {
      out.require(false, str("Trott: ", e.what()));
    }
  }
  out.summary = str("cubics i_R=3 t0=0; Trott ", split, " split bitangents, i_R=", i_R, " at 1x and 2x");
  return out;
}

Outcome parity() {
  Outcome out;
  int smallest_margin = 1 << 20;
  for (const auto& r : algebraic_reports) {
    out.require(r.even(), str("rho = ", r.rho, " is odd (d = ", r.degree, ", a = ", r.a, ")"));
    out.require(r.lower_bound() >= 0, str("bound ", r.lower_bound(), " < 0"));
    out.require(r.rho >= r.lower_bound(), str("rho = ", r.rho, " < ", r.lower_bound()));
    smallest_margin = std::min(smallest_margin, r.rho - r.lower_bound());
  }
  out.require(!algebraic_reports.empty(), "no algebraic reports collected");
  out.summary = str(algebraic_reports.size(), " algebraic reports, smallest rho - bound = ", smallest_margin);
  return out;
}

// Integer content of a report.
std::vector<int> integers(const VerificationReport& r) {
  const auto& f = r.features;
  std::vector<int> v{r.twice_lhs, r.twice_rhs, f.i(), f.n(), f.counts().exterior, f.counts().interior, f.a(),
                     f.infinity.tangent_excess()};
  for (const auto& e : f.infinity.entries) v.push_back(e.intersections);
  for (const auto& c : r.pencil) v.insert(v.end(), {c.sigma, c.on_line, c.expected});
  if (r.algebraic) v.insert(v.end(), {r.algebraic->rho, r.algebraic->i_R, r.algebraic->t0,
                                      static_cast<int>(r.algebraic->bitangents.size())});
  if (r.jumps) v.push_back(r.jumps->grouped());
  return v;
}

Outcome stability() {
  Outcome out;
  Tolerances tol;
  Tolerances fine = tol;
  fine.subdivision *= 2;
  fine.trace_resolution *= 2;
  int cases = 0;

  auto compare = [&](const std::string& name, const CurveFile& file, Check check) {
    auto run = [&](const Tolerances& t) {
      const Chart chart(file.line_at_infinity);
      VerificationReport r;
      if (check == Check::Algebraic) {
        r = verify_algebraic(file.polynomial, chart, t);
      } else if (check == Check::Nodal) {
        r = verify_nodal(file.polynomial, *file.total_nodes, chart, t);
      } else {
        const Curve curve =
            file.kind == CurveKind::Trig ? file.curve : trace_real_curve(file.polynomial, false, t).curve;
        r = check == Check::Jumps    ? verify_jump_catalog(curve, chart, kJumpSamples, t)
            : check == Check::Pencil ? verify_pencil(curve, chart, {}, 5, kSeed, t)
                                     : verify_projective(curve, chart, t);
      }
      r.digest = input_digest(file, t);
      return r;
    };
    try {
      const auto a = run(tol);
      if (!a.passed()) return;
      ++cases;
      const auto b = run(tol);
      const Chart chart(file.line_at_infinity);
      out.require(report_json(a, chart, false).dump() == report_json(b, chart, false).dump(),
                  name + ": reruns differ");
      out.require(integers(a) == integers(run(fine)), name + ": integers change at 2x resolution");
    } catch (const CurveError& e) {
      out.require(false, name + ": " + e.what());
    }
  };

  for (const char* name : {"circle", "limacon", "two-circles", "crossing-ellipses", "wavy-ellipse", "hyperbola"})
    for (Check c : {Check::Projective, Check::Pencil, Check::Jumps})
      compare(str(name, "/", to_string(c)), parse_curve_file(kData + "/" + name + ".json"), c);
  for (const char* name : {"conic-hyperbola", "cubic-a1", "cubic-a3", "trott"})
    compare(name, parse_curve_file(kData + "/" + name + ".json"), Check::Algebraic);
  for (const char* name : {"nodal-cubic", "acnodal-cubic"})
    compare(name, parse_curve_file(kData + "/" + name + ".json"), Check::Nodal);
  for (int index = 0; index < 6; ++index) {
    Rng rng = suite_rng(kSeed, index);
    CurveFile file;
    file.curve.components.emplace_back(random_trig_curve(rng, index % 4));
    compare(str("random #", index), file, Check::Projective);
  }
  out.summary = str(cases, " passing cases rerun identically and at 2x subdivision and trace resolution");
  return out;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "golden algebraic set", golden},
      {2, "affine identity on random a=0 curves", affine_suite},
      {3, "projective identity on random a in {1,2,3} curves", projective_suite},
      {4, "pencil identity with random lines", pencil_suite},
      {5, "jump catalogue on random curves", jump_suite},
      {6, "Klein coupling", klein},
      {7, "parity and lower bound", parity},
      {8, "determinism and resolution stability", stability},
  };
  bool all = true;
  for (const auto& c : criteria) {
    Clock clock;
    const Outcome o = c.run();
    all = all && o.ok;
    std::printf("%s criterion %d: %s -- %s (%.1f s)\n", o.ok ? "PASS" : "FAIL", c.id, c.name, o.summary.c_str(),
                clock.seconds());
    for (const auto& p : o.problems) std::printf("    %s\n", p.c_str());
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
