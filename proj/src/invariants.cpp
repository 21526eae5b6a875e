#include "curvelab/invariants.hpp"

#include <chrono>
#include <random>

#include "curvelab/errors.hpp"
#include "curvelab/generators.hpp"

namespace curvelab {

namespace {

constexpr int kMaxPencilRetries = 10;

class Stopwatch {
 public:
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

int twice_projective_rhs(const FeatureSet& fs) {
  return 2 * fs.n() + fs.i() + fs.a() * (fs.a() - 2) - 2 * fs.infinity.tangent_excess();
}

void algebraic_gates(VerificationReport& r, const AlgebraicReport& a) {
  r.twice_lhs = 2 * a.rho;
  r.twice_rhs = 2 * a.rhs;
  r.gates.push_back({"t0 >= 0", a.t0 >= 0});
  r.gates.push_back({"a <= d and a = d mod 2", a.a <= a.degree && (a.degree - a.a) % 2 == 0});
  if (!a.nodes) {
    r.gates.push_back({"rho even", a.even()});
    r.gates.push_back({"rho >= (d-a)(d-a-2)/2", a.rho >= a.lower_bound()});
    r.gates.push_back({"(d-a)(d-a-2)/2 >= 0", a.lower_bound() >= 0});
  }
}

}  // namespace

const char* to_string(Check c) {
  switch (c) {
    case Check::Affine: return "affine";
    case Check::Pencil: return "pencil";
    case Check::Projective: return "projective";
    case Check::Algebraic: return "algebraic";
    case Check::Nodal: return "nodal";
    case Check::Jumps: return "jumps";
  }
  return "?";
}

Check parse_check(std::string_view name) {
  for (Check c : {Check::Affine, Check::Pencil, Check::Projective, Check::Algebraic, Check::Nodal, Check::Jumps})
    if (name == to_string(c)) return c;
  fail(ErrorCode::SchemaError, "unknown check '" + std::string(name) + "'");
}

bool VerificationReport::passed() const {
  if (twice_delta() != 0) return false;
  for (const auto& g : gates)
    if (!g.passed) return false;
  return true;
}

VerificationReport verify_affine(const Curve& curve, const Chart& chart, const Tolerances& tol) {
  Stopwatch clock;
  VerificationReport r;
  r.check = Check::Affine;
  r.features = analyze(curve, chart, tol);
  if (r.features.a() > 0)
    fail(ErrorCode::NotAffine, "curve meets the line at infinity in " + std::to_string(r.features.a()) + " points");
  r.twice_lhs = 2 * r.features.counts().sigma();
  r.twice_rhs = 2 * r.features.n() + r.features.i();
  r.wall_time_ms = clock.ms();
  return r;
}

VerificationReport verify_projective(const Curve& curve, const Chart& chart, const Tolerances& tol) {
  Stopwatch clock;
  VerificationReport r;
  r.check = Check::Projective;
  r.features = analyze(curve, chart, tol);
  r.twice_lhs = 2 * r.features.counts().sigma();
  r.twice_rhs = twice_projective_rhs(r.features);
  r.wall_time_ms = clock.ms();
  return r;
}

VerificationReport verify_pencil(const Curve& curve, const Chart& chart, const std::vector<Line>& lines,
                                 int random_lines, unsigned long long seed, const Tolerances& tol) {
  Stopwatch clock;
  VerificationReport r;
  r.check = Check::Pencil;
  const auto samples = CurveSamples::of(curve, tol.subdivision);
  r.features = analyze(curve, samples, chart, tol);
  const int a = r.features.a();

  auto run = [&](const Line& L) {
    bool tangent = false;
    for (const auto& e : r.features.infinity.entries) tangent = tangent || e.tangent.approx(L, tol.line);
    const int sigma = sigma_L(curve, L, chart, tol);
    const int on_line = line_intersections(curve, samples, L, tol);
    r.pencil.push_back({L, tangent, sigma, on_line, on_line - a + (tangent ? 1 : 0)});
  };
  for (const auto& L : lines) run(L);
  for (const auto& e : r.features.infinity.entries) run(e.tangent);

  Rng rng(seed);
  for (int k = 0; k < random_lines; ++k) {
    for (int attempt = 0;; ++attempt) {
      const Line L(random_line(rng));
      try {
        run(L);
        break;
      } catch (const CurveError& e) {
        if (category(e.code()) != ErrorCategory::Genericity || attempt >= kMaxPencilRetries) throw;
        r.diagnostics.push_back(std::string("random line replaced: ") + e.what());
      }
    }
  }
  for (const auto& c : r.pencil) {
    r.twice_lhs += 2 * c.sigma;
    r.twice_rhs += 2 * c.expected;
  }
  bool each = true;
  for (const auto& c : r.pencil) each = each && c.sigma == c.expected;
  r.gates.push_back({"every line", each});
  r.wall_time_ms = clock.ms();
  return r;
}

VerificationReport verify_algebraic(const Polynomial& F, const Chart& chart, const Tolerances& tol) {
  Stopwatch clock;
  VerificationReport r;
  r.check = Check::Algebraic;
  r.algebraic = analyze_algebraic(AlgebraicCurve{F, std::nullopt}, chart, tol);
  r.features = r.algebraic->features;
  algebraic_gates(r, *r.algebraic);
  r.wall_time_ms = clock.ms();
  return r;
}

VerificationReport verify_nodal(const Polynomial& F, int total_nodes, const Chart& chart, const Tolerances& tol) {
  Stopwatch clock;
  VerificationReport r;
  r.check = Check::Nodal;
  r.algebraic = analyze_algebraic(AlgebraicCurve{F, total_nodes}, chart, tol);
  r.features = r.algebraic->features;
  algebraic_gates(r, *r.algebraic);
  r.wall_time_ms = clock.ms();
  return r;
}

VerificationReport verify_jump_catalog(const Curve& curve, const Chart& chart, int n_samples,
                                       const Tolerances& tol) {
  Stopwatch clock;
  VerificationReport r;
  r.check = Check::Jumps;
  r.features = analyze(curve, chart, tol);
  r.jumps = jump_profile(curve, r.features, chart, n_samples, tol);
  r.twice_lhs = 2 * r.jumps->grouped();
  r.twice_rhs = 0;
  for (int j = 0; j < curve.size(); ++j)
    r.gates.push_back({"component " + std::to_string(j) + " jumps sum to 0", r.jumps->total(j) == 0});
  bool matched = true;
  for (const auto& e : r.jumps->events) matched = matched && e.measured == e.expected;
  r.gates.push_back({"every jump catalogued", matched});
  r.wall_time_ms = clock.ms();
  return r;
}

}  // namespace curvelab
