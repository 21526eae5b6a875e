#include <algorithm>

#include "curvelab/errors.hpp"
#include "curvelab/invariants.hpp"
#include "curvelab/suite.hpp"
#include "curves.hpp"
#include "doctest.h"

using namespace curvelab;
using namespace testcurves;

namespace {

int count_kind(const JumpProfile& p, JumpKind k) {
  return static_cast<int>(std::count_if(p.events.begin(), p.events.end(), [&](const auto& e) { return e.kind == k; }));
}

}  // namespace

TEST_CASE("affine identity on named curves") {
  const Tolerances tol;
  const Chart chart;
  struct Case {
    const char* name;
    Curve curve;
    int twice_sigma;
  };
  for (const auto& c : {Case{"circle", circle(), 0}, Case{"limacon", limacon(), 2}, Case{"two circles", two_circles(), 0},
                        Case{"crossing ellipses", crossing_ellipses(), 8}, Case{"wavy ellipse", wavy_ellipse(), 4}}) {
    CAPTURE(c.name);
    const auto r = verify_affine(c.curve, chart, tol);
    CHECK(r.twice_lhs == c.twice_sigma);
    CHECK(r.twice_delta() == 0);
    CHECK(r.passed());
  }
  CHECK_THROWS_AS(verify_affine(hyperbola(), chart, tol), CurveError);
}

TEST_CASE("projective identity") {
  const Tolerances tol;
  SUBCASE("reduces to the affine one when a = 0") {
    const auto p = verify_projective(limacon(), Chart(), tol);
    const auto a = verify_affine(limacon(), Chart(), tol);
    CHECK(p.twice_lhs == a.twice_lhs);
    CHECK(p.twice_rhs == a.twice_rhs);
  }
  SUBCASE("hyperbola: 0 = 0 + 0 + 0 - 0") {
    const auto r = verify_projective(hyperbola(), Chart(), tol);
    CHECK(r.features.a() == 2);
    CHECK(r.twice_lhs == 0);
    CHECK(r.twice_rhs == 0);
  }
  SUBCASE("the same curve in a chart that cuts it") {
    const auto r = verify_projective(two_circles(), Chart(Line(1, 0, -0.3)), tol);
    CHECK(r.features.a() == 2);
    CHECK(r.passed());
  }
}

TEST_CASE("pencil identity") {
  const Tolerances tol;
  SUBCASE("circle with twenty random lines") {
    const auto r = verify_pencil(circle(), Chart(), {Line(1, 0, 0), Line(1, 0, -3)}, 20, 99, tol);
    CHECK(r.pencil.size() == 22);
    CHECK(r.pencil[0].sigma == 2);
    CHECK(r.pencil[1].sigma == 0);
    CHECK(r.passed());
  }
  SUBCASE("hyperbola: every asymptote takes the +1 branch") {
    const auto r = verify_pencil(hyperbola(), Chart(), {}, 5, 3, tol);
    const auto tangent =
        std::count_if(r.pencil.begin(), r.pencil.end(), [](const auto& c) { return c.tangent_at_infinity; });
    CHECK(tangent == 2);
    for (const auto& c : r.pencil)
      if (c.tangent_at_infinity) {
        CHECK(c.sigma == 0);
        CHECK(c.on_line == 1);
      }
    CHECK(r.passed());
  }
}

TEST_CASE("jump catalogue on named curves") {
  const Tolerances tol;
  SUBCASE("circle: f is constant") {
    const auto r = verify_jump_catalog(circle(), Chart(), 256, tol);
    CHECK(r.jumps->events.empty());
    const auto& s = r.jumps->samples[0];
    CHECK(std::all_of(s.begin(), s.end(), [&](const auto& x) { return x.f == s[0].f; }));
    CHECK(r.passed());
  }
  SUBCASE("limacon") {
    const auto r = verify_jump_catalog(limacon(), Chart(), 512, tol);
    CHECK(count_kind(*r.jumps, JumpKind::Node) == 2);
    CHECK(r.jumps->total(0) == 0);
    for (const auto& e : r.jumps->events) CHECK(e.measured == e.expected);
    CHECK(r.passed());
  }
  SUBCASE("hyperbola") {
    const auto r = verify_jump_catalog(hyperbola(), Chart(), 512, tol);
    CHECK(count_kind(*r.jumps, JumpKind::InfinityCrossing) == 2);
    for (const auto& e : r.jumps->events) {
      if (e.kind == JumpKind::InfinityCrossing) CHECK(e.expected == 0);
      if (e.kind == JumpKind::TangentThroughInfinityPoint) CHECK((e.expected == 2 || e.expected == -2));
      CHECK(e.measured == e.expected);
    }
    CHECK(r.passed());
  }
}

TEST_CASE("algebraic verifiers") {
  const Tolerances tol;
  const auto r = verify_algebraic(trott(), Chart(), tol);
  CHECK(r.twice_lhs == 8);
  CHECK(r.passed());
  const auto n = verify_nodal(nodal_cubic(1), 1, Chart(Line(0.3, 0.2, 1)), tol);
  CHECK(n.passed());
}

TEST_CASE("check names") {
  for (Check c : {Check::Affine, Check::Pencil, Check::Projective, Check::Algebraic, Check::Nodal, Check::Jumps})
    CHECK(parse_check(to_string(c)) == c);
  CHECK_THROWS_AS(parse_check("fb"), CurveError);
}

TEST_CASE("property: random suites hold exactly") {
  const Tolerances tol;
  for (Check check : {Check::Affine, Check::Projective, Check::Pencil, Check::Jumps, Check::Algebraic, Check::Nodal}) {
    SuiteOptions o;
    o.check = check;
    o.count = check == Check::Pencil ? 6 : 10;
    o.seed = 20260101;
    o.random_lines = 5;
    const auto result = run_suite(o, tol);
    CAPTURE(to_string(check));
    CHECK(result.failed() == 0);
    CHECK(result.passed() >= o.count / 2);
    for (const auto& c : result.cases)
      if (c.error) CHECK(category(*c.error) == ErrorCategory::Genericity);
  }
}

TEST_CASE("property: suites are deterministic and independent of the thread count") {
  const Tolerances tol;
  SuiteOptions o;
  o.check = Check::Projective;
  o.count = 6;
  o.seed = 5;
  o.threads = 1;
  const auto a = run_suite(o, tol);
  o.threads = 3;
  const auto b = run_suite(o, tol);
  REQUIRE(a.cases.size() == b.cases.size());
  for (size_t k = 0; k < a.cases.size(); ++k) {
    CHECK(a.cases[k].passed() == b.cases[k].passed());
    if (a.cases[k].report && b.cases[k].report) {
      CHECK(a.cases[k].report->twice_lhs == b.cases[k].report->twice_lhs);
      CHECK(a.cases[k].report->features.bitangents.size() == b.cases[k].report->features.bitangents.size());
    }
  }
}

TEST_CASE("property: doubling the subdivision keeps every count") {
  Tolerances tol, fine;
  fine.subdivision = 2 * tol.subdivision;
  SuiteOptions o;
  o.check = Check::Projective;
  for (int index = 0; index < 4; ++index) {
    const auto a = run_case(o, index, tol);
    const auto b = run_case(o, index, fine);
    REQUIRE(a.report.has_value() == b.report.has_value());
    if (!a.report) continue;
    CHECK(a.report->features.i() == b.report->features.i());
    CHECK(a.report->features.n() == b.report->features.n());
    CHECK(a.report->features.counts().exterior == b.report->features.counts().exterior);
    CHECK(a.report->features.counts().interior == b.report->features.counts().interior);
    CHECK(a.report->features.infinity.tangent_excess() == b.report->features.infinity.tangent_excess());
  }
}
