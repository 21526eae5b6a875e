#include <memory>

#include "curvelab/algebraic.hpp"
#include "curvelab/errors.hpp"
#include "curves.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace curvelab;
using namespace testcurves;

namespace {

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const CurveError& e) {
    return e.code();
  }
  FAIL("expected a CurveError");
  return ErrorCode::IoError;
}

constexpr double kResidual = 1e-9;

}  // namespace

TEST_CASE("tracing the real locus") {
  const Tolerances tol;
  SUBCASE("circle: one oval") {
    const auto t = trace_real_curve(conic_circle(), false, tol);
    CHECK(t.curve.size() == 1);
    CHECK(infinity_profile(t.curve, Chart(), tol).a() == 0);
  }
  SUBCASE("hyperbola: one component through infinity twice") {
    const auto t = trace_real_curve(conic_hyperbola(), false, tol);
    CHECK(t.curve.size() == 1);
    const auto profile = infinity_profile(t.curve, Chart(), tol);
    CHECK(profile.a() == 2);
    for (const auto& e : profile.entries)
      CHECK((e.tangent.approx(Line(1, 1, 0), 1e-8) || e.tangent.approx(Line(1, -1, 0), 1e-8)));
  }
  SUBCASE("Trott quartic: four ovals, as a marching-squares count says") {
    const auto t = trace_real_curve(trott(), false, tol);
    CHECK(t.curve.size() == 4);
    CHECK(oracle::negative_regions(trott(), 1.5, 2048) == 4);
  }
  SUBCASE("traced points lie on the curve") {
    const Polynomial F = trott();
    const auto t = trace_real_curve(F, false, tol);
    for (int j = 0; j < t.curve.size(); ++j)
      for (int k = 0; k < 50; ++k) {
        const Vec3 p = t.curve[j].point(k * t.curve[j].period() / 50).normalized();
        CHECK(std::abs(F(p)) < 1e-9 * F.scale());
      }
  }
  SUBCASE("no real points") {
    const Polynomial F = poly(2, {{2, 0, 0, 1}, {0, 2, 0, 1}, {0, 0, 2, 1}});
    CHECK(code_of([&] { trace_real_curve(F, false, tol); }) == ErrorCode::EmptyRealLocus);
  }
  SUBCASE("a node is rejected in smooth mode") {
    CHECK(code_of([&] { trace_real_curve(nodal_cubic(1), false, tol); }) == ErrorCode::SingularPointHit);
  }
}

TEST_CASE("singular points") {
  const Tolerances tol;
  const auto crunode = find_singular_points(nodal_cubic(1), tol);
  REQUIRE(crunode.size() == 1);
  CHECK(crunode[0].kind == NodeKind::Hyperbolic);
  CHECK(projective_distance<double>(crunode[0].p, Vec3(0, 0, 1)) < 1e-9);
  const auto acnode = find_singular_points(nodal_cubic(-1), tol);
  REQUIRE(acnode.size() == 1);
  CHECK(acnode[0].kind == NodeKind::Isolated);
  CHECK(find_singular_points(trott(), tol).empty());
}

TEST_CASE("real points on lines") {
  const Tolerances tol;
  CHECK(real_points_on_line(conic_circle(), Line(1, 0, 0), tol) == 2);
  CHECK(real_points_on_line(conic_circle(), Line(1, 0, -3), tol) == 0);
  CHECK(real_points_on_line(trott(), Line(0, 1, 0), tol) == 4);
  // Tangent to the cubic y^2 = x^3 - x at (-1, 0) is x = -1; it also passes
  // through the flex (0 : 1 : 0).
  CHECK(real_points_on_tangent(cubic(), Vec3(-1, 0, 1), Line(1, 0, 1), tol) == 2);
  CHECK_THROWS_AS(real_points_on_tangent(cubic(), Vec3(0, 1, 0), Line(0, 0, 1), tol), CurveError);
}

TEST_CASE("Klein's formula") {
  CHECK(klein_t0(3, 3) == 0);
  CHECK(klein_t0(4, 0) == 4);
  CHECK(klein_t0(4, 8) == 0);
  CHECK(klein_t0(3, 1, 1, 0) == 0);
  CHECK(klein_t0(3, 3, 1, 1) == 0);
  CHECK(code_of([] { klein_t0(3, 2); }) == ErrorCode::KleinViolation);
  CHECK(code_of([] { klein_t0(4, 10); }) == ErrorCode::KleinViolation);
}

TEST_CASE("golden algebraic curves") {
  const Tolerances tol;
  auto check = [&](const Polynomial& F, const Line& infinity, int a, int rho_value, int i_R, int split) {
    const auto r = rho(AlgebraicCurve{F, std::nullopt}, Chart(infinity), tol);
    CHECK(r.a == a);
    CHECK(r.rho == rho_value);
    CHECK(r.delta() == 0);
    CHECK(r.even());
    CHECK(r.rho >= r.lower_bound());
    CHECK(r.i_R == i_R);
    CHECK(static_cast<int>(r.bitangents.size()) == split);
    for (const auto& f : r.flexes) CHECK(f.residual < kResidual);
    for (const auto& b : r.bitangents) CHECK(b.residual < kResidual);
    return r;
  };
  SUBCASE("circle") { check(conic_circle(), Line::at_infinity(), 0, 0, 0, 0); }
  SUBCASE("hyperbola") { check(conic_hyperbola(), Line::at_infinity(), 2, 0, 0, 0); }
  SUBCASE("cubic meeting infinity once") {
    const auto r = check(cubic(), Line(0.3, 0.2, 1), 1, 0, 3, 0);
    CHECK(r.t0 == 0);
    CHECK(r.tangent_excess == 1);
  }
  SUBCASE("cubic meeting infinity three times") {
    const auto r = check(cubic(), Line(1, 0.1, 0.05), 3, 0, 3, 0);
    CHECK(r.tangent_excess == 3);
  }
  SUBCASE("Trott quartic") {
    const auto r = check(trott(), Line::at_infinity(), 0, 4, 8, 28);
    CHECK(r.t0 == 0);
    CHECK(r.split.exterior == 16);
    CHECK(r.split.interior == 12);
    CHECK(r.t0 * 2 + r.i_R == 8);
  }
  SUBCASE("a smooth curve with N = 0 gives the same report") {
    const auto smooth = rho(AlgebraicCurve{trott(), std::nullopt}, Chart(), tol);
    const auto nodal = rho(AlgebraicCurve{trott(), 0}, Chart(), tol);
    CHECK(nodal.rho == smooth.rho);
    CHECK(nodal.rhs == smooth.rhs);
    CHECK(nodal.nodes->real() == 0);
  }
}

TEST_CASE("nodal cubics") {
  const Tolerances tol;
  const Chart chart(Line(0.3, 0.2, 1));
  SUBCASE("crunode") {
    const auto r = rho(AlgebraicCurve{nodal_cubic(1), 1}, chart, tol);
    CHECK(r.nodes->hyperbolic == 1);
    CHECK(r.i_R == 1);
    CHECK(r.delta() == 0);
  }
  SUBCASE("acnode") {
    const auto r = rho(AlgebraicCurve{nodal_cubic(-1), 1}, chart, tol);
    CHECK(r.nodes->isolated == 1);
    CHECK(r.i_R == 3);
    CHECK(r.delta() == 0);
  }
  SUBCASE("N below the real node count") {
    CHECK(code_of([&] { analyze_algebraic(AlgebraicCurve{nodal_cubic(1), 0}, chart, tol); }) ==
          ErrorCode::SchemaError);
  }
}
