#include <cmath>
#include <numbers>
#include <random>

#include "curvelab/errors.hpp"
#include "curvelab/geometry.hpp"
#include "curvelab/polynomial.hpp"
#include "curvelab/roots.hpp"
#include "curvelab/tolerances.hpp"
#include "curves.hpp"
#include "doctest.h"

using namespace curvelab;

namespace {

bool same_class(const Vec3& a, const Vec3& b, double tol = 1e-12) {
  return projective_distance<double>(a.normalized(), b.normalized()) < tol;
}

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const CurveError& e) {
    return e.code();
  }
  FAIL("expected a CurveError");
  return ErrorCode::IoError;
}

}  // namespace

TEST_CASE("normalization is unit, sign-fixed and idempotent") {
  const Vec3 v(-3, 4, 0);
  const Vec3 u = normalize_projective<double>(v);
  CHECK(u.norm() == doctest::Approx(1.0));
  CHECK(u.x() > 0);
  CHECK(normalize_projective<double>(u) == u);
  CHECK(Point(0, -2, 5).coords().y() > 0);
  CHECK(code_of([] { Point(0, 0, 0); }) == ErrorCode::CoincidentPoints);
}

TEST_CASE("join") {
  CHECK(same_class(join(Point(1, 0, 1), Point(0, 1, 1)).coeffs(), Vec3(-1, -1, 1)));
  CHECK(same_class(join(Point(1, 0, 0), Point(0, 1, 0)).coeffs(), Vec3(0, 0, 1)));
  CHECK(code_of([] { join(Point(1, 2, 3), Point(2, 4, 6)); }) == ErrorCode::CoincidentPoints);
}

TEST_CASE("meet") {
  CHECK(same_class(meet(Line(1, 0, 0), Line(0, 0, 1)).coords(), Vec3(0, 1, 0)));
  // p_L for L = x - z against the default line at infinity.
  CHECK(same_class(meet(Line(1, 0, -1), Line::at_infinity()).coords(), Vec3(0, 1, 0)));
  CHECK(code_of([] { meet(Line(1, 1, 1), Line(-2, -2, -2)); }) == ErrorCode::CoincidentLines);
}

TEST_CASE("orient") {
  using P = Vector2<double>;
  CHECK(orient<double>(P(0, 0), P(1, 0), P(0, 1)) == 1);
  CHECK(orient<double>(P(0, 0), P(1, 0), P(2, 0)) == 0);
  CHECK(orient<double>(P(0, 0), P(0, 1), P(1, 0)) == -1);
}

TEST_CASE("charts") {
  SUBCASE("default chart is the (x, y) plane") {
    const Chart chart;
    CHECK((chart.map(Vec3(2, 4, 2)) - Vec2(1, 2)).norm() < 1e-15);
    CHECK(chart.on_infinity(Vec3(1, 1, 0), 1e-12));
    CHECK(code_of([&] { chart.map(Vec3(1, 0, 0)); }) == ErrorCode::OnInfinity);
  }
  SUBCASE("a tilted line at infinity") {
    const Chart chart(Line(0.3, -0.2, 1));
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> U(-3, 3);
    for (int k = 0; k < 100; ++k) {
      const Vec2 x(U(rng), U(rng));
      CHECK((chart.map(chart.unmap(x)) - x).norm() < 1e-12);
    }
    CHECK((chart.frame() * chart.frame().transpose() - Mat3::Identity()).norm() < 1e-14);
    CHECK(chart.on_infinity(meet(Line(1, 2, 3), Line(0.3, -0.2, 1)).coords(), 1e-12));
  }
}

TEST_CASE("polynomial evaluation and gradient") {
  const Polynomial F = testcurves::conic_circle();
  const Vec3 p(1, 0, 1);
  CHECK(F(p) == 0.0);
  CHECK(same_class(F.gradient(p), Vec3(2, 0, -2)));
}

TEST_CASE("Euler identity x . grad F = d F on random polynomials") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> N(0, 1);
  for (int d = 1; d <= 6; ++d) {
    Polynomial F(d);
    F.for_each_monomial([&](int i, int j, int k, double) { F.add(i, j, k, N(rng)); });
    for (int trial = 0; trial < 20; ++trial) {
      const Vec3 x(N(rng), N(rng), N(rng));
      CHECK(x.dot(F.gradient(x)) == doctest::Approx(d * F(x)).epsilon(1e-10));
      // Second-order Euler identity: H x = (d - 1) grad F.
      if (d >= 2) CHECK((F.hessian(x) * x - (d - 1) * F.gradient(x)).norm() < 1e-9 * (1 + F.gradient(x).norm()));
    }
  }
}

TEST_CASE("Hessian polynomial agrees with the pointwise determinant") {
  std::mt19937_64 rng(12);
  std::normal_distribution<double> N(0, 1);
  for (int d = 2; d <= 5; ++d) {
    Polynomial F(d);
    F.for_each_monomial([&](int i, int j, int k, double) { F.add(i, j, k, N(rng)); });
    const Polynomial H = F.hessian_polynomial();
    CHECK(H.degree() == 3 * (d - 2));
    for (int trial = 0; trial < 10; ++trial) {
      const Vec3 x(N(rng), N(rng), N(rng));
      CHECK(H(x) == doctest::Approx(F.hessian_det(x)).epsilon(1e-9));
    }
  }
}

TEST_CASE("conics have a constant Hessian") {
  const Polynomial H = testcurves::conic_hyperbola().hessian_polynomial();
  CHECK(H.degree() == 0);
  CHECK(H(Vec3(0.3, 1, 2)) != 0.0);
}

TEST_CASE("composition with a linear map") {
  const Polynomial F = testcurves::cubic();
  Mat3 A;
  A << 1, 2, 0, 0, 1, 1, 1, 0, 1;
  const Polynomial G = F.composed(A);
  const Vec3 x(0.3, -0.7, 1.1);
  CHECK(G(x) == doctest::Approx(F(A * x)));
}

TEST_CASE("scan_roots") {
  SUBCASE("simple roots of sin 3t") {
    const auto scan = scan_roots([](double t) { return std::sin(3 * t); }, 2 * std::numbers::pi, 64);
    REQUIRE(scan.roots.size() == 6);
    for (size_t k = 0; k < 6; ++k) CHECK(scan.roots[k] == doctest::Approx(k * std::numbers::pi / 3).epsilon(1e-12));
  }
  SUBCASE("a root pair inside one cell") {
    const auto scan = scan_roots([](double t) { return (t - 1.1) * (t - 1.101); }, 4.0, 8);
    CHECK(scan.roots.size() == 2);
  }
  SUBCASE("antiperiodic functions") {
    ScanOptions opt;
    opt.antiperiodic = true;
    const auto scan = scan_roots([](double t) { return std::cos(0.5 * t); }, 2 * std::numbers::pi, 32, opt);
    REQUIRE(scan.roots.size() == 1);
    CHECK(scan.roots[0] == doctest::Approx(std::numbers::pi));
  }
  SUBCASE("touches") {
    ScanOptions opt;
    opt.touch_tolerance = 1e-12;
    const auto scan = scan_roots([](double t) { return 1 - std::cos(t); }, 2 * std::numbers::pi, 33, opt);
    CHECK(scan.roots.empty());
    CHECK(scan.touches.size() == 1);
  }
  CHECK(cyclic_distance(0.1, 6.2, 2 * std::numbers::pi) == doctest::Approx(2 * std::numbers::pi - 6.1));
}

TEST_CASE("tolerances by name and from the environment") {
  Tolerances tol;
  tol.set("pt", 1e-8);
  CHECK(tol.get("pt") == 1e-8);
  tol.set("subdivision", 4096);
  CHECK(tol.subdivision == 4096);
  CHECK(code_of([&] { tol.set("nonsense", 1); }) == ErrorCode::SchemaError);
  CHECK(Tolerances::names().size() == 12);

  setenv("CURVELAB_TOL_NEWTON", "1e-13", 1);
  CHECK(Tolerances::from_environment().newton == 1e-13);
  unsetenv("CURVELAB_TOL_NEWTON");
  CHECK(Tolerances::from_environment().newton == Tolerances().newton);
}

TEST_CASE("error categories map to exit classes") {
  CHECK(category(ErrorCode::NonTransverseInfinity) == ErrorCategory::Genericity);
  CHECK(category(ErrorCode::NotImmersed) == ErrorCategory::Genericity);
  CHECK(category(ErrorCode::UncataloguedJump) == ErrorCategory::Identity);
  CHECK(category(ErrorCode::KleinViolation) == ErrorCategory::Identity);
  CHECK(category(ErrorCode::DegreeMismatch) == ErrorCategory::Schema);
  CHECK(category(ErrorCode::IoError) == ErrorCategory::Io);
}
