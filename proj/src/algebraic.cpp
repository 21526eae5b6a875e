#include "curvelab/algebraic.hpp"

#include <unsupported/Eigen/Polynomials>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <numbers>

#include "curvelab/errors.hpp"
#include "curvelab/roots.hpp"

namespace curvelab {

namespace {

constexpr double kRealRoot = 1e-9;     // |Im| / (1 + |Re|) below which a root is real
constexpr double kComplexRoot = 1e-5;  // above which it is certainly complex
constexpr double kDeflation = 1e-8;    // relative size of coefficients that must vanish
constexpr double kAgreement = 1e-7;    // polished vs traced feature positions

std::string at(const Vec3& p) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "[%.6f:%.6f:%.6f]", p.x(), p.y(), p.z());
  return buf;
}

// Distinct real roots of sum c_k u^k (lowest order first). Near-real pairs
// mean a tangency that should not be there.
std::vector<double> real_roots(std::vector<double> c, const std::string& what) {
  double scale = 0;
  for (double x : c) scale = std::max(scale, std::abs(x));
  if (scale == 0) fail(ErrorCode::CrossCheckMismatch, what + " lies on the curve");
  while (c.size() > 1 && std::abs(c.back()) <= kDeflation * scale) c.pop_back();
  if (c.size() < 2) return {};
  Eigen::VectorXd coeffs = Eigen::Map<const Eigen::VectorXd>(c.data(), static_cast<Eigen::Index>(c.size())) / scale;
  Eigen::PolynomialSolver<double, Eigen::Dynamic> solver(coeffs);
  std::vector<double> out;
  for (const auto& z : solver.roots()) {
    const double rel = std::abs(z.imag()) / (1.0 + std::abs(z.real()));
    if (rel < kRealRoot) {
      out.push_back(z.real());
    } else if (rel < kComplexRoot) {
      fail(ErrorCode::NonGenericTangent, what + " is nearly tangent to the curve");
    }
  }
  std::sort(out.begin(), out.end());
  for (size_t k = 1; k < out.size(); ++k)
    if (std::abs(out[k] - out[k - 1]) < kComplexRoot * (1.0 + std::abs(out[k])))
      fail(ErrorCode::NonGenericTangent, what + " is nearly tangent to the curve");
  return out;
}

// Newton for F = 0 on the line through p spanned by p and w, from p.
Vec3 onto_curve_along(const Polynomial& F, Vec3 p, const Vec3& w) {
  for (int it = 0; it < 20; ++it) {
    const auto d = F.derivatives(p);
    const double slope = d.gradient.dot(w);
    if (slope == 0) break;
    const double step = d.value / slope;
    p = (p - step * w).normalized();
    if (std::abs(step) < 1e-16) break;
  }
  return p;
}

double relative_residual(const Polynomial& F, const Vec3& p) {
  const auto d = F.derivatives(p);
  return std::abs(d.value) / d.gradient.norm();
}

AlgebraicFlex polish_flex(const Polynomial& F, const Polynomial& Hd, const Flex& start) {
  Vec3 p = start.point.normalized();
  auto residual = [&](const Vec3& x) {
    const auto h = Hd.derivatives(x);
    return std::max(relative_residual(F, x), std::abs(h.value) / h.gradient.norm());
  };
  for (int it = 0; it < 30; ++it) {
    const auto f = F.derivatives(p);
    const auto h = Hd.derivatives(p);
    Mat3 J;
    J.row(0) = f.gradient.transpose();
    J.row(1) = h.gradient.transpose();
    J.row(2) = 2 * p.transpose();
    const Vec3 r(f.value, h.value, p.squaredNorm() - 1.0);
    const Vec3 delta = J.fullPivLu().solve(-r);
    p += delta;
    if (delta.norm() < 1e-15) break;
  }
  p.normalize();
  return {start.at, p, residual(p)};
}

SplitBitangent polish_bitangent(const Polynomial& F, const Bitangent& b, const Tolerances& tol) {
  Vec3 p = b.first_point.normalized();
  Vec3 q = b.second_point.normalized();
  auto residual = [&](const Vec3& x, const Vec3& y) {
    const auto fx = F.derivatives(x);
    const auto fy = F.derivatives(y);
    return std::max({std::abs(fx.value) / fx.gradient.norm(), std::abs(fy.value) / fy.gradient.norm(),
                     std::abs(fx.gradient.dot(y)) / fx.gradient.norm(),
                     std::abs(fy.gradient.dot(x)) / fy.gradient.norm()});
  };
  for (int it = 0; it < 40; ++it) {
    const auto fp = F.derivatives(p);
    const auto fq = F.derivatives(q);
    Eigen::Matrix<double, 6, 6> J = Eigen::Matrix<double, 6, 6>::Zero();
    Eigen::Matrix<double, 6, 1> r;
    J.block<1, 3>(0, 0) = fp.gradient.transpose();
    J.block<1, 3>(1, 3) = fq.gradient.transpose();
    J.block<1, 3>(2, 0) = 2 * p.transpose();
    J.block<1, 3>(3, 3) = 2 * q.transpose();
    J.block<1, 3>(4, 0) = (fp.hessian * q).transpose();
    J.block<1, 3>(4, 3) = fp.gradient.transpose();
    J.block<1, 3>(5, 0) = fq.gradient.transpose();
    J.block<1, 3>(5, 3) = (fq.hessian * p).transpose();
    r << fp.value, fq.value, p.squaredNorm() - 1.0, q.squaredNorm() - 1.0, fp.gradient.dot(q), fq.gradient.dot(p);
    const Eigen::Matrix<double, 6, 1> delta = J.fullPivLu().solve(-r);
    p += delta.head<3>();
    q += delta.tail<3>();
    if (delta.norm() < 1e-15) break;
  }
  p.normalize();
  q.normalize();
  const double r = residual(p, q);
  if (!(r < tol.polish))
    fail(ErrorCode::PolishDivergence, "bitangent through " + at(b.first_point) + " and " + at(b.second_point) +
                                          " polishes to residual " + std::to_string(r));
  auto same = [](const Vec3& x, const Vec3& y) { return projective_distance<double>(x, y.normalized()) < kAgreement; };
  if (!same(p, b.first_point) || !same(q, b.second_point))
    fail(ErrorCode::CrossCheckMismatch, "polished bitangent drifted from " + at(b.first_point));
  return {b, p, q, Line(p.cross(q)), r};
}

}  // namespace

TracedCurve trace_real_curve(const Polynomial& F, bool nodal, const Tolerances& tol) {
  if (F.degree() < 2) fail(ErrorCode::DegreeMismatch, "algebraic curves need degree at least 2");
  if (F.is_zero()) fail(ErrorCode::EmptyCurve, "polynomial is identically zero");
  TracedCurve out;
  out.trace = trace_real_locus(std::make_shared<const Polynomial>(F), tol, TraceOptions{nodal});
  for (const auto& b : out.trace.branches) out.curve.components.emplace_back(b);
  return out;
}

std::vector<AlgebraicFlex> real_flexes(const Polynomial& F, const Curve& trace, const CurveSamples& samples,
                                       const std::vector<Flex>& parametric, const Tolerances& tol) {
  const Polynomial Hd = F.hessian_polynomial();
  int scanned = 0;
  for (int j = 0; j < trace.size(); ++j) {
    const auto& sc = samples.components[j];
    std::vector<double> values(sc.jets.size());
    double scale = 0;
    for (size_t k = 0; k < values.size(); ++k) {
      values[k] = Hd(sc.jets[k].p.normalized());
      scale = std::max(scale, std::abs(values[k]));
    }
    ScanOptions opt;
    opt.antiperiodic = sc.twisted && Hd.degree() % 2 == 1;
    opt.touch_tolerance = tol.flex * scale;
    const auto& comp = trace[j];
    if (const auto* branch = comp.traced())
      for (const auto& w : branch->bridges()) opt.exclusions.push_back({w.center, w.radius + samples.step(j)});
    const auto scan = scan_roots([&](double t) { return Hd(comp.point(t).normalized()); }, sc.period, values, opt);
    if (!scan.touches.empty())
      fail(ErrorCode::DegenerateFlex, "Hessian curve touches the real locus near " + at(comp.point(scan.touches[0])));
    scanned += static_cast<int>(scan.roots.size());
  }
  if (scanned != static_cast<int>(parametric.size()))
    fail(ErrorCode::FlexMismatch, std::to_string(scanned) + " sign changes of the Hessian along the trace but " +
                                      std::to_string(parametric.size()) + " curvature sign changes");

  std::vector<AlgebraicFlex> out;
  for (const auto& f : parametric) {
    auto polished = polish_flex(F, Hd, f);
    if (!(polished.residual < tol.polish))
      fail(ErrorCode::PolishDivergence, "flex near " + at(f.point) + " polishes to residual " +
                                            std::to_string(polished.residual));
    if (projective_distance<double>(polished.point, f.point.normalized()) > kAgreement)
      fail(ErrorCode::FlexMismatch, "flex near " + at(f.point) + " polishes to a different point");
    out.push_back(polished);
  }
  return out;
}

std::vector<SplitBitangent> split_bitangents(const Polynomial& F, const std::vector<Bitangent>& parametric,
                                             const Tolerances& tol) {
  std::vector<SplitBitangent> out;
  for (const auto& b : parametric) {
    auto s = polish_bitangent(F, b, tol);
    for (const auto& o : out)
      if (o.line.approx(s.line, tol.line))
        fail(ErrorCode::CrossCheckMismatch, "two split bitangents polish to the same line");
    out.push_back(std::move(s));
  }
  return out;
}

int real_points_on_line(const Polynomial& F, const Line& line, const Tolerances&) {
  const Vec3 n = line.coeffs();
  const Vec3 e1 = n.unitOrthogonal();
  const Vec3 e2 = n.cross(e1);
  // Rotate the affine parameter so that u = infinity is not on the curve.
  Vec3 best = e1, far = e2;
  double best_value = -1;
  for (int k = 0; k < 8; ++k) {
    const double th = k * std::numbers::pi / 8;
    const Vec3 w = std::cos(th) * e2 + std::sin(th) * e1;
    const double v = std::abs(F(w));
    if (v > best_value) {
      best_value = v;
      far = w;
      best = n.cross(w);
    }
  }
  return static_cast<int>(real_roots(F.restrict_to_line(best, far), "line").size());
}

int real_points_on_tangent(const Polynomial& F, const Vec3& q, const Line& T, const Tolerances&) {
  const Vec3 p = q.normalized();
  const Vec3 w = T.coeffs().cross(p).normalized();
  auto c = F.restrict_to_line(p, w);
  double scale = 0;
  for (double x : c) scale = std::max(scale, std::abs(x));
  if (c.size() < 3 || std::abs(c[0]) > kDeflation * scale || std::abs(c[1]) > kDeflation * scale)
    fail(ErrorCode::CrossCheckMismatch, "line is not tangent to the curve at " + at(q));
  std::vector<double> rest(c.begin() + 2, c.end());
  if (std::abs(rest.front()) <= kDeflation * scale)
    fail(ErrorCode::NonGenericTangent, "tangent at " + at(q) + " is a flex tangent");
  int count = 1 + static_cast<int>(real_roots(rest, "tangent at " + at(q)).size());
  // The point w itself (u = infinity) is a root when the top coefficients vanish.
  if (std::abs(F(w)) <= kDeflation * scale) ++count;
  return count;
}

int klein_t0(int degree, int real_flexes, int total_nodes, int isolated_nodes) {
  const int twice = degree * (degree - 2) - 2 * total_nodes + 2 * isolated_nodes - real_flexes;
  if (twice < 0 || twice % 2 != 0)
    fail(ErrorCode::KleinViolation, "Klein's formula gives 2 t0 = " + std::to_string(twice) + " for degree " +
                                        std::to_string(degree) + " with " + std::to_string(real_flexes) +
                                        " real flexes");
  return twice / 2;
}

AlgebraicReport analyze_algebraic(const AlgebraicCurve& curve, const Chart& chart, const Tolerances& tol) {
  const Polynomial& F = curve.F;
  const int d = F.degree();
  AlgebraicReport r;
  r.degree = d;
  const TracedCurve traced = trace_real_curve(F, curve.nodal(), tol);
  r.singular_points = traced.trace.singular_points;
  r.branches = traced.curve.size();

  const auto samples = CurveSamples::of(traced.curve, tol.subdivision);
  r.features = analyze(traced.curve, samples, chart, tol);
  const FeatureSet& fs = r.features;

  if (curve.nodal()) {
    NodalCounts n;
    n.total = *curve.total_nodes;
    for (const auto& s : r.singular_points) (s.kind == NodeKind::Isolated ? n.isolated : n.hyperbolic)++;
    if (n.total < n.real())
      fail(ErrorCode::SchemaError, "N = " + std::to_string(n.total) + " is less than the " +
                                       std::to_string(n.real()) + " real nodes found");
    if (fs.n() != n.hyperbolic)
      fail(ErrorCode::CrossCheckMismatch, std::to_string(fs.n()) + " crossings on the trace but " +
                                              std::to_string(n.hyperbolic) + " hyperbolic nodes");
    r.nodes = n;
  } else if (fs.n() != 0) {
    fail(ErrorCode::CrossCheckMismatch, "trace of a smooth curve crosses itself");
  }

  r.flexes = real_flexes(F, traced.curve, samples, fs.flexes, tol);
  r.bitangents = split_bitangents(F, fs.bitangents, tol);

  r.a = fs.a();
  const int a_algebraic = real_points_on_line(F, chart.line_at_infinity(), tol);
  if (a_algebraic != r.a)
    fail(ErrorCode::CrossCheckMismatch, "trace meets the line at infinity " + std::to_string(r.a) +
                                            " times, the polynomial " + std::to_string(a_algebraic));
  if (r.a > d || (d - r.a) % 2 != 0)
    fail(ErrorCode::CrossCheckMismatch, "a = " + std::to_string(r.a) + " violates Bezout for degree " +
                                            std::to_string(d));
  const Vec3 n_inf = chart.line_at_infinity().coeffs();
  for (const auto& e : fs.infinity.entries) {
    const Vec3 q = onto_curve_along(F, e.point.normalized(), n_inf.cross(e.point.normalized()).normalized());
    const Line T(F.gradient(q));
    const int count = real_points_on_tangent(F, q, T, tol);
    if (count != e.intersections)
      fail(ErrorCode::CrossCheckMismatch, "tangent at " + at(q) + " meets the trace " +
                                              std::to_string(e.intersections) + " times, the polynomial " +
                                              std::to_string(count));
    if (count - 1 > d - 2 || (count - 1 - d) % 2 != 0)
      fail(ErrorCode::CrossCheckMismatch, "|RC n T| = " + std::to_string(count) + " violates Bezout for degree " +
                                              std::to_string(d));
    r.tangent_excess += count - 1;
  }

  r.i_R = fs.i();
  r.t0 = r.nodes ? klein_t0(d, r.i_R, r.nodes->total, r.nodes->isolated) : klein_t0(d, r.i_R);
  r.split = fs.counts();
  r.rho = r.t0 + r.split.sigma();
  const int twice_rhs = d * (d - 2) + r.a * (r.a - 2) - 2 * r.tangent_excess;
  r.rhs = twice_rhs / 2 + (r.nodes ? r.nodes->real() - r.nodes->total : 0);
  return r;
}

AlgebraicReport rho(const AlgebraicCurve& curve, const Chart& chart, const Tolerances& tol) {
  AlgebraicReport r = analyze_algebraic(curve, chart, tol);
  if (r.delta() != 0)
    fail(ErrorCode::IdentityViolation, "rho = " + std::to_string(r.rho) + " but the formula gives " +
                                           std::to_string(r.rhs));
  if (!r.nodes && (!r.even() || r.rho < r.lower_bound()))
    fail(ErrorCode::IdentityViolation, "rho = " + std::to_string(r.rho) + " is odd or below " +
                                           std::to_string(r.lower_bound()));
  return r;
}

}  // namespace curvelab
