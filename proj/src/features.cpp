#include "curvelab/features.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "curvelab/errors.hpp"
#include "curvelab/roots.hpp"

namespace curvelab {

namespace {

constexpr int kCellDepth = 6;

double det3(const Vec3& a, const Vec3& b, const Vec3& c) { return a.dot(b.cross(c)); }

double wrap_parameter(double t, double period) {
  double r = std::fmod(t, period);
  if (r < 0) r += period;
  if (r >= period) r = 0.0;
  return r;
}

std::string describe(const CurveParameter& p) {
  return "component " + std::to_string(p.component) + " at t = " + std::to_string(p.t);
}

struct SweepValue {
  Vec3 x;
  Vec3 dx;
};

SweepValue sweep(const Jet& j) { return {j.p, j.d1}; }

struct Polyline {
  std::vector<Vec3> points;   // n + 1 unit vectors, consecutive ones aligned
  std::vector<Vec3> centers;  // n segment midpoints
  std::vector<double> radii;  // n half-lengths
};

Polyline polyline(const CurveSamples::Component& c) {
  const int n = static_cast<int>(c.jets.size());
  Polyline out;
  out.points.resize(n + 1);
  for (int i = 0; i <= n; ++i) {
    Vec3 x = sweep(c.jets[i % n]).x.normalized();
    if (i > 0 && x.dot(out.points[i - 1]) < 0) x = -x;
    out.points[i] = x;
  }
  out.centers.resize(n);
  out.radii.resize(n);
  for (int i = 0; i < n; ++i) {
    out.centers[i] = (out.points[i] + out.points[i + 1]).normalized();
    out.radii[i] = 0.5 * (out.points[i + 1] - out.points[i]).norm();
  }
  return out;
}

struct Crossing {
  double s;
  double t;
};

// Newton polish of X_A(s) ~ X_B(t) in the gnomonic chart centered at the
// initial point.
std::optional<Crossing> polish_crossing(const CurveComponent& A, const CurveComponent& B, double s,
                                        double t, double max_move, const Tolerances& tol) {
  const Vec3 c0 = sweep(A.jet(s)).x.normalized();
  const Vec3 e1 = c0.unitOrthogonal();
  const Vec3 e2 = c0.cross(e1);
  auto gnomonic = [&](const SweepValue& v, Eigen::Vector2d& g, Eigen::Vector2d& dg) {
    const double w = c0.dot(v.x);
    const double dw = c0.dot(v.dx);
    g = Eigen::Vector2d(e1.dot(v.x), e2.dot(v.x)) / w;
    dg = (Eigen::Vector2d(e1.dot(v.dx), e2.dot(v.dx)) * w - Eigen::Vector2d(e1.dot(v.x), e2.dot(v.x)) * dw) / (w * w);
  };
  auto residual_at = [&](double u, double v, Eigen::Vector2d& r, Eigen::Matrix2d& J) {
    SweepValue a = sweep(A.jet(u));
    SweepValue b = sweep(B.jet(v));
    if (c0.dot(a.x) < 0) a = {-a.x, -a.dx};
    if (c0.dot(b.x) < 0) b = {-b.x, -b.dx};
    if (c0.dot(a.x.normalized()) < 0.5 || c0.dot(b.x.normalized()) < 0.5) return false;
    Eigen::Vector2d ga, dga, gb, dgb;
    gnomonic(a, ga, dga);
    gnomonic(b, gb, dgb);
    r = ga - gb;
    J.col(0) = dga;
    J.col(1) = -dgb;
    return true;
  };
  const double s0 = s, t0 = t;
  Eigen::Vector2d r;
  Eigen::Matrix2d J;
  for (int it = 0; it < 60; ++it) {
    if (!residual_at(s, t, r, J)) return std::nullopt;
    if (r.norm() < 1e-15) break;
    const double det = J.determinant();
    if (!(std::abs(det) > 0)) return std::nullopt;
    const Eigen::Vector2d delta = J.inverse() * (-r);
    s += delta.x();
    t += delta.y();
    if (std::abs(s - s0) > max_move || std::abs(t - t0) > max_move) return std::nullopt;
    if (delta.norm() < 1e-15 * (1.0 + std::abs(s) + std::abs(t))) break;
  }
  if (!residual_at(s, t, r, J) || !(r.norm() < tol.newton)) return std::nullopt;
  return Crossing{s, t};
}

// All (s, t) with X_A(s) ~ X_B(t). For a single component only pairs away
// from the diagonal are kept, once each with s < t.
std::vector<Crossing> find_crossings(const CurveComponent& A, const CurveSamples::Component& sa,
                                     const CurveComponent& B, const CurveSamples::Component& sb,
                                     bool same, const Tolerances& tol) {
  const Polyline pa = polyline(sa);
  const Polyline pb = same ? pa : polyline(sb);
  const int na = static_cast<int>(pa.centers.size());
  const int nb = static_cast<int>(pb.centers.size());
  const double ha = sa.period / na;
  const double hb = sb.period / nb;

  Eigen::Matrix<double, Eigen::Dynamic, 3> cb(nb, 3);
  for (int j = 0; j < nb; ++j) cb.row(j) = pb.centers[j].transpose();
  double rb_max = 0.0;
  for (double r : pb.radii) rb_max = std::max(rb_max, r);

  std::vector<Crossing> out;
  auto record = [&](Crossing c) {
    c.s = wrap_parameter(c.s, sa.period);
    c.t = wrap_parameter(c.t, sb.period);
    if (same) {
      if (cyclic_distance(c.s, c.t, sa.period) < tol.diag) return;
      if (c.s > c.t) std::swap(c.s, c.t);
    }
    for (const auto& o : out)
      if (cyclic_distance(o.s, c.s, sa.period) < 1e-7 && cyclic_distance(o.t, c.t, sb.period) < 1e-7) return;
    out.push_back(c);
  };

  Eigen::VectorXd dots(nb);
  for (int i = 0; i < na; ++i) {
    const Vec3& c = pa.centers[i];
    dots.noalias() = cb * c;
    const double reach_max = 1.5 * (pa.radii[i] + rb_max) + 1e-12;
    const double cos_max = std::cos(std::min(reach_max, 1.0));
    const Vec3 e1 = c.unitOrthogonal();
    const Vec3 e2 = c.cross(e1);
    auto chart = [&](const Vec3& x) -> Eigen::Vector2d { return Eigen::Vector2d(e1.dot(x), e2.dot(x)) / c.dot(x); };
    const Eigen::Vector2d a0 = chart(pa.points[i]);
    const Eigen::Vector2d a1 = chart(pa.points[i + 1]);
    for (int j = 0; j < nb; ++j) {
      if (std::abs(dots[j]) < cos_max) continue;
      if (same) {
        const int gap = std::abs(i - j);
        if (j <= i || gap <= 1 || gap >= na - 1) continue;
      }
      const double reach = 1.5 * (pa.radii[i] + pb.radii[j]) + 1e-12;
      if (std::abs(dots[j]) < std::cos(std::min(reach, 1.0))) continue;
      const double sign = dots[j] < 0 ? -1.0 : 1.0;
      const Eigen::Vector2d b0 = chart(sign * pb.points[j]);
      const Eigen::Vector2d b1 = chart(sign * pb.points[j + 1]);
      const Eigen::Vector2d da = a1 - a0;
      const Eigen::Vector2d db = b1 - b0;
      const double det = da.x() * db.y() - da.y() * db.x();
      if (!(std::abs(det) > 1e-300)) continue;
      const Eigen::Vector2d w = b0 - a0;
      const double alpha = (w.x() * db.y() - w.y() * db.x()) / det;
      const double beta = (w.x() * da.y() - w.y() * da.x()) / det;
      const double ext = 0.3;
      if (alpha < -ext || alpha > 1 + ext || beta < -ext || beta > 1 + ext) continue;
      const auto crossing =
          polish_crossing(A, B, (i + alpha) * ha, (j + beta) * hb, 8.0 * std::max(ha, hb), tol);
      if (crossing) record(*crossing);
    }
  }
  std::sort(out.begin(), out.end(), [](const Crossing& a, const Crossing& b) {
    return a.s != b.s ? a.s < b.s : a.t < b.t;
  });
  return out;
}

// Newton polish of the bitangent system D(s).H(t) = D(t).H(s) = 0.
std::optional<Crossing> polish_tangency(const CurveComponent& A, const CurveComponent& B, double s, double t,
                                        double max_move, const Tolerances& tol) {
  const double s0 = s, t0 = t;
  auto residual = [&](const Jet& a, const Jet& b) {
    const Vec3 Da = a.p.cross(a.d1);
    const Vec3 Db = b.p.cross(b.d1);
    return Eigen::Vector2d(Da.dot(b.p) / (Da.norm() * b.p.norm()), Db.dot(a.p) / (Db.norm() * a.p.norm()));
  };
  for (int it = 0; it < 60; ++it) {
    const Jet a = A.jet(s);
    const Jet b = B.jet(t);
    const Vec3 Da = a.p.cross(a.d1);
    const Vec3 Db = b.p.cross(b.d1);
    const Eigen::Vector2d F(Da.dot(b.p), Db.dot(a.p));
    if (residual(a, b).norm() < 1e-16) break;
    Eigen::Matrix2d J;
    J << a.p.cross(a.d2).dot(b.p), Da.dot(b.d1), Db.dot(a.d1), b.p.cross(b.d2).dot(a.p);
    const double det = J.determinant();
    if (!(std::abs(det) > 0)) return std::nullopt;
    const Eigen::Vector2d delta = J.inverse() * (-F);
    s += delta.x();
    t += delta.y();
    if (std::abs(s - s0) > max_move || std::abs(t - t0) > max_move) return std::nullopt;
    if (delta.norm() < 1e-15 * (1.0 + std::abs(s) + std::abs(t))) break;
  }
  const Jet a = A.jet(s);
  const Jet b = B.jet(t);
  const double r = residual(a, b).norm();
  if (r < tol.newton) return Crossing{s, t};
  // Steep branches leave a residual floor; accept when the next step is negligible.
  const Vec3 Da = a.p.cross(a.d1);
  const Vec3 Db = b.p.cross(b.d1);
  Eigen::Matrix2d J;
  J << a.p.cross(a.d2).dot(b.p), Da.dot(b.d1), Db.dot(a.d1), b.p.cross(b.d2).dot(a.p);
  const Eigen::Vector2d step = J.inverse() * Eigen::Vector2d(Da.dot(b.p), Db.dot(a.p));
  if (r < std::sqrt(tol.newton) && step.norm() < tol.newton * (1.0 + std::abs(s) + std::abs(t)))
    return Crossing{s, t};
  return std::nullopt;
}

// Pairs (s, t) whose tangent lines coincide, located as sign changes of
// D_A(s).H_B(t) and D_B(t).H_A(s) over the cells of the parameter torus.
std::vector<Crossing> find_tangency_pairs(const CurveComponent& A, const CurveSamples::Component& sa,
                                          const CurveComponent& B, const CurveSamples::Component& sb, bool same,
                                          const Tolerances& tol) {
  const int na = static_cast<int>(sa.jets.size());
  const int nb = static_cast<int>(sb.jets.size());
  const double ha = sa.period / na;
  const double hb = sb.period / nb;
  using Rows = Eigen::Matrix<double, Eigen::Dynamic, 3>;
  auto tables = [](const CurveComponent& c, const CurveSamples::Component& sc, Rows& H, Rows& D) {
    const int n = static_cast<int>(sc.jets.size());
    H.resize(n + 1, 3);
    D.resize(n + 1, 3);
    for (int i = 0; i <= n; ++i) {
      const Jet J = i < n ? sc.jets[i] : c.jet(sc.period);
      H.row(i) = J.p.normalized().transpose();
      D.row(i) = J.p.cross(J.d1).normalized().transpose();
    }
  };
  Rows Ha, Da, Hb, Db;
  tables(A, sa, Ha, Da);
  tables(B, sb, Hb, Db);

  std::vector<Crossing> out;
  auto record = [&](Crossing c) {
    c.s = wrap_parameter(c.s, sa.period);
    c.t = wrap_parameter(c.t, sb.period);
    if (same) {
      if (cyclic_distance(c.s, c.t, sa.period) < tol.diag) return;
      if (c.s > c.t) std::swap(c.s, c.t);
    }
    for (const auto& o : out)
      if (cyclic_distance(o.s, c.s, sa.period) < 1e-7 && cyclic_distance(o.t, c.t, sb.period) < 1e-7) return;
    out.push_back(c);
  };
  auto mixed = [](double a, double b, double c, double d) {
    const bool neg = a < 0 || b < 0 || c < 0 || d < 0;
    const bool pos = a > 0 || b > 0 || c > 0 || d > 0;
    return neg && pos;
  };

  // Newton from the cell center; cells where it fails or escapes are split
  // into quadrants, which catches pairs next to near-cusps.
  std::function<void(double, double, double, double, int)> refine = [&](double s0, double ds, double t0, double dt,
                                                                         int depth) {
    const auto c = polish_tangency(A, B, s0 + 0.5 * ds, t0 + 0.5 * dt, 8.0 * std::max(ds, dt), tol);
    if (c) record(*c);
    const bool inside = c && c->s > s0 - 0.25 * ds && c->s < s0 + 1.25 * ds && c->t > t0 - 0.25 * dt &&
                        c->t < t0 + 1.25 * dt;
    if (inside || depth == 0) return;
    double g1[3][3], g2[3][3];
    for (int x = 0; x < 3; ++x) {
      const Jet a = A.jet(s0 + 0.5 * x * ds);
      const Vec3 Dx = a.p.cross(a.d1).normalized();
      const Vec3 Hx = a.p.normalized();
      for (int y = 0; y < 3; ++y) {
        const Jet b = B.jet(t0 + 0.5 * y * dt);
        g1[x][y] = Dx.dot(b.p.normalized());
        g2[x][y] = b.p.cross(b.d1).normalized().dot(Hx);
      }
    }
    for (int x = 0; x < 2; ++x)
      for (int y = 0; y < 2; ++y)
        if (mixed(g1[x][y], g1[x][y + 1], g1[x + 1][y], g1[x + 1][y + 1]) &&
            mixed(g2[x][y], g2[x][y + 1], g2[x + 1][y], g2[x + 1][y + 1]))
          refine(s0 + 0.5 * x * ds, 0.5 * ds, t0 + 0.5 * y * dt, 0.5 * dt, depth - 1);
  };

  Eigen::VectorXd g1_lo = Hb * Da.row(0).transpose(), g2_lo = Db * Ha.row(0).transpose();
  for (int i = 0; i < na; ++i) {
    const Eigen::VectorXd g1_hi = Hb * Da.row(i + 1).transpose();
    const Eigen::VectorXd g2_hi = Db * Ha.row(i + 1).transpose();
    for (int m = 0; m < nb; ++m) {
      if (same) {
        const int gap = m - i;
        if (gap <= 1 || gap >= na - 1) continue;
      }
      if (!mixed(g1_lo[m], g1_lo[m + 1], g1_hi[m], g1_hi[m + 1])) continue;
      if (!mixed(g2_lo[m], g2_lo[m + 1], g2_hi[m], g2_hi[m + 1])) continue;
      refine(i * ha, ha, m * hb, hb, kCellDepth);
    }
    g1_lo = g1_hi;
    g2_lo = g2_hi;
  }
  std::sort(out.begin(), out.end(), [](const Crossing& a, const Crossing& b) {
    return a.s != b.s ? a.s < b.s : a.t < b.t;
  });
  return out;
}

std::vector<double> sampled(const CurveSamples::Component& c, const std::function<double(const Jet&)>& f) {
  std::vector<double> out(c.jets.size());
  for (size_t i = 0; i < c.jets.size(); ++i) out[i] = f(c.jets[i]);
  return out;
}

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

// Normalized flex function: zero exactly at flexes, scale free.
double flex_measure(const Jet& j) {
  const double denom = j.p.norm() * j.d1.norm() * j.d2.norm();
  return denom > 0 ? det3(j.p, j.d1, j.d2) / denom : 0.0;
}

struct LineMeet {
  std::vector<Vec3> points;
  std::vector<CurveParameter> parameters;
  int touches = 0;
};

// Points of C on a line. When the line is the tangent at `tangency`, a
// window of a few cells around it is reported as the single touch there.
LineMeet meet_curve(const Curve& curve, const CurveSamples& samples, const Vec3& line, const Tolerances& tol,
                    const CurveParameter* tangency = nullptr) {
  LineMeet out;
  auto add = [&](int k, double u, bool touch) {
    const Vec3 x = curve[k].point(u).normalized();
    out.touches += touch;
    for (const auto& y : out.points)
      if (projective_distance<double>(x, y) < 1e-7) return;
    out.points.push_back(x);
    out.parameters.push_back({k, u});
  };
  if (tangency) add(tangency->component, tangency->t, true);
  for (int k = 0; k < curve.size(); ++k) {
    const auto& comp = curve[k];
    const auto& sc = samples.components[k];
    auto g = [&](double u) { return line.dot(comp.point(u).normalized()); };
    const auto values = sampled(sc, [&](const Jet& j) { return line.dot(j.p.normalized()); });
    ScanOptions opt;
    opt.antiperiodic = sc.twisted;
    opt.touch_tolerance = tol.genericity;
    if (tangency && tangency->component == k) {
      const double window = 2.0 * samples.step(k);
      opt.exclusions.push_back({tangency->t, window});
      if ((g(tangency->t - window) < 0) != (g(tangency->t + window) < 0))
        fail(ErrorCode::NonGenericTangent, "tangent line crosses the curve at its tangency point");
    }
    const auto scan = scan_roots(g, sc.period, values, opt);
    for (double u : scan.roots) add(k, u, false);
    for (double u : scan.touches) add(k, u, true);
  }
  return out;
}

}  // namespace

int InfinityProfile::tangent_excess() const {
  int sum = 0;
  for (const auto& e : entries) sum += e.intersections - 1;
  return sum;
}

CurveSamples CurveSamples::of(const Curve& curve, int cells) {
  if (curve.size() == 0) fail(ErrorCode::EmptyCurve, "curve has no components");
  CurveSamples out;
  out.cells = cells;
  for (const auto& c : curve.components) {
    Component s{c.period(), c.twisted(), {}};
    s.jets.resize(cells);
    for (int i = 0; i < cells; ++i) s.jets[i] = c.jet(i * s.period / cells);
    out.components.push_back(std::move(s));
  }
  return out;
}

std::vector<Flex> find_flexes(const Curve& curve, const Tolerances& tol) {
  return find_flexes(curve, CurveSamples::of(curve, tol.subdivision), tol);
}

std::vector<Flex> find_flexes(const Curve& curve, const CurveSamples& samples, const Tolerances& tol) {
  std::vector<Flex> out;
  for (int j = 0; j < curve.size(); ++j) {
    const auto& comp = curve[j];
    const auto& sc = samples.components[j];
    const auto values = sampled(sc, flex_measure);
    ScanOptions opt;
    opt.antiperiodic = sc.twisted;
    opt.touch_tolerance = tol.flex * std::max(1.0, max_abs(values));
    const auto scan = scan_roots([&](double t) { return flex_measure(comp.jet(t)); }, sc.period, values, opt);
    if (!scan.touches.empty())
      fail(ErrorCode::DegenerateFlex, "curvature has a non-simple zero on " + describe({j, scan.touches.front()}));
    for (double t : scan.roots) out.push_back({{j, t}, comp.point(t)});
  }
  return out;
}

std::vector<Node> find_nodes(const Curve& curve, const Tolerances& tol) {
  return find_nodes(curve, CurveSamples::of(curve, tol.subdivision), tol);
}

std::vector<Node> find_nodes(const Curve& curve, const CurveSamples& samples, const Tolerances& tol) {
  std::vector<Node> out;
  for (int j = 0; j < curve.size(); ++j) {
    for (int k = j; k < curve.size(); ++k) {
      const auto crossings = find_crossings(curve[j], samples.components[j], curve[k], samples.components[k],
                                            j == k, tol);
      for (const auto& c : crossings) {
        const Jet a = curve[j].jet(c.s);
        const Jet b = curve[k].jet(c.t);
        const Vec3 ta = a.p.cross(a.d1).normalized();
        const Vec3 tb = b.p.cross(b.d1).normalized();
        if (projective_distance<double>(ta, tb) < tol.genericity * 10)
          fail(ErrorCode::TangentialIntersection, "branches are tangent at a double point on " + describe({j, c.s}));
        out.push_back({{j, c.s}, {k, c.t}, a.p});
      }
    }
  }
  return out;
}

BitangentKind classify_bitangent(const Curve& curve, const Bitangent& candidate, const Chart& chart,
                                 const Tolerances& tol) {
  const Vec3& line = candidate.line.coeffs();
  const Vec3 n = chart.frame().row(2).transpose();
  int side[2];
  const CurveParameter at[2] = {candidate.first, candidate.second};
  for (int k = 0; k < 2; ++k) {
    const Jet J = curve[at[k].component].jet(at[k].t);
    const double w = n.dot(J.p) / J.p.norm();
    if (std::abs(w) < tol.genericity)
      fail(ErrorCode::InfinityTangency, "bitangent touches the curve on the line at infinity");
    const double bend = line.dot(J.d2) / std::max(J.d2.norm(), 1e-300);
    if (std::abs(bend) < tol.genericity)
      fail(ErrorCode::AmbiguousSide, "bitangent tangency at a flex on " + describe(at[k]));
    side[k] = (bend > 0) == (w > 0) ? 1 : -1;
  }
  return side[0] == side[1] ? BitangentKind::Exterior : BitangentKind::Interior;
}

std::vector<Bitangent> find_bitangents(const Curve& curve, const Chart& chart, const Tolerances& tol) {
  return find_bitangents(curve, CurveSamples::of(curve, tol.subdivision), chart, tol);
}

std::vector<Bitangent> find_bitangents(const Curve& curve, const CurveSamples& samples, const Chart& chart,
                                       const Tolerances& tol) {
  std::vector<Bitangent> out;
  for (int j = 0; j < curve.size(); ++j) {
    for (int k = j; k < curve.size(); ++k) {
      const auto crossings = find_tangency_pairs(curve[j], samples.components[j], curve[k], samples.components[k],
                                                 j == k, tol);
      for (const auto& c : crossings) {
        const Jet a = curve[j].jet(c.s);
        const Jet b = curve[k].jet(c.t);
        if (projective_distance<double>(a.p.normalized(), b.p.normalized()) < tol.genericity * 10) {
          // A node also solves the tangency system; only a shared tangent there is degenerate.
          if (Line(a.p.cross(a.d1)).approx(Line(b.p.cross(b.d1)), tol.genericity * 10))
            fail(ErrorCode::TangentialIntersection, "two branches share a tangent at a common point");
          continue;
        }
        Bitangent bt{Line(a.p.cross(a.d1)), {j, c.s}, {k, c.t}, a.p, b.p, BitangentKind::Exterior};
        bt.kind = classify_bitangent(curve, bt, chart, tol);
        out.push_back(bt);
      }
    }
  }
  for (size_t x = 0; x < out.size(); ++x)
    for (size_t y = x + 1; y < out.size(); ++y)
      if (out[x].line.approx(out[y].line, tol.line))
        fail(ErrorCode::TripleTangent, "a line is tangent to the curve at three or more points");
  return out;
}

InfinityProfile infinity_profile(const Curve& curve, const Chart& chart, const Tolerances& tol) {
  return infinity_profile(curve, CurveSamples::of(curve, tol.subdivision), chart, tol);
}

InfinityProfile infinity_profile(const Curve& curve, const CurveSamples& samples, const Chart& chart,
                                 const Tolerances& tol) {
  const Vec3 n = chart.frame().row(2).transpose();
  InfinityProfile out;
  for (int j = 0; j < curve.size(); ++j) {
    const auto& comp = curve[j];
    const auto& sc = samples.components[j];
    const auto values = sampled(sc, [&](const Jet& J) { return n.dot(J.p.normalized()); });
    ScanOptions opt;
    opt.antiperiodic = sc.twisted;
    opt.touch_tolerance = tol.genericity;
    const auto scan = scan_roots([&](double t) { return n.dot(comp.point(t).normalized()); }, sc.period, values, opt);
    if (!scan.touches.empty())
      fail(ErrorCode::NonTransverseInfinity, "curve is tangent to the line at infinity on " +
                                                 describe({j, scan.touches.front()}));
    for (double t : scan.roots) {
      const Jet J = comp.jet(t);
      if (std::abs(flex_measure(J)) < tol.flex * 10)
        fail(ErrorCode::NonGenericTangent, "flex on the line at infinity");
      out.entries.push_back({{j, t}, J.p.normalized(), Line(J.p.cross(J.d1)), 0});
    }
  }
  for (auto& e : out.entries) {
    const auto meet = meet_curve(curve, samples, e.tangent.coeffs(), tol, &e.at);
    if (meet.touches != 1)
      fail(ErrorCode::NonGenericTangent, "tangent at a point at infinity is tangent to the curve elsewhere");
    e.intersections = static_cast<int>(meet.points.size());
  }
  return out;
}

int line_intersections(const Curve& curve, const CurveSamples& samples, const Line& line, const Tolerances& tol) {
  return static_cast<int>(meet_curve(curve, samples, line.coeffs(), tol).points.size());
}

int line_intersections(const Curve& curve, const Line& line, const Tolerances& tol) {
  return line_intersections(curve, CurveSamples::of(curve, tol.subdivision), line, tol);
}

int pencil_sign(const Jet& jet, const Vec3& p, const Line& L, const Line& infinity) {
  const Vec3 b1 = p.unitOrthogonal();
  const Vec3 b2 = p.cross(b1).normalized();
  auto coords = [&](const Vec3& l) { return Eigen::Vector2d(b1.dot(l), b2.dot(l)); };
  const Eigen::Vector2d c0 = coords(p.cross(jet.p));
  const Eigen::Vector2d c2 = coords(p.cross(jet.d2));
  const double turn = c0.x() * c2.y() - c0.y() * c2.x();
  if (turn == 0.0) fail(ErrorCode::NonSimpleTangency, "tangent through the pencil point at a flex");
  auto angle = [&](const Eigen::Vector2d& c) {
    double a = std::atan2(c.y(), c.x());
    return std::fmod(a + 2 * std::numbers::pi, std::numbers::pi);
  };
  const double theta = angle(c0);
  auto travel = [&](const Vec3& line) {
    double d = turn > 0 ? angle(coords(line)) - theta : theta - angle(coords(line));
    d = std::fmod(d + 2 * std::numbers::pi, std::numbers::pi);
    return d;
  };
  return travel(L.coeffs()) < travel(infinity.coeffs()) ? 1 : -1;
}

std::vector<PencilTangent> tangents_through_point(const Curve& curve, const Point& p, const Chart& chart,
                                                  const Line& L, const Tolerances& tol) {
  const auto samples = CurveSamples::of(curve, tol.subdivision);
  return tangents_through_point(curve, samples, p, chart, L, infinity_profile(curve, samples, chart, tol), tol);
}

std::vector<PencilTangent> tangents_through_point(const Curve& curve, const CurveSamples& samples,
                                                  const Point& p, const Chart& chart, const Line& L,
                                                  const InfinityProfile& profile, const Tolerances& tol) {
  const Vec3& q = p.coords();
  std::vector<PencilTangent> out;
  for (int j = 0; j < curve.size(); ++j) {
    const auto& comp = curve[j];
    const auto& sc = samples.components[j];
    auto h = [&](const Jet& J) { return det3(J.p.normalized(), J.d1.normalized(), q); };
    const auto values = sampled(sc, h);
    ScanOptions opt;
    opt.touch_tolerance = tol.genericity;
    const double window = 3.0 * samples.step(j);
    for (const auto& e : profile.entries) {
      if (e.at.component != j || projective_distance<double>(e.point, q) > 1e-8) continue;
      opt.exclusions.push_back({e.at.t, window});
      const double before = h(comp.jet(e.at.t - window));
      const double after = h(comp.jet(e.at.t + window));
      if ((before < 0) != (after < 0))
        fail(ErrorCode::NonSimpleTangency, "tangent through a point at infinity is not simple");
    }
    const auto scan = scan_roots([&](double t) { return h(comp.jet(t)); }, sc.period, values, opt);
    if (!scan.touches.empty())
      fail(ErrorCode::NonSimpleTangency, "pencil tangent at a flex or double tangency on " +
                                             describe({j, scan.touches.front()}));
    for (double t : scan.roots) {
      const Jet J = comp.jet(t);
      const Line D(J.p.cross(J.d1));
      const int sign = D.approx(L, tol.line) ? 0 : pencil_sign(J, q, L, chart.line_at_infinity());
      out.push_back({{j, t}, D, sign});
    }
  }
  return out;
}

int sigma_L(const Curve& curve, const Line& L, const Chart& chart, const Tolerances& tol) {
  const Point p = meet(L, chart.line_at_infinity(), tol.pt);
  int sum = 0;
  for (const auto& d : tangents_through_point(curve, p, chart, L, tol)) sum += d.sign;
  return sum;
}

SignedCount signed_count_sigma(const std::vector<Bitangent>& bitangents) {
  SignedCount out;
  for (const auto& b : bitangents) (b.kind == BitangentKind::Exterior ? out.exterior : out.interior) += 1;
  return out;
}

FeatureSet analyze(const Curve& curve, const Chart& chart, const Tolerances& tol) {
  return analyze(curve, CurveSamples::of(curve, tol.subdivision), chart, tol);
}

FeatureSet analyze(const Curve& curve, const CurveSamples& samples, const Chart& chart, const Tolerances& tol) {
  FeatureSet fs;
  fs.infinity = infinity_profile(curve, samples, chart, tol);
  fs.flexes = find_flexes(curve, samples, tol);
  fs.nodes = find_nodes(curve, samples, tol);
  fs.bitangents = find_bitangents(curve, samples, chart, tol);

  for (const auto& e : fs.infinity.entries) {
    for (const auto& b : fs.bitangents)
      if (std::abs(b.line.coeffs().dot(e.point)) < 10 * tol.genericity)
        fail(ErrorCode::InfinityTangency, "a bitangent passes through a point of C on the line at infinity");
    for (const auto& f : fs.flexes) {
      const Jet J = curve[f.at.component].jet(f.at.t);
      if (std::abs(J.p.cross(J.d1).normalized().dot(e.point)) < 10 * tol.genericity)
        fail(ErrorCode::NonGenericTangent, "a flex tangent passes through a point of C on the line at infinity");
    }
  }
  return fs;
}

}  // namespace curvelab
