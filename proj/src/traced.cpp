#include "curvelab/traced.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <unordered_map>

#include "curvelab/errors.hpp"
#include "curvelab/roots.hpp"

namespace curvelab {

namespace flow {

Vec3 direction(const Polynomial& F, const Vec3& p) {
  const Vec3 v = F.gradient(p).cross(p);
  const double n = v.norm();
  if (!(n > 0)) fail(ErrorCode::SingularPointHit, "flow vanishes: singular point of the curve");
  return v / n;
}

Jet jet(const Polynomial& F, const Vec3& p, int orientation) {
  const auto d = F.derivatives(p);
  const Vec3 v = d.gradient.cross(p);
  const double nv = v.norm();
  if (!(nv > 0)) fail(ErrorCode::SingularPointHit, "flow vanishes: singular point of the curve");
  const Vec3 u = v / nv;
  const Vec3 dv = (d.hessian * u).cross(p) + d.gradient.cross(u);
  const Vec3 acc = (dv - u * u.dot(dv)) / nv;
  return Jet{p, orientation * u, acc};
}

Vec3 project(const Polynomial& F, const Vec3& p0, int iterations) {
  Vec3 p = p0.normalized();
  const double scale = F.scale();
  for (int it = 0; it < iterations; ++it) {
    const auto d = F.derivatives(p);
    if (std::abs(d.value) <= 1e-16 * scale) break;
    const Vec3 g = d.gradient - p * d.gradient.dot(p);
    const double g2 = g.squaredNorm();
    if (!(g2 > 0)) break;
    p = (p - g * (d.value / g2)).normalized();
  }
  return p;
}

Vec3 step(const Polynomial& F, const Vec3& p, int orientation, double h) {
  if (h == 0.0) return p;
  const Vec3 k1 = orientation * direction(F, p);
  const Vec3 k2 = orientation * direction(F, p + 0.5 * h * k1);
  const Vec3 k3 = orientation * direction(F, p + 0.5 * h * k2);
  const Vec3 k4 = orientation * direction(F, p + h * k3);
  return project(F, p + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4));
}

}  // namespace flow

TracedBranch::TracedBranch(std::shared_ptr<const Polynomial> poly, std::vector<TraceKnot> knots,
                           std::vector<TracePiece> pieces, double period, bool twisted)
    : poly_(std::move(poly)), knots_(std::move(knots)), pieces_(std::move(pieces)), period_(period),
      twisted_(twisted) {}

int TracedBranch::bridge_count() const {
  return static_cast<int>(std::count_if(pieces_.begin(), pieces_.end(), [](const auto& p) { return p.bridge; }));
}

std::vector<ParameterWindow> TracedBranch::bridges() const {
  std::vector<ParameterWindow> out;
  for (const auto& p : pieces_)
    if (p.bridge) out.push_back({p.t0 + 0.5 * p.length, 0.5 * p.length});
  return out;
}

bool TracedBranch::operator==(const TracedBranch& other) const {
  if (!(*poly_ == *other.poly_) || period_ != other.period_ || twisted_ != other.twisted_) return false;
  if (knots_.size() != other.knots_.size()) return false;
  for (size_t i = 0; i < knots_.size(); ++i)
    if (knots_[i].t != other.knots_[i].t || knots_[i].p != other.knots_[i].p) return false;
  return true;
}

namespace {

// Quintic Hermite basis on [0, 1] and its first two derivatives.
void hermite5(double s, double b[6], double db[6], double ddb[6]) {
  const double s2 = s * s, s3 = s2 * s, s4 = s3 * s, s5 = s4 * s;
  b[0] = 1 - 10 * s3 + 15 * s4 - 6 * s5;
  b[1] = s - 6 * s3 + 8 * s4 - 3 * s5;
  b[2] = 0.5 * s2 - 1.5 * s3 + 1.5 * s4 - 0.5 * s5;
  b[3] = 10 * s3 - 15 * s4 + 6 * s5;
  b[4] = -4 * s3 + 7 * s4 - 3 * s5;
  b[5] = 0.5 * s3 - s4 + 0.5 * s5;
  db[0] = -30 * s2 + 60 * s3 - 30 * s4;
  db[1] = 1 - 18 * s2 + 32 * s3 - 15 * s4;
  db[2] = s - 4.5 * s2 + 6 * s3 - 2.5 * s4;
  db[3] = 30 * s2 - 60 * s3 + 30 * s4;
  db[4] = -12 * s2 + 28 * s3 - 15 * s4;
  db[5] = 1.5 * s2 - 4 * s3 + 2.5 * s4;
  ddb[0] = -60 * s + 180 * s2 - 120 * s3;
  ddb[1] = -36 * s + 96 * s2 - 60 * s3;
  ddb[2] = 1 - 9 * s + 18 * s2 - 10 * s3;
  ddb[3] = 60 * s - 180 * s2 + 120 * s3;
  ddb[4] = -24 * s + 84 * s2 - 60 * s3;
  ddb[5] = 3 * s - 12 * s2 + 10 * s3;
}

}  // namespace

Jet TracedBranch::jet(double t) const {
  double sign = 1.0;
  if (t < 0 || t >= period_) {
    const double wraps = std::floor(t / period_);
    t -= wraps * period_;
    if (t >= period_) t = 0.0;
    if (twisted_ && std::fmod(std::abs(wraps), 2.0) == 1.0) sign = -1.0;
  }
  auto it = std::upper_bound(knots_.begin(), knots_.end(), t, [](double v, const TraceKnot& k) { return v < k.t; });
  const TraceKnot& knot = *std::prev(it);
  const TracePiece& piece = pieces_[knot.piece];
  Jet out;
  if (piece.bridge) {
    const double L = piece.length;
    const double s = (t - piece.t0) / L;
    double b[6], db[6], ddb[6];
    hermite5(s, b, db, ddb);
    const auto& c = piece.quintic;  // columns: p0, L v0, L^2 a0, p1, L v1, L^2 a1
    out.p = out.d1 = out.d2 = Vec3::Zero();
    for (int k = 0; k < 6; ++k) {
      out.p += b[k] * c.col(k);
      out.d1 += db[k] / L * c.col(k);
      out.d2 += ddb[k] / (L * L) * c.col(k);
    }
  } else {
    const Vec3 p = flow::step(*poly_, knot.p, piece.direction, t - knot.t);
    out = flow::jet(*poly_, p, piece.direction);
  }
  if (sign < 0) {
    out.p = -out.p;
    out.d1 = -out.d1;
    out.d2 = -out.d2;
  }
  return out;
}

namespace {

// The three faces x = 1, y = 1, z = 1 of the cube; every projective point
// has a representative on one of them.
Vec3 face_point(int face, double u, double v) {
  Vec3 p;
  p[face] = 1.0;
  p[(face + 1) % 3] = u;
  p[(face + 2) % 3] = v;
  return p;
}

double gradient_residual(const Polynomial& F, const Vec3& p) {
  const Vec3 q = p.normalized();
  return F.gradient(q).norm() / (F.scale() * std::max(1, F.degree()));
}

}  // namespace

std::vector<SingularPoint> find_singular_points(const Polynomial& F, const Tolerances& tol) {
  std::vector<SingularPoint> out;
  const int grid = 48;
  for (int face = 0; face < 3; ++face) {
    for (int a = 0; a <= grid; ++a) {
      for (int b = 0; b <= grid; ++b) {
        double u = -1.0 + 2.0 * a / grid;
        double v = -1.0 + 2.0 * b / grid;
        bool converged = false;
        for (int it = 0; it < 40; ++it) {
          const Vec3 p = face_point(face, u, v);
          const auto d = F.derivatives(p);
          Eigen::Matrix<double, 3, 2> J;
          J.col(0) = d.hessian.col((face + 1) % 3);
          J.col(1) = d.hessian.col((face + 2) % 3);
          const Eigen::Vector2d delta = J.colPivHouseholderQr().solve(-d.gradient);
          u += delta.x();
          v += delta.y();
          if (!std::isfinite(u) || !std::isfinite(v) || std::abs(u) > 1.5 || std::abs(v) > 1.5) break;
          if (delta.norm() < 1e-15) {
            converged = true;
            break;
          }
        }
        if (!std::isfinite(u) || std::abs(u) > 1.5 || std::abs(v) > 1.5) continue;
        const Vec3 p = normalize_projective<double>(face_point(face, u, v));
        if (gradient_residual(F, p) > 1e-11 && !converged) continue;
        if (gradient_residual(F, p) > 1e-9) continue;
        bool seen = false;
        for (const auto& s : out) seen = seen || projective_distance<double>(s.p, p) < 1e-7;
        if (seen) continue;

        Vec3 e1 = p.unitOrthogonal();
        Vec3 e2 = p.cross(e1);
        const Mat3 H = F.hessian(p);
        Eigen::Matrix2d M;
        M << e1.dot(H * e1), e1.dot(H * e2), e2.dot(H * e1), e2.dot(H * e2);
        const Eigen::Vector2d ev = Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d>(M).eigenvalues();
        const double big = std::max(std::abs(ev[0]), std::abs(ev[1]));
        if (!(big > 0) || std::min(std::abs(ev[0]), std::abs(ev[1])) < tol.genericity * big * 10)
          fail(ErrorCode::NodeClassificationAmbiguous, "degenerate singular point (cusp or worse)");
        out.push_back({p, ev[0] * ev[1] < 0 ? NodeKind::Hyperbolic : NodeKind::Isolated, ev});
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const SingularPoint& a, const SingularPoint& b) {
    return std::lexicographical_compare(a.p.data(), a.p.data() + 3, b.p.data(), b.p.data() + 3);
  });
  return out;
}

namespace {

struct Seed {
  Vec3 p;
};

std::vector<Seed> collect_seeds(const Polynomial& F, int resolution) {
  std::vector<Seed> seeds;
  const int n = resolution;
  std::vector<double> values((n + 1) * (n + 1));
  for (int face = 0; face < 3; ++face) {
    auto coord = [n](int i) { return -1.0 + 2.0 * i / n; };
    for (int a = 0; a <= n; ++a)
      for (int b = 0; b <= n; ++b) values[a * (n + 1) + b] = F(face_point(face, coord(a), coord(b)));
    auto add_edge = [&](int a0, int b0, int a1, int b1) {
      const double f0 = values[a0 * (n + 1) + b0];
      const double f1 = values[a1 * (n + 1) + b1];
      if (f0 == 0.0) {
        seeds.push_back({face_point(face, coord(a0), coord(b0)).normalized()});
        return;
      }
      if ((f0 < 0) == (f1 < 0) || f1 == 0.0) return;
      auto along = [&](double s) {
        return F(face_point(face, coord(a0) + s * (coord(a1) - coord(a0)), coord(b0) + s * (coord(b1) - coord(b0))));
      };
      const double s = bracketed_root(along, 0.0, 1.0, f0, f1);
      seeds.push_back({face_point(face, coord(a0) + s * (coord(a1) - coord(a0)),
                                  coord(b0) + s * (coord(b1) - coord(b0)))
                           .normalized()});
    };
    for (int a = 0; a <= n; ++a)
      for (int b = 0; b <= n; ++b) {
        if (a < n) add_edge(a, b, a + 1, b);
        if (b < n) add_edge(a, b, a, b + 1);
      }
  }
  return seeds;
}

class KnotIndex {
 public:
  KnotIndex(TracedBranch branch, double cell) : branch_(std::move(branch)), cell_(cell) {
    const auto& knots = branch_.knots();
    for (int i = 0; i < static_cast<int>(knots.size()); ++i) cells_[key(knots[i].p)].push_back(i);
  }

  bool covers(const Vec3& seed, double reach) const {
    const auto& knots = branch_.knots();
    for (double sign : {1.0, -1.0}) {
      const Vec3 s = sign * seed;
      const long long cx = static_cast<long long>(std::floor(s.x() / cell_));
      const long long cy = static_cast<long long>(std::floor(s.y() / cell_));
      const long long cz = static_cast<long long>(std::floor(s.z() / cell_));
      for (long long dx = -1; dx <= 1; ++dx)
        for (long long dy = -1; dy <= 1; ++dy)
          for (long long dz = -1; dz <= 1; ++dz) {
            auto it = cells_.find(pack(cx + dx, cy + dy, cz + dz));
            if (it == cells_.end()) continue;
            for (int i : it->second) {
              if ((knots[i].p - s).norm() > reach) continue;
              double t = knots[i].t;
              for (int iter = 0; iter < 6; ++iter) {
                const Jet J = branch_.jet(t);
                t += (s - J.p).dot(J.d1) / J.d1.squaredNorm();
              }
              if (projective_distance<double>(branch_.jet(t).p.normalized(), seed) < 1e-7) return true;
            }
          }
    }
    return false;
  }

 private:
  static long long pack(long long x, long long y, long long z) {
    return (x & 0x1fffff) | ((y & 0x1fffff) << 21) | ((z & 0x1fffff) << 42);
  }
  long long key(const Vec3& p) const {
    return pack(static_cast<long long>(std::floor(p.x() / cell_)), static_cast<long long>(std::floor(p.y() / cell_)),
                static_cast<long long>(std::floor(p.z() / cell_)));
  }

  TracedBranch branch_;
  double cell_;
  std::unordered_map<long long, std::vector<int>> cells_;
};

struct Tracer {
  std::shared_ptr<const Polynomial> F;
  const Tolerances& tol;
  std::vector<Vec3> nodes;  // hyperbolic nodes to bridge
  double h_max;
  double curvature_step;
  double bridge_radius;

  double node_distance(const Vec3& p, int* which) const {
    double best = 1e300;
    for (int k = 0; k < static_cast<int>(nodes.size()); ++k) {
      const double d = projective_distance<double>(p, nodes[k]);
      if (d < best) {
        best = d;
        *which = k;
      }
    }
    return best;
  }

  TracedBranch trace(const Vec3& start) const {
    const Polynomial& poly = *F;
    const double max_length = 4.0 * std::numbers::pi * (poly.degree() + 2) + 10.0;
    const Vec3 p0 = start;
    const Vec3 u0 = flow::direction(poly, p0);

    std::vector<TraceKnot> knots{{0.0, p0, 0}};
    std::vector<TracePiece> pieces{{false, 1, 0.0, 0.0, {}}};
    Vec3 p = p0;
    int dir = 1;
    double t = 0.0;

    while (t < max_length) {
      check_regular(p);
      const Jet J = flow::jet(poly, p, dir);
      double h = std::min(h_max, curvature_step / std::max(1.0, J.d2.norm()));

      int which = -1;
      const double dn = node_distance(p, &which);
      if (which >= 0 && dn < 4.0 * bridge_radius) {
        Vec3 q = nodes[which];
        if (q.dot(p) < 0) q = -q;
        const bool heading = J.d1.dot(q - p) > 0.9 * (q - p).norm();
        if (heading && dn <= bridge_radius * 1.05) {
          bridge(p, dir, q, t, knots, pieces);
          continue;
        }
        if (heading) h = std::max(std::min(h, dn - bridge_radius), 0.1 * bridge_radius);
      }

      const Vec3 next = flow::step(poly, p, dir, h);
      for (double sigma : {1.0, -1.0}) {
        const Vec3 target = sigma * p0;
        const Vec3 normal = sigma * u0;
        const double before = (p - target).dot(normal);
        const double after = (next - target).dot(normal);
        if (!(before < 0 && after >= 0) || (next - target).norm() > 2.0 * h + 1e-9) continue;
        if (flow::jet(poly, next, dir).d1.dot(normal) <= 0) continue;
        auto crossing = [&](double s) { return (flow::step(poly, p, dir, s) - target).dot(normal); };
        const double s = bracketed_root(crossing, 0.0, h, before, after);
        const Vec3 end = flow::step(poly, p, dir, s);
        if ((end - target).norm() > tol.glue)
          fail(ErrorCode::TracingGapError, "traced branch does not close (gap " + std::to_string((end - target).norm()) + ")");
        const bool twisted = sigma < 0;
        if (twisted && poly.degree() % 2 == 0)
          fail(ErrorCode::TracingGapError, "one-sided branch on an even-degree curve");
        return TracedBranch(F, std::move(knots), std::move(pieces), t + s, twisted);
      }
      t += h;
      p = next;
      knots.push_back({t, p, static_cast<int>(pieces.size()) - 1});
    }
    fail(ErrorCode::TracingGapError, "branch did not close within the length budget");
  }

  void check_regular(const Vec3& p) const {
    const Vec3 g = F->gradient(p);
    if (g.norm() < tol.genericity * F->scale())
      fail(ErrorCode::SingularPointHit, "trace reached a singular point of the curve");
  }

  void bridge(Vec3& p, int& dir, const Vec3& q, double& t, std::vector<TraceKnot>& knots,
              std::vector<TracePiece>& pieces) const {
    const Polynomial& poly = *F;
    const Jet entry = flow::jet(poly, p, dir);
    const Vec3 mirrored = 2.0 * q.dot(p) * q - p;
    const Vec3 exit = flow::project(poly, mirrored, 30);
    const double r = (p - q).norm();
    if ((exit - mirrored).norm() > 0.3 * r || std::abs((exit - q).norm() - r) > 0.3 * r)
      fail(ErrorCode::TracingGapError, "could not continue the branch through a node");
    const Vec3 u = flow::direction(poly, exit);
    const int exit_dir = u.dot(exit - q) > 0 ? 1 : -1;
    const Jet out = flow::jet(poly, exit, exit_dir);
    const double length = std::acos(std::clamp(p.dot(q), -1.0, 1.0)) + std::acos(std::clamp(exit.dot(q), -1.0, 1.0));

    TracePiece piece;
    piece.bridge = true;
    piece.direction = dir;
    piece.t0 = t;
    piece.length = length;
    piece.quintic.col(0) = entry.p;
    piece.quintic.col(1) = length * entry.d1;
    piece.quintic.col(2) = length * length * entry.d2;
    piece.quintic.col(3) = out.p;
    piece.quintic.col(4) = length * out.d1;
    piece.quintic.col(5) = length * length * out.d2;
    pieces.push_back(piece);
    knots.back().piece = static_cast<int>(pieces.size()) - 1;  // bridge starts at the current knot
    t += length;
    pieces.push_back({false, exit_dir, t, 0.0, {}});
    knots.push_back({t, exit, static_cast<int>(pieces.size()) - 1});
    p = exit;
    dir = exit_dir;
  }
};

}  // namespace

TraceResult trace_real_locus(const std::shared_ptr<const Polynomial>& F, const Tolerances& tol,
                             const TraceOptions& options) {
  if (F->degree() < 1 || F->is_zero()) fail(ErrorCode::EmptyRealLocus, "zero polynomial");
  TraceResult result;
  result.singular_points = find_singular_points(*F, tol);
  if (!options.nodal && !result.singular_points.empty())
    fail(ErrorCode::SingularPointHit, "curve has " + std::to_string(result.singular_points.size()) +
                                          " real singular point(s); use nodal mode");

  const double refine = 1024.0 / tol.trace_resolution;
  Tracer tracer{F, tol, {}, 4e-3 * refine, 0.05 * refine, 2e-3};
  for (const auto& s : result.singular_points)
    if (s.kind == NodeKind::Hyperbolic) tracer.nodes.push_back(s.p);

  const auto seeds = collect_seeds(*F, tol.trace_resolution);
  result.seeds = static_cast<int>(seeds.size());
  if (seeds.empty()) fail(ErrorCode::EmptyRealLocus, "no real points found on the sampling grid");

  std::vector<KnotIndex> indices;
  for (const auto& seed : seeds) {
    int which = -1;
    if (tracer.node_distance(seed.p, &which) < 6.0 * tracer.bridge_radius) continue;
    bool isolated = false;
    for (const auto& s : result.singular_points)
      isolated = isolated || projective_distance<double>(seed.p.normalized(), s.p) < 6.0 * tracer.bridge_radius;
    if (isolated) continue;
    const Vec3 p = flow::project(*F, seed.p, 30);
    if (std::abs((*F)(p)) > tol.trace * F->scale()) continue;
    bool covered = false;
    for (const auto& index : indices) covered = covered || index.covers(p, 3.0 * tracer.h_max);
    if (covered) continue;
    result.branches.push_back(tracer.trace(normalize_projective<double>(p)));
    indices.emplace_back(result.branches.back(), 2.0 * tracer.h_max);
  }
  return result;
}

}  // namespace curvelab
