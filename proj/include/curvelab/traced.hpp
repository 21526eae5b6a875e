#pragma once

// Real loci of algebraic curves traced as closed parametrized branches.
//
// A branch is parametrized by arc length on the unit sphere along the flow
// P' = U(P), U = grad F(P) x P / |grad F(P) x P|, which is tangent both to
// the sphere and to the cone F = 0. Points are always projected back onto
// F = 0, and jets are the exact derivatives of the flow, so the branch can be
// queried anywhere without a fitted approximation. Near a hyperbolic node the
// flow degenerates; the branch crosses it on a short quintic Hermite bridge.

#include <memory>
#include <vector>

#include "curvelab/geometry.hpp"
#include "curvelab/polynomial.hpp"
#include "curvelab/roots.hpp"
#include "curvelab/tolerances.hpp"
#include "curvelab/trig_series.hpp"

namespace curvelab {

struct TraceKnot {
  double t;
  Vec3 p;
  int piece;
};

struct TracePiece {
  bool bridge = false;
  int direction = 1;  // flow orientation; +1 or -1
  double t0 = 0.0;
  double length = 0.0;
  Eigen::Matrix<double, 3, 6> quintic = Eigen::Matrix<double, 3, 6>::Zero();  // bridge: sum_k c_k s^k
};

class TracedBranch {
 public:
  TracedBranch(std::shared_ptr<const Polynomial> poly, std::vector<TraceKnot> knots, std::vector<TracePiece> pieces,
               double period, bool twisted);

  double period() const { return period_; }
  bool twisted() const { return twisted_; }
  const Polynomial& polynomial() const { return *poly_; }
  const std::vector<TraceKnot>& knots() const { return knots_; }
  int bridge_count() const;
  /// Parameter windows covered by bridges; their points are off F = 0.
  std::vector<ParameterWindow> bridges() const;

  /// Jet at t in [0, period).
  Jet jet(double t) const;

  bool operator==(const TracedBranch& other) const;

 private:
  std::shared_ptr<const Polynomial> poly_;
  std::vector<TraceKnot> knots_;
  std::vector<TracePiece> pieces_;
  double period_;
  bool twisted_;
};

/// Flow helpers shared by the tracer and the tests.
namespace flow {
/// Unit flow direction at a point of the curve.
Vec3 direction(const Polynomial& F, const Vec3& p);
/// Jet of the unit-speed flow at p with the given orientation.
Jet jet(const Polynomial& F, const Vec3& p, int orientation);
/// Newton projection of p onto F = 0 on the unit sphere.
Vec3 project(const Polynomial& F, const Vec3& p, int iterations = 8);
/// One classical Runge-Kutta step of length h followed by projection.
Vec3 step(const Polynomial& F, const Vec3& p, int orientation, double h);
}  // namespace flow

enum class NodeKind { Hyperbolic, Isolated };

struct SingularPoint {
  Vec3 p;  // unit representative
  NodeKind kind;
  Eigen::Vector2d hessian_eigenvalues;  // of F restricted to the plane orthogonal to p
};

/// Real singular points of F = 0, found by Gauss-Newton on grad F = 0 from a
/// coarse grid over the three standard charts and classified by the
/// signature of the Hessian on the tangent plane. Degenerate singularities
/// raise NodeClassificationAmbiguous.
std::vector<SingularPoint> find_singular_points(const Polynomial& F, const Tolerances& tol);

struct TraceOptions {
  /// Allow hyperbolic nodes (bridged); smooth mode rejects any singular point.
  bool nodal = false;
};

struct TraceResult {
  std::vector<TracedBranch> branches;
  std::vector<SingularPoint> singular_points;
  int seeds = 0;
};

/// Seeds the real locus from sign changes on a grid over the faces x = 1,
/// y = 1, z = 1 of the cube (tol.trace_resolution cells per side) and traces
/// one branch per connected component of the normalization.
TraceResult trace_real_locus(const std::shared_ptr<const Polynomial>& F, const Tolerances& tol,
                             const TraceOptions& options = {});

}  // namespace curvelab
