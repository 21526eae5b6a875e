#pragma once

// Projective points and lines of RP^2, affine charts and the orientation
// predicate. Everything here is a value type templated on the scalar.

#include <Eigen/Dense>
#include <cmath>
#include <limits>

#include "curvelab/errors.hpp"

namespace curvelab {

template <typename Scalar>
using Vector3 = Eigen::Matrix<Scalar, 3, 1>;
template <typename Scalar>
using Vector2 = Eigen::Matrix<Scalar, 2, 1>;
template <typename Scalar>
using Matrix3 = Eigen::Matrix<Scalar, 3, 3>;

/// Unit norm with the first nonzero coordinate positive. Vectors already in
/// that form are returned untouched so the map is idempotent bit for bit.
template <typename Scalar>
Vector3<Scalar> normalize_projective(const Vector3<Scalar>& v) {
  const Scalar n2 = v.squaredNorm();
  if (!(n2 > Scalar(0))) fail(ErrorCode::CoincidentPoints, "zero homogeneous vector");
  int lead = 0;
  while (lead < 2 && v[lead] == Scalar(0)) ++lead;
  const Scalar eps = std::numeric_limits<Scalar>::epsilon();
  if (v[lead] > Scalar(0) && std::abs(n2 - Scalar(1)) <= Scalar(4) * eps) return v;
  Vector3<Scalar> u = v / std::sqrt(n2);
  if (u[lead] < Scalar(0)) u = -u;
  return u;
}

/// Distance between two projective classes represented by unit vectors.
template <typename Scalar>
Scalar projective_distance(const Vector3<Scalar>& a, const Vector3<Scalar>& b) {
  return std::min((a - b).norm(), (a + b).norm());
}

template <typename Scalar>
class HomogeneousPoint {
 public:
  using Vector = Vector3<Scalar>;

  explicit HomogeneousPoint(const Vector& v) : v_(normalize_projective<Scalar>(v)) {}
  HomogeneousPoint(Scalar x, Scalar y, Scalar z) : HomogeneousPoint(Vector(x, y, z)) {}

  const Vector& coords() const { return v_; }
  Scalar operator[](int i) const { return v_[i]; }

  bool approx(const HomogeneousPoint& other, Scalar tol) const {
    return projective_distance<Scalar>(v_, other.v_) < tol;
  }

 private:
  Vector v_;
};

template <typename Scalar>
class ProjectiveLine {
 public:
  using Vector = Vector3<Scalar>;

  /// The line {p : u x + v y + w z = 0}.
  explicit ProjectiveLine(const Vector& coeffs) : l_(normalize_projective<Scalar>(coeffs)) {}
  ProjectiveLine(Scalar u, Scalar v, Scalar w) : ProjectiveLine(Vector(u, v, w)) {}

  static ProjectiveLine at_infinity() { return ProjectiveLine(Scalar(0), Scalar(0), Scalar(1)); }

  const Vector& coeffs() const { return l_; }
  Scalar operator[](int i) const { return l_[i]; }

  bool approx(const ProjectiveLine& other, Scalar tol) const {
    return projective_distance<Scalar>(l_, other.l_) < tol;
  }

 private:
  Vector l_;
};

/// Signed incidence value of a normalized line and point; zero iff incident.
template <typename Scalar>
Scalar incidence(const ProjectiveLine<Scalar>& l, const HomogeneousPoint<Scalar>& p) {
  return l.coeffs().dot(p.coords());
}

template <typename Scalar>
ProjectiveLine<Scalar> join(const HomogeneousPoint<Scalar>& p, const HomogeneousPoint<Scalar>& q,
                            Scalar tol = Scalar(1e-9)) {
  const Vector3<Scalar> l = p.coords().cross(q.coords());
  if (l.norm() < tol) fail(ErrorCode::CoincidentPoints, "join of coincident points");
  return ProjectiveLine<Scalar>(l);
}

template <typename Scalar>
HomogeneousPoint<Scalar> meet(const ProjectiveLine<Scalar>& l, const ProjectiveLine<Scalar>& m,
                              Scalar tol = Scalar(1e-9)) {
  const Vector3<Scalar> p = l.coeffs().cross(m.coeffs());
  if (p.norm() < tol) fail(ErrorCode::CoincidentLines, "meet of coincident lines");
  return HomogeneousPoint<Scalar>(p);
}

/// Sign of det[b - a, c - a]; zero when |det| <= tol.
template <typename Scalar>
int orient(const Vector2<Scalar>& a, const Vector2<Scalar>& b, const Vector2<Scalar>& c,
           Scalar tol = Scalar(1e-10)) {
  const Vector2<Scalar> u = b - a;
  const Vector2<Scalar> v = c - a;
  const Scalar det = u.x() * v.y() - u.y() * v.x();
  if (std::abs(det) <= tol) return 0;
  return det > Scalar(0) ? 1 : -1;
}

/// Identification of RP^2 minus a line with R^2 through an orthonormal
/// frame (e1, e2, n) where n is the unit normal of the line at infinity.
/// The frame is the minimal rotation taking the z axis onto n, so the
/// default line z = 0 yields the standard (x, y) chart.
template <typename Scalar>
class AffineChart {
 public:
  using Vector = Vector3<Scalar>;
  using Point2 = Vector2<Scalar>;

  AffineChart() : AffineChart(ProjectiveLine<Scalar>::at_infinity()) {}

  explicit AffineChart(const ProjectiveLine<Scalar>& line_at_infinity) : infinity_(line_at_infinity) {
    Vector n = infinity_.coeffs();
    if (n.z() < Scalar(0)) n = -n;
    const Vector z(0, 0, 1);
    const Vector k = z.cross(n);
    const Scalar c = z.dot(n);
    Matrix3<Scalar> K;
    K << 0, -k.z(), k.y(), k.z(), 0, -k.x(), -k.y(), k.x(), 0;
    const Matrix3<Scalar> R = Matrix3<Scalar>::Identity() + K + K * K / (Scalar(1) + c);
    frame_.row(0) = R.col(0).transpose();
    frame_.row(1) = R.col(1).transpose();
    frame_.row(2) = n.transpose();
  }

  const ProjectiveLine<Scalar>& line_at_infinity() const { return infinity_; }

  /// Rows e1, e2, n; maps homogeneous coordinates to chart-homogeneous ones
  /// in which the line at infinity is w = 0.
  const Matrix3<Scalar>& frame() const { return frame_; }

  Vector to_chart(const Vector& p) const { return frame_ * p; }
  Vector from_chart(const Vector& q) const { return frame_.transpose() * q; }

  bool on_infinity(const Vector& p, Scalar tol) const {
    return std::abs(frame_.row(2).dot(p)) <= tol * p.norm();
  }

  Point2 map(const Vector& p, Scalar tol = Scalar(1e-12)) const {
    const Vector q = to_chart(p);
    if (std::abs(q.z()) <= tol * p.norm()) fail(ErrorCode::OnInfinity, "point lies on the line at infinity");
    return Point2(q.x() / q.z(), q.y() / q.z());
  }

  Vector unmap(const Point2& x) const { return from_chart(Vector(x.x(), x.y(), Scalar(1))); }

 private:
  ProjectiveLine<Scalar> infinity_;
  Matrix3<Scalar> frame_;
};

using Vec2 = Vector2<double>;
using Vec3 = Vector3<double>;
using Mat3 = Matrix3<double>;
using Point = HomogeneousPoint<double>;
using Line = ProjectiveLine<double>;
using Chart = AffineChart<double>;

}  // namespace curvelab
