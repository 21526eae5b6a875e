#pragma once

#include <Eigen/Dense>
#include <cmath>

#include "curvelab/geometry.hpp"

namespace curvelab {

/// Value and first two parameter derivatives of a homogeneous curve.
template <typename Scalar>
struct JetT {
  Vector3<Scalar> p;
  Vector3<Scalar> d1;
  Vector3<Scalar> d2;
};
using Jet = JetT<double>;

/// Closed curve t -> [x(t) : y(t) : z(t)] on [0, 2 pi) with each coordinate
/// a trigonometric polynomial
///   c(t) = sum_k cos_k cos(w_k t) + sin_k sin(w_k t),  w_k = k (+ 1/2).
/// Half-integer frequencies give H(t + 2 pi) = -H(t): a one-sided closed
/// curve of RP^2, e.g. a pseudo-line.
template <typename Scalar>
struct TrigSeries {
  using Coefficients = Eigen::Matrix<Scalar, 3, Eigen::Dynamic>;

  Coefficients cos_coeffs = Coefficients::Zero(3, 1);  // rows x, y, z; column k
  Coefficients sin_coeffs = Coefficients::Zero(3, 1);
  bool half_integer = false;

  int harmonics() const { return static_cast<int>(cos_coeffs.cols()); }
  Scalar frequency(int k) const { return half_integer ? Scalar(k) + Scalar(0.5) : Scalar(k); }

  JetT<Scalar> jet(Scalar t) const {
    JetT<Scalar> out{Vector3<Scalar>::Zero(), Vector3<Scalar>::Zero(), Vector3<Scalar>::Zero()};
    for (int k = 0; k < harmonics(); ++k) {
      const Scalar w = frequency(k);
      const Scalar c = std::cos(w * t);
      const Scalar s = std::sin(w * t);
      const Vector3<Scalar> a = cos_coeffs.col(k);
      const Vector3<Scalar> b = sin_coeffs.col(k);
      out.p += a * c + b * s;
      out.d1 += w * (b * c - a * s);
      out.d2 -= w * w * (a * c + b * s);
    }
    return out;
  }

  Vector3<Scalar> point(Scalar t) const { return jet(t).p; }

  /// Applies a linear map to the homogeneous coordinates.
  TrigSeries transformed(const Matrix3<Scalar>& A) const {
    TrigSeries out = *this;
    out.cos_coeffs = A * cos_coeffs;
    out.sin_coeffs = A * sin_coeffs;
    return out;
  }

  bool operator==(const TrigSeries& other) const {
    return half_integer == other.half_integer && cos_coeffs == other.cos_coeffs && sin_coeffs == other.sin_coeffs;
  }
};

}  // namespace curvelab
