#include "curvelab/curve.hpp"

#include <cmath>
#include <numbers>

#include "curvelab/errors.hpp"

namespace curvelab {

double CurveComponent::period() const {
  return std::visit(
      [](const auto& s) -> double {
        if constexpr (std::is_same_v<std::decay_t<decltype(s)>, TracedBranch>)
          return s.period();
        else
          return 2.0 * std::numbers::pi;
      },
      source_);
}

bool CurveComponent::twisted() const {
  return std::visit(
      [](const auto& s) -> bool {
        if constexpr (std::is_same_v<std::decay_t<decltype(s)>, TracedBranch>)
          return s.twisted();
        else
          return s.half_integer;
      },
      source_);
}

Jet CurveComponent::jet(double t) const {
  const double T = period();
  double u = reversed_ ? -t : t;
  const double wraps = std::floor(u / T);
  u -= wraps * T;
  if (u >= T) u = 0.0;
  Jet j = std::visit([u](const auto& s) { return s.jet(u); }, source_);
  if (twisted() && std::fmod(std::abs(wraps), 2.0) == 1.0) {
    j.p = -j.p;
    j.d1 = -j.d1;
    j.d2 = -j.d2;
  }
  if (reversed_) j.d1 = -j.d1;
  return j;
}

CurveComponent CurveComponent::reversed() const {
  CurveComponent out = *this;
  out.reversed_ = !reversed_;
  return out;
}

Curve transformed(const Curve& curve, const Mat3& A) {
  Curve out;
  for (const auto& c : curve.components) {
    const auto* series = c.trig();
    if (!series) fail(ErrorCode::SchemaError, "only trigonometric components can be transformed");
    out.components.emplace_back(series->transformed(A), c.is_reversed());
  }
  return out;
}

void check_immersed(const Curve& curve, int samples, double tol) {
  for (int j = 0; j < curve.size(); ++j) {
    const auto& c = curve[j];
    for (int i = 0; i < samples; ++i) {
      const Jet J = c.jet(i * c.period() / samples);
      const double scale = J.p.squaredNorm();
      if (!(scale > 0) || J.p.cross(J.d1).norm() <= tol * scale)
        fail(ErrorCode::NotImmersed, "component " + std::to_string(j) + " is not immersed near t = " +
                                         std::to_string(i * c.period() / samples));
    }
  }
}

}  // namespace curvelab
