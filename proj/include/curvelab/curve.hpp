#pragma once

#include <variant>
#include <vector>

#include "curvelab/geometry.hpp"
#include "curvelab/traced.hpp"
#include "curvelab/trig_series.hpp"

namespace curvelab {

/// One closed component gamma_j of a curve in RP^2, given in homogeneous
/// coordinates on [0, period). Either an explicit trigonometric series or a
/// traced branch of an algebraic curve.
class CurveComponent {
 public:
  using Source = std::variant<TrigSeries<double>, TracedBranch>;

  explicit CurveComponent(TrigSeries<double> series, bool reversed = false)
      : source_(std::move(series)), reversed_(reversed) {}
  explicit CurveComponent(TracedBranch branch, bool reversed = false)
      : source_(std::move(branch)), reversed_(reversed) {}

  double period() const;
  /// H(t + period) = -H(t).
  bool twisted() const;
  bool is_reversed() const { return reversed_; }

  /// Jet at any real t; periodicity (or antiperiodicity) is applied.
  Jet jet(double t) const;
  Vec3 point(double t) const { return jet(t).p; }

  /// The same component traversed backwards.
  CurveComponent reversed() const;

  const Source& source() const { return source_; }
  const TrigSeries<double>* trig() const { return std::get_if<TrigSeries<double>>(&source_); }
  const TracedBranch* traced() const { return std::get_if<TracedBranch>(&source_); }

  bool operator==(const CurveComponent& other) const = default;

 private:
  Source source_;
  bool reversed_;
};

struct Curve {
  std::vector<CurveComponent> components;

  int size() const { return static_cast<int>(components.size()); }
  const CurveComponent& operator[](int j) const { return components[j]; }
  bool operator==(const Curve& other) const = default;
};

/// Curve whose homogeneous coordinates are mapped by A (trig components only).
Curve transformed(const Curve& curve, const Mat3& A);

/// Throws NotImmersed when H and H' become dependent somewhere on the
/// sampling grid.
void check_immersed(const Curve& curve, int samples, double tol);

}  // namespace curvelab
