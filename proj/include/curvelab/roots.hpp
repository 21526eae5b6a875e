#pragma once

// Root isolation for scalar functions on a periodic parameter circle.

#include <functional>
#include <span>
#include <vector>

namespace curvelab {

/// A closed parameter window [center - radius, center + radius], taken
/// modulo the period.
struct ParameterWindow {
  double center;
  double radius;
};

struct ScanOptions {
  /// f(t + period) = -f(t) instead of f(t + period) = f(t).
  bool antiperiodic = false;
  /// Roots and touches inside any window are ignored.
  std::vector<ParameterWindow> exclusions;
  /// |f| at a local extremum below this value counts as a touching root.
  double touch_tolerance = 0.0;
  /// Polish sign-change roots; otherwise they are linearly interpolated
  /// within their cell.
  bool refine = true;
};

struct RootScan {
  std::vector<double> roots;    // simple roots, sorted, in [0, period)
  std::vector<double> touches;  // extrema of f with |f| <= touch_tolerance
};

/// Finds the sign changes of f on [0, period) from its values on the uniform
/// grid t_i = i * period / n, n = samples.size(). Cells whose end values share
/// a sign are inspected at local minima of |f| so that a close pair of roots
/// inside a single cell is still resolved.
RootScan scan_roots(const std::function<double(double)>& f, double period, std::span<const double> samples,
                    const ScanOptions& options = {});

/// Convenience overload that samples f itself on n cells.
RootScan scan_roots(const std::function<double(double)>& f, double period, int n, const ScanOptions& options = {});

/// Cyclic distance between two parameters.
double cyclic_distance(double a, double b, double period);

/// Bracketed root polish on [a, b] with f(a), f(b) of opposite signs.
double bracketed_root(const std::function<double(double)>& f, double a, double b, double fa, double fb);

}  // namespace curvelab
