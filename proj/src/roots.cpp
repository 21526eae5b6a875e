#include "curvelab/roots.hpp"

#include <algorithm>
#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/toms748_solve.hpp>
#include <cmath>
#include <cstdint>

namespace curvelab {

double cyclic_distance(double a, double b, double period) {
  double d = std::fmod(std::abs(a - b), period);
  return std::min(d, period - d);
}

double bracketed_root(const std::function<double(double)>& f, double a, double b, double fa, double fb) {
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  std::uintmax_t iterations = 200;
  auto tol = [](double lo, double hi) { return std::abs(hi - lo) <= 4e-16 * std::max(1.0, std::abs(lo)); };
  const auto [lo, hi] = boost::math::tools::toms748_solve(f, a, b, fa, fb, tol, iterations);
  return 0.5 * (lo + hi);
}

namespace {

constexpr double kDipReach = 4.0;

struct Node {
  double t;
  double value;
};

bool excluded(double t, double period, const std::vector<ParameterWindow>& windows) {
  for (const auto& w : windows)
    if (cyclic_distance(t, w.center, period) <= w.radius) return true;
  return false;
}

double wrap(double t, double period) {
  double r = std::fmod(t, period);
  if (r < 0) r += period;
  return r;
}

}  // namespace

RootScan scan_roots(const std::function<double(double)>& f, double period, std::span<const double> samples,
                    const ScanOptions& options) {
  const int n = static_cast<int>(samples.size());
  const double h = period / n;

  std::vector<Node> nodes;
  nodes.reserve(n + 1 + 2 * options.exclusions.size());
  for (int i = 0; i < n; ++i) nodes.push_back({i * h, samples[i]});
  nodes.push_back({period, options.antiperiodic ? -samples[0] : samples[0]});
  for (const auto& w : options.exclusions) {
    for (double edge : {w.center - w.radius, w.center + w.radius}) {
      const double t = wrap(edge, period);
      nodes.push_back({t, f(t)});
    }
  }
  std::sort(nodes.begin(), nodes.end(), [](const Node& a, const Node& b) { return a.t < b.t; });

  const int m = static_cast<int>(nodes.size());
  std::vector<char> open(m - 1);
  for (int c = 0; c + 1 < m; ++c) {
    const double mid = 0.5 * (nodes[c].t + nodes[c + 1].t);
    open[c] = nodes[c + 1].t > nodes[c].t && !excluded(mid, period, options.exclusions);
  }

  RootScan out;
  auto keep = [&](std::vector<double>& into, double t) {
    t = wrap(t, period);
    if (!excluded(t, period, options.exclusions)) into.push_back(t);
  };

  for (int c = 0; c + 1 < m; ++c) {
    if (!open[c]) continue;
    const Node& a = nodes[c];
    const Node& b = nodes[c + 1];
    if (a.value == 0.0) {
      const Node& before = c == 0 ? nodes[m - 2] : nodes[c - 1];
      const double vb = c == 0 && options.antiperiodic ? -before.value : before.value;
      keep((vb < 0) == (b.value < 0) && vb != 0.0 ? out.touches : out.roots, a.t);
      continue;
    }
    if ((a.value < 0) != (b.value < 0) && b.value != 0.0) {
      if (options.refine) {
        keep(out.roots, bracketed_root(f, a.t, b.t, a.value, b.value));
      } else {
        keep(out.roots, a.t + (b.t - a.t) * a.value / (a.value - b.value));
      }
    }
  }

  // Local minima of |f| between two open cells without a sign change.
  for (int k = 0; k < m; ++k) {
    const int prev = k == 0 ? m - 2 : k - 1;
    const int next = k == m - 1 ? 1 : k + 1;
    const int cell_before = k == 0 ? m - 2 : k - 1;
    const int cell_after = k == m - 1 ? 0 : k;
    if (k == m - 1) continue;  // same node as k == 0 (up to sign)
    if (!open[cell_before] || !open[cell_after]) continue;
    double vp = nodes[prev].value;
    double vn = nodes[next].value;
    const double vk = nodes[k].value;
    if (k == 0 && options.antiperiodic) vp = -vp;
    if (vk == 0.0) continue;
    if ((vp < 0) != (vk < 0) || (vn < 0) != (vk < 0)) continue;
    if (std::abs(vk) > std::abs(vp) || std::abs(vk) > std::abs(vn)) continue;
    // A dip whose parabola through the three nodes stays far from zero cannot hide a root pair.
    const double curvature = std::abs(vp - 2 * vk + vn);
    if (std::abs(vk) > kDipReach * curvature + options.touch_tolerance) continue;

    double lo = nodes[prev].t;
    double hi = nodes[next].t;
    if (k == 0) lo -= period;
    const double s = vk < 0 ? -1.0 : 1.0;
    auto g = [&](double t) {
      const double sign = (options.antiperiodic && t < 0) ? -1.0 : 1.0;
      return s * sign * f(t < 0 ? t + period : t);
    };
    const auto [t_min, g_min] = boost::math::tools::brent_find_minima(g, lo, hi, 50);
    if (g_min < 0 && -g_min > options.touch_tolerance) {
      auto fs = [&](double t) { return g(t); };
      const double r1 = bracketed_root(fs, lo, t_min, g(lo), g_min);
      const double r2 = bracketed_root(fs, t_min, hi, g_min, g(hi));
      keep(out.roots, r1);
      keep(out.roots, r2);
    } else if (std::abs(g_min) <= options.touch_tolerance) {
      keep(out.touches, t_min);
    }
  }

  auto tidy = [&](std::vector<double>& v) {
    std::sort(v.begin(), v.end());
    std::vector<double> unique;
    for (double t : v) {
      if (!unique.empty() && cyclic_distance(unique.back(), t, period) < 1e-12 * period) continue;
      unique.push_back(t);
    }
    if (unique.size() > 1 && cyclic_distance(unique.front(), unique.back(), period) < 1e-12 * period)
      unique.pop_back();
    v = std::move(unique);
  };
  tidy(out.roots);
  tidy(out.touches);
  return out;
}

RootScan scan_roots(const std::function<double(double)>& f, double period, int n, const ScanOptions& options) {
  std::vector<double> samples(n);
  for (int i = 0; i < n; ++i) samples[i] = f(i * period / n);
  return scan_roots(f, period, samples, options);
}

}  // namespace curvelab
