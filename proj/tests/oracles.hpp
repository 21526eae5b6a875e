#pragma once

// Brute-force reference counts for the tests. None of these call the
// feature finders; they work on dense samples or polylines only.

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "curvelab/curve.hpp"
#include "curvelab/polynomial.hpp"

namespace oracle {

using curvelab::Chart;
using curvelab::Curve;
using curvelab::Vec3;

inline int sign(double v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

// Sign changes of g along [0, period), closing the loop with g(period) =
// -g(0) when the component is antiperiodic for g.
template <typename G>
int cyclic_sign_changes(G&& g, double period, int samples, bool flip_at_wrap) {
  int changes = 0;
  const int first = sign(g(0.0));
  int prev = first;
  for (int k = 1; k <= samples; ++k) {
    const int cur = k == samples ? (flip_at_wrap ? -first : first) : sign(g(k * period / samples));
    if (cur != 0 && prev != 0 && cur != prev) ++changes;
    if (cur != 0) prev = cur;
  }
  return changes;
}

/// Flexes: sign changes of det(H, H', H''), which is odd under H -> -H.
inline int flexes(const Curve& c, int samples = 100000) {
  int total = 0;
  for (int j = 0; j < c.size(); ++j) {
    const auto& comp = c[j];
    auto g = [&](double t) {
      const auto J = comp.jet(t);
      Eigen::Matrix3d M;
      M << J.p, J.d1, J.d2;
      return M.determinant();
    };
    total += cyclic_sign_changes(g, comp.period(), samples, comp.twisted());
  }
  return total;
}

/// Points on a line l: sign changes of l . H.
inline int line_crossings(const Curve& c, const Vec3& l, int samples = 100000) {
  int total = 0;
  for (int j = 0; j < c.size(); ++j) {
    const auto& comp = c[j];
    total += cyclic_sign_changes([&](double t) { return l.dot(comp.point(t)); }, comp.period(), samples,
                                 comp.twisted());
  }
  return total;
}

/// |C n T| for the tangent T at parameter t0 of component j: sign changes
/// of T . H away from a window around t0, plus the tangency point itself.
inline int tangent_line_points(const Curve& c, int j0, double t0, const Vec3& T, int samples = 100000,
                               double window = 0.01) {
  int total = 1;
  for (int j = 0; j < c.size(); ++j) {
    const auto& comp = c[j];
    const double P = comp.period();
    // Start the scan opposite the tangency so the window is one interval.
    const double start = j == j0 ? t0 + 0.5 * P : 0.0;
    auto g = [&](double s) { return T.dot(comp.point(start + s)); };
    int prev = 0, changes = 0;
    for (int k = 0; k <= samples; ++k) {
      const double s = k * P / samples;
      if (j == j0 && std::abs(s - 0.5 * P) < window * P) {
        prev = 0;
        continue;
      }
      int cur = sign(g(s));
      if (k == samples && comp.twisted()) cur = -sign(g(0.0));
      if (cur != 0 && prev != 0 && cur != prev) ++changes;
      if (cur != 0) prev = cur;
    }
    total += changes;
  }
  return total;
}

struct Segment {
  Eigen::Vector2d a, b;
  int component;
  int index;
};

inline bool segments_cross(const Segment& s, const Segment& t) {
  auto orient = [](const Eigen::Vector2d& p, const Eigen::Vector2d& q, const Eigen::Vector2d& r) {
    return (q - p).x() * (r - p).y() - (q - p).y() * (r - p).x();
  };
  const double d1 = orient(s.a, s.b, t.a), d2 = orient(s.a, s.b, t.b);
  const double d3 = orient(t.a, t.b, s.a), d4 = orient(t.a, t.b, s.b);
  return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0)) && d1 != 0 && d2 != 0 && d3 != 0 && d4 != 0;
}

// Proper crossings between non-neighbouring segments; segments are bucketed
// by their bounding boxes along x.
inline std::vector<std::pair<Segment, Segment>> crossings(std::vector<Segment> segs, int gap,
                                                          const std::vector<int>& lengths) {
  std::sort(segs.begin(), segs.end(),
            [](const Segment& s, const Segment& t) { return std::min(s.a.x(), s.b.x()) < std::min(t.a.x(), t.b.x()); });
  std::vector<std::pair<Segment, Segment>> out;
  for (size_t i = 0; i < segs.size(); ++i) {
    const double hi = std::max(segs[i].a.x(), segs[i].b.x());
    for (size_t k = i + 1; k < segs.size() && std::min(segs[k].a.x(), segs[k].b.x()) <= hi; ++k) {
      const Segment &s = segs[i], &t = segs[k];
      if (s.component == t.component) {
        const int n = lengths[s.component];
        const int d = std::abs(s.index - t.index);
        if (std::min(d, n - d) < gap) continue;
      }
      if (std::max(s.a.y(), s.b.y()) < std::min(t.a.y(), t.b.y()) ||
          std::max(t.a.y(), t.b.y()) < std::min(s.a.y(), s.b.y()))
        continue;
      if (segments_cross(s, t)) out.emplace_back(s, t);
    }
  }
  return out;
}

/// Nodes of a curve that misses z = 0: crossings of the chart polyline.
inline int nodes(const Curve& c, int samples = 4000) {
  std::vector<Segment> segs;
  std::vector<int> lengths;
  for (int j = 0; j < c.size(); ++j) {
    const auto& comp = c[j];
    auto at = [&](int k) {
      const Vec3 p = comp.point(k * comp.period() / samples);
      return Eigen::Vector2d(p.x() / p.z(), p.y() / p.z());
    };
    for (int k = 0; k < samples; ++k) segs.push_back({at(k), at(k + 1), j, k});
    lengths.push_back(samples);
  }
  return static_cast<int>(crossings(std::move(segs), 2, lengths).size());
}

struct DualBitangent {
  Vec3 line;  // unit normal
  bool exterior;
};

// Self-crossings of the dual polyline t -> H x H' in the dual chart whose
// line at infinity is r.
inline std::vector<DualBitangent> dual_crossings(const Curve& c, int samples, const Vec3& r) {
  const Vec3 e1 = r.unitOrthogonal();
  const Vec3 e2 = r.cross(e1);

  std::vector<Segment> segs;
  std::vector<int> lengths;
  for (int j = 0; j < c.size(); ++j) {
    const auto& comp = c[j];
    std::vector<Vec3> dual;
    for (int k = 0; k <= samples; ++k) {
      const auto J = comp.jet(k * comp.period() / samples);
      dual.push_back(J.p.cross(J.d1).normalized());
    }
    for (int k = 0; k < samples; ++k) {
      const Vec3 &u = dual[k], &v = dual[k + 1];
      const double wu = r.dot(u), wv = r.dot(v);
      if (sign(wu) != sign(wv) || std::abs(wu) < 1e-6 || std::abs(wv) < 1e-6) continue;
      segs.push_back({Eigen::Vector2d(e1.dot(u), e2.dot(u)) / wu, Eigen::Vector2d(e1.dot(v), e2.dot(v)) / wv, j, k});
    }
    lengths.push_back(samples);
  }

  std::vector<DualBitangent> out;
  const int offset = samples / 200;
  for (const auto& [s, t] : crossings(std::move(segs), 4, lengths)) {
    // Tangency parameters interpolated along both segments; the line through
    // the two tangency points is then accurate to second order.
    const Eigen::Vector2d ds = s.b - s.a, dt = t.b - t.a, w = t.a - s.a;
    const double den = ds.x() * dt.y() - ds.y() * dt.x();
    const double lambda = (w.x() * dt.y() - w.y() * dt.x()) / den;
    const double mu = (w.x() * ds.y() - w.y() * ds.x()) / den;
    auto param = [&](const Segment& seg, double frac) {
      return (seg.index + frac) * c[seg.component].period() / samples;
    };
    const double ts = param(s, lambda), tt = param(t, mu);
    const Vec3 l = c[s.component].point(ts).cross(c[t.component].point(tt)).normalized();
    auto side = [&](const Segment& seg, double at) {
      const auto& comp = c[seg.component];
      const Vec3 p = comp.point(at - offset * comp.period() / samples);
      return sign(l.dot(p)) * sign(p.z());
    };
    out.push_back({l, side(s, ts) == side(t, tt)});
  }
  return out;
}

struct BitangentCounts {
  int exterior = 0;
  int interior = 0;
};

/// Bitangents of a curve that misses z = 0 as self-crossings of its dual
/// polyline, merged over three random dual charts so that none sits at
/// infinity in all of them. Each is classified by comparing the arcs a short
/// way off both tangency points against the line.
inline BitangentCounts bitangents(const Curve& c, int samples = 4000, unsigned seed = 7) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> N(0, 1);
  std::vector<DualBitangent> found;
  for (int chart = 0; chart < 3; ++chart) {
    const Vec3 r = Vec3(N(rng), N(rng), N(rng)).normalized();
    for (const auto& b : dual_crossings(c, samples, r)) {
      bool known = false;
      for (const auto& f : found) known = known || std::min((f.line - b.line).norm(), (f.line + b.line).norm()) < 1e-4;
      if (!known) found.push_back(b);
    }
  }
  BitangentCounts out;
  for (const auto& b : found) (b.exterior ? out.exterior : out.interior)++;
  return out;
}

/// Connected components of {F < 0} in the z = 1 chart over [-R, R]^2, by
/// flood fill on an n x n grid. Counts ovals of a curve that misses z = 0
/// and whose ovals are not nested.
inline int negative_regions(const curvelab::Polynomial& F, double R, int n) {
  std::vector<char> neg(static_cast<size_t>(n) * n), seen(neg.size(), 0);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      neg[static_cast<size_t>(i) * n + k] = F(Vec3(-R + 2 * R * i / (n - 1), -R + 2 * R * k / (n - 1), 1.0)) < 0;
  int regions = 0;
  std::vector<int> stack;
  for (int start = 0; start < n * n; ++start) {
    if (!neg[start] || seen[start]) continue;
    ++regions;
    stack.push_back(start);
    seen[start] = 1;
    while (!stack.empty()) {
      const int cell = stack.back();
      stack.pop_back();
      const int i = cell / n, k = cell % n;
      const int nb[4][2] = {{i + 1, k}, {i - 1, k}, {i, k + 1}, {i, k - 1}};
      for (const auto& q : nb) {
        if (q[0] < 0 || q[0] >= n || q[1] < 0 || q[1] >= n) continue;
        const int m = q[0] * n + q[1];
        if (neg[m] && !seen[m]) {
          seen[m] = 1;
          stack.push_back(m);
        }
      }
    }
  }
  return regions;
}

}  // namespace oracle
