#include "curvelab/jumps.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "curvelab/errors.hpp"
#include "curvelab/roots.hpp"

namespace curvelab {

namespace {

int sign(double x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

// Evaluates f_j from precomputed samples of every component.
class Balance {
 public:
  Balance(const Curve& curve, const Chart& chart, int cells) : curve_(curve), chart_(chart), cells_(cells) {
    for (const auto& c : curve.components) {
      Eigen::Matrix<double, Eigen::Dynamic, 3> P(cells, 3);
      for (int i = 0; i < cells; ++i) P.row(i) = c.point(i * c.period() / cells).normalized().transpose();
      points_.push_back(std::move(P));
    }
  }

  int operator()(int j, double t) const {
    const Jet J = curve_[j].jet(t);
    const Vec3 D = J.p.cross(J.d1).normalized();
    const Vec3 h = chart_.to_chart(J.p);
    const Vec3 hd = chart_.to_chart(J.d1);
    const Eigen::Vector2d v = hd.head<2>() * h.z() - h.head<2>() * hd.z();

    int f = 0;
    for (int k = 0; k < curve_.size(); ++k) {
      const auto& comp = curve_[k];
      const double period = comp.period();
      const double omega = 2 * std::numbers::pi / period;
      const bool self = k == j;
      const double limit = self ? D.dot(J.d2) / (J.p.norm() * omega * omega) : 0.0;
      auto g = [&](double u, double value) {
        if (!self) return value;
        const double du = std::remainder(u - t, period);
        if (std::abs(du) < 1e-6 * period) return limit;
        return value / (1.0 - std::cos(omega * du));
      };
      std::vector<double> values(cells_);
      const Eigen::VectorXd dots = points_[k] * D;
      for (int i = 0; i < cells_; ++i) values[i] = g(i * period / cells_, dots[i]);
      ScanOptions opt;
      opt.antiperiodic = comp.twisted();
      const auto scan = scan_roots([&](double u) { return g(u, D.dot(comp.point(u).normalized())); }, period,
                                   values, opt);
      for (double u : scan.roots) {
        const Vec3 x = chart_.to_chart(comp.point(u));
        const Eigen::Vector2d w = x.head<2>() * h.z() - h.head<2>() * x.z();
        f += sign(w.dot(v)) * sign(x.z()) * sign(h.z());
      }
    }
    return f;
  }

 private:
  const Curve& curve_;
  const Chart& chart_;
  int cells_;
  std::vector<Eigen::Matrix<double, Eigen::Dynamic, 3>> points_;
};

std::string where(const CurveParameter& p) {
  return "component " + std::to_string(p.component) + " near t = " + std::to_string(p.t);
}

}  // namespace

const char* to_string(JumpKind k) {
  switch (k) {
    case JumpKind::Node: return "node";
    case JumpKind::Flex: return "flex";
    case JumpKind::BitangentT: return "bitangent-T";
    case JumpKind::BitangentS: return "bitangent-S";
    case JumpKind::InfinityCrossing: return "infinity-crossing";
    case JumpKind::TangentThroughInfinityPoint: return "tangent-through-p_T";
  }
  return "?";
}

int JumpProfile::total(int component) const {
  int sum = 0;
  for (const auto& e : events)
    if (e.at.component == component) sum += e.expected;
  return sum;
}

int JumpProfile::grouped() const {
  int sum = 0;
  for (const auto& e : events) sum += e.expected;
  return sum;
}

int half_tangent_balance(const Curve& curve, int j, double t, const Chart& chart, const Tolerances& tol) {
  return Balance(curve, chart, tol.subdivision)(j, t);
}

JumpProfile jump_profile(const Curve& curve, const FeatureSet& features, const Chart& chart, int n_samples,
                         const Tolerances& tol) {
  JumpProfile out;
  auto add = [&](CurveParameter at, JumpKind kind, int expected) { out.events.push_back({at, kind, expected, 0}); };
  for (const auto& n : features.nodes) {
    add(n.first, JumpKind::Node, -2);
    add(n.second, JumpKind::Node, -2);
  }
  for (const auto& f : features.flexes) add(f.at, JumpKind::Flex, -2);
  for (const auto& b : features.bitangents) {
    const JumpKind kind = b.kind == BitangentKind::Exterior ? JumpKind::BitangentT : JumpKind::BitangentS;
    add(b.first, kind, 2 * b.sign());
    add(b.second, kind, 2 * b.sign());
  }
  const auto samples = CurveSamples::of(curve, tol.subdivision);
  for (const auto& e : features.infinity.entries) {
    add(e.at, JumpKind::InfinityCrossing, 2 * (e.intersections - 1));
    for (const auto& d : tangents_through_point(curve, samples, Point(e.point), chart, e.tangent, features.infinity,
                                                tol))
      add(d.at, JumpKind::TangentThroughInfinityPoint, 2 * d.sign);
  }
  std::sort(out.events.begin(), out.events.end(), [](const JumpEvent& a, const JumpEvent& b) {
    return a.at.component != b.at.component ? a.at.component < b.at.component : a.at.t < b.at.t;
  });

  const Balance f(curve, chart, tol.subdivision);
  out.samples.resize(curve.size());
  for (int j = 0; j < curve.size(); ++j) {
    const double period = curve[j].period();
    const double h = period / n_samples;
    auto& grid = out.samples[j];
    for (int m = 0; m < n_samples; ++m) grid.push_back({(m + 0.5) * h, f(j, (m + 0.5) * h)});

    std::vector<JumpEvent*> mine;
    for (auto& e : out.events)
      if (e.at.component == j) mine.push_back(&e);
    for (size_t x = 0; x + 1 < mine.size(); ++x)
      if (mine[x + 1]->at.t - mine[x]->at.t < 1e-7)
        fail(ErrorCode::NonGenericTangent, std::string(to_string(mine[x]->kind)) + " and " +
                                              to_string(mine[x + 1]->kind) + " events coincide on " +
                                              where(mine[x]->at));
    if (mine.size() > 1 && mine.front()->at.t + period - mine.back()->at.t < 1e-7)
      fail(ErrorCode::NonGenericTangent, "two jump events coincide on " + where(mine.back()->at));

    // Cell m runs from grid[m] to grid[m + 1], the last one wrapping around.
    for (int m = 0; m < n_samples; ++m) {
      const double lo = grid[m].t;
      const double hi = lo + h;
      std::vector<JumpEvent*> inside;
      for (auto* e : mine) {
        double t = e->at.t;
        if (t < lo) t += period;
        if (t >= lo && t < hi) inside.push_back(e);
      }
      const int f_lo = grid[m].f;
      const int f_hi = grid[(m + 1) % n_samples].f;
      if (inside.empty()) {
        if (f_lo != f_hi) {
          fail(ErrorCode::UncataloguedJump,
               "f changes by " + std::to_string(f_hi - f_lo) + " on " + where({j, lo}) + " without a catalogued event");
        }
        continue;
      }
      auto lifted = [&](const JumpEvent* e) { return e->at.t < lo ? e->at.t + period : e->at.t; };
      std::sort(inside.begin(), inside.end(), [&](auto* a, auto* b) { return lifted(a) < lifted(b); });
      int previous = f_lo;
      for (size_t x = 0; x < inside.size(); ++x) {
        const int next =
            x + 1 < inside.size() ? f(j, 0.5 * (lifted(inside[x]) + lifted(inside[x + 1]))) : f_hi;
        inside[x]->measured = next - previous;
        previous = next;
        if (inside[x]->measured != inside[x]->expected) {
          fail(ErrorCode::UncataloguedJump, std::string("jump ") + std::to_string(inside[x]->measured) + " at " +
                                                to_string(inside[x]->kind) + " event on " + where(inside[x]->at) +
                                                ", catalogue says " + std::to_string(inside[x]->expected));
        }
      }
    }
    if (out.total(j) != 0)
      fail(ErrorCode::IdentityViolation, "catalogued jumps on component " + std::to_string(j) + " do not sum to 0");
  }
  return out;
}

}  // namespace curvelab
