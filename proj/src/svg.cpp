#include "curvelab/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "curvelab/errors.hpp"

namespace curvelab {

namespace {

constexpr double kSize = 800.0;
constexpr double kMargin = 0.08;

const char* const kComponentColors[] = {"#1f4e79", "#7a3b00", "#2d6a2d", "#6a1b6a", "#4d4d4d"};

class Canvas {
 public:
  Canvas(double x0, double y0, double span) : x0_(x0), y0_(y0), span_(span) {}

  // SVG y grows downwards.
  Eigen::Vector2d operator()(const Eigen::Vector2d& p) const {
    return {(p.x() - x0_) / span_ * kSize, kSize - (p.y() - y0_) / span_ * kSize};
  }
  bool inside(const Eigen::Vector2d& p, double slack) const {
    return p.x() > x0_ - slack * span_ && p.x() < x0_ + (1 + slack) * span_ && p.y() > y0_ - slack * span_ &&
           p.y() < y0_ + (1 + slack) * span_;
  }
  Eigen::Vector2d center() const { return {x0_ + 0.5 * span_, y0_ + 0.5 * span_}; }
  double span() const { return span_; }

 private:
  double x0_, y0_, span_;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

// Square window around the finite part of the curve, ignoring the far
// tails of branches that run off to infinity.
Canvas frame(const std::vector<Eigen::Vector2d>& pts) {
  if (pts.empty()) return Canvas(-1, -1, 2);
  std::vector<double> r;
  for (const auto& p : pts) r.push_back(p.norm());
  std::sort(r.begin(), r.end());
  const double cap = 3.0 * r[r.size() * 3 / 4] + 1e-9;
  double lo_x = 1e300, hi_x = -1e300, lo_y = 1e300, hi_y = -1e300;
  for (const auto& p : pts) {
    if (p.norm() > cap) continue;
    lo_x = std::min(lo_x, p.x());
    hi_x = std::max(hi_x, p.x());
    lo_y = std::min(lo_y, p.y());
    hi_y = std::max(hi_y, p.y());
  }
  const double span = std::max({hi_x - lo_x, hi_y - lo_y, 1e-6}) * (1 + 2 * kMargin);
  return Canvas(0.5 * (lo_x + hi_x) - 0.5 * span, 0.5 * (lo_y + hi_y) - 0.5 * span, span);
}

// Segment of a chart line long enough to cross the whole window.
std::pair<Eigen::Vector2d, Eigen::Vector2d> line_segment(const Vec3& l, const Canvas& c) {
  const Eigen::Vector2d n(l.x(), l.y());
  const Eigen::Vector2d dir(-n.y(), n.x());
  const Eigen::Vector2d foot = c.center() - n * (n.dot(c.center()) + l.z()) / n.squaredNorm();
  const Eigen::Vector2d d = dir.normalized() * 2.0 * c.span();
  return {foot - d, foot + d};
}

}  // namespace

std::string svg_document(const Curve& curve, const FeatureSet& features, const Chart& chart, int samples) {
  std::vector<std::vector<Vec3>> chart_points(curve.size());
  std::vector<Eigen::Vector2d> all;
  for (int j = 0; j < curve.size(); ++j) {
    const double period = curve[j].period();
    for (int k = 0; k <= samples; ++k) {
      const Vec3 h = chart.to_chart(curve[j].point(k * period / samples));
      chart_points[j].push_back(h);
      if (std::abs(h.z()) > 1e-12) all.push_back(h.head<2>() / h.z());
    }
  }
  const Canvas canvas = frame(all);
  auto to_px = [&](const Vec3& homogeneous) { return canvas(chart.map(homogeneous)); };

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << kSize << "\" height=\"" << kSize
      << "\" viewBox=\"0 0 " << kSize << " " << kSize << "\">\n"
      << "<defs><clipPath id=\"view\"><rect x=\"0\" y=\"0\" width=\"" << kSize << "\" height=\"" << kSize
      << "\"/></clipPath></defs>\n"
      << "<rect x=\"0\" y=\"0\" width=\"" << kSize << "\" height=\"" << kSize << "\" fill=\"white\"/>\n"
      << "<g clip-path=\"url(#view)\" fill=\"none\">\n";

  auto draw_line = [&](const Vec3& l, const std::string& style) {
    const Vec3 lc = chart.frame() * l;  // line coefficients in chart coordinates
    if (std::hypot(lc.x(), lc.y()) < 1e-12) return;
    const auto [a, b] = line_segment(lc, canvas);
    const auto pa = canvas(a), pb = canvas(b);
    svg << "<line x1=\"" << fmt(pa.x()) << "\" y1=\"" << fmt(pa.y()) << "\" x2=\"" << fmt(pb.x()) << "\" y2=\""
        << fmt(pb.y()) << "\" " << style << "/>\n";
  };

  for (const auto& b : features.bitangents)
    draw_line(b.line.coeffs(), b.kind == BitangentKind::Exterior
                                   ? "stroke=\"#c0392b\" stroke-width=\"1\""
                                   : "stroke=\"#2471a3\" stroke-width=\"1\" stroke-dasharray=\"6,4\"");
  for (const auto& e : features.infinity.entries)
    draw_line(e.tangent.coeffs(), "stroke=\"#7d7d7d\" stroke-width=\"1\" stroke-dasharray=\"2,3\"");

  // Polylines, broken where the curve passes through the line at infinity
  // or leaves the window.
  for (int j = 0; j < curve.size(); ++j) {
    const char* color = kComponentColors[j % std::size(kComponentColors)];
    std::vector<Eigen::Vector2d> run;
    auto flush = [&]() {
      if (run.size() > 1) {
        svg << "<polyline stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (size_t k = 0; k < run.size(); ++k) svg << (k ? " " : "") << fmt(run[k].x()) << "," << fmt(run[k].y());
        svg << "\"/>\n";
      }
      run.clear();
    };
    const auto& pts = chart_points[j];
    for (size_t k = 0; k < pts.size(); ++k) {
      const bool crosses = k > 0 && (pts[k].z() < 0) != (pts[k - 1].z() < 0);
      if (crosses || std::abs(pts[k].z()) < 1e-12) flush();
      if (std::abs(pts[k].z()) < 1e-12) continue;
      const Eigen::Vector2d x = pts[k].head<2>() / pts[k].z();
      if (!canvas.inside(x, 0.5)) {
        flush();
        continue;
      }
      run.push_back(canvas(x));
    }
    flush();
  }
  svg << "</g>\n";

  auto marker = [&](const Vec3& p, const char* shape) {
    if (chart.on_infinity(p.normalized(), 1e-9)) return;
    const auto x = to_px(p);
    if (x.x() < 0 || x.x() > kSize || x.y() < 0 || x.y() > kSize) return;
    if (std::string(shape) == "flex")
      svg << "<circle cx=\"" << fmt(x.x()) << "\" cy=\"" << fmt(x.y()) << "\" r=\"4\" fill=\"#e67e22\"/>\n";
    else
      svg << "<rect x=\"" << fmt(x.x() - 4) << "\" y=\"" << fmt(x.y() - 4)
          << "\" width=\"8\" height=\"8\" fill=\"none\" stroke=\"#000000\" stroke-width=\"1.5\"/>\n";
  };
  for (const auto& f : features.flexes) marker(f.point, "flex");
  for (const auto& n : features.nodes) marker(n.point, "node");

  for (const auto& e : features.infinity.entries) {
    const Vec3 lc = chart.frame() * e.tangent.coeffs();
    if (std::hypot(lc.x(), lc.y()) < 1e-12) continue;
    const Eigen::Vector2d n(lc.x(), lc.y());
    const Eigen::Vector2d foot = canvas.center() - n * (n.dot(canvas.center()) + lc.z()) / n.squaredNorm();
    const auto x = canvas(foot);
    svg << "<text x=\"" << fmt(std::clamp(x.x(), 10.0, kSize - 90)) << "\" y=\""
        << fmt(std::clamp(x.y(), 20.0, kSize - 10)) << "\" font-family=\"sans-serif\" font-size=\"13\" "
        << "fill=\"#555555\">|C∩T|=" << e.intersections << "</text>\n";
  }
  const auto c = features.counts();
  svg << "<text x=\"10\" y=\"20\" font-family=\"sans-serif\" font-size=\"14\">i=" << features.i()
      << " n=" << features.n() << " t=" << c.exterior << " s=" << c.interior << " a=" << features.a()
      << "</text>\n</svg>\n";
  return svg.str();
}

void render_svg(const Curve& curve, const FeatureSet& features, const Chart& chart, const std::string& path) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::IoError, "cannot write " + path);
  out << svg_document(curve, features, chart);
  if (!out) fail(ErrorCode::IoError, "failed writing " + path);
}

}  // namespace curvelab
