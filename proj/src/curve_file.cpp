#include "curvelab/curve_file.hpp"

#include <fstream>
#include <sstream>

#include "curvelab/errors.hpp"
#include "json.hpp"

namespace curvelab {

namespace {

using nlohmann::json;

const char* const kArrays[3][2] = {{"x_cos", "x_sin"}, {"y_cos", "y_sin"}, {"z_cos", "z_sin"}};

// Collects schema problems so that one run reports all of them.
class Problems {
 public:
  void add(const std::string& path, const std::string& what) { list_.push_back(path + ": " + what); }
  bool empty() const { return list_.empty(); }
  [[noreturn]] void raise() const {
    std::string msg;
    for (const auto& p : list_) msg += (msg.empty() ? "" : "; ") + p;
    fail(ErrorCode::SchemaError, msg);
  }

 private:
  std::vector<std::string> list_;
};

std::optional<std::vector<double>> numbers(const json& j, const std::string& path, Problems& problems) {
  if (!j.is_array()) {
    problems.add(path, "expected an array of numbers");
    return std::nullopt;
  }
  std::vector<double> out;
  for (size_t k = 0; k < j.size(); ++k) {
    if (!j[k].is_number()) {
      problems.add(path + "/" + std::to_string(k), "expected a number");
      return std::nullopt;
    }
    out.push_back(j[k].get<double>());
  }
  return out;
}

std::optional<int> integer(const json& j, const std::string& path, Problems& problems) {
  if (!j.is_number_integer()) {
    problems.add(path, "expected an integer");
    return std::nullopt;
  }
  return j.get<int>();
}

std::optional<CurveComponent> component(const json& c, const std::string& path, Problems& problems) {
  if (!c.is_object()) {
    problems.add(path, "expected an object");
    return std::nullopt;
  }
  std::vector<double> arrays[3][2];
  bool ok = true;
  size_t harmonics = 0;
  for (int r = 0; r < 3; ++r) {
    for (int s = 0; s < 2; ++s) {
      const char* key = kArrays[r][s];
      if (!c.contains(key)) {
        problems.add(path + "/" + key, "missing");
        ok = false;
        continue;
      }
      auto v = numbers(c[key], path + "/" + key, problems);
      if (!v) {
        ok = false;
        continue;
      }
      arrays[r][s] = std::move(*v);
    }
    if (ok && arrays[r][0].size() != arrays[r][1].size()) {
      problems.add(path + "/" + kArrays[r][0], std::string("length differs from ") + kArrays[r][1]);
      ok = false;
    }
    harmonics = std::max({harmonics, arrays[r][0].size(), arrays[r][1].size()});
  }
  bool half = false, reversed = false;
  for (auto [key, target] : {std::pair{"half_integer", &half}, std::pair{"reversed", &reversed}}) {
    if (!c.contains(key)) continue;
    if (!c[key].is_boolean()) {
      problems.add(path + "/" + key, "expected a boolean");
      ok = false;
    } else {
      *target = c[key].get<bool>();
    }
  }
  if (!ok) return std::nullopt;
  if (harmonics == 0) {
    problems.add(path, "no coefficients");
    return std::nullopt;
  }
  TrigSeries<double> s;
  s.half_integer = half;
  s.cos_coeffs.setZero(3, static_cast<Eigen::Index>(harmonics));
  s.sin_coeffs.setZero(3, static_cast<Eigen::Index>(harmonics));
  for (int r = 0; r < 3; ++r)
    for (size_t k = 0; k < arrays[r][0].size(); ++k) {
      s.cos_coeffs(r, static_cast<Eigen::Index>(k)) = arrays[r][0][k];
      s.sin_coeffs(r, static_cast<Eigen::Index>(k)) = arrays[r][1][k];
    }
  return CurveComponent(std::move(s), reversed);
}

}  // namespace

bool CurveFile::operator==(const CurveFile& other) const {
  return kind == other.kind && curve == other.curve && polynomial == other.polynomial &&
         total_nodes == other.total_nodes && line_at_infinity.coeffs() == other.line_at_infinity.coeffs();
}

CurveFile parse_curve_json(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::SchemaError, e.what());
  }
  Problems problems;
  if (!root.is_object()) fail(ErrorCode::SchemaError, "/: expected an object");

  CurveFile out;
  if (root.contains("schema_version")) {
    const auto v = integer(root["schema_version"], "/schema_version", problems);
    if (v && *v != kCurveSchemaVersion) problems.add("/schema_version", "unsupported version " + std::to_string(*v));
  }
  if (root.contains("line_at_infinity")) {
    const auto v = numbers(root["line_at_infinity"], "/line_at_infinity", problems);
    if (v && v->size() != 3) {
      problems.add("/line_at_infinity", "expected three coefficients");
    } else if (v) {
      const Vec3 l((*v)[0], (*v)[1], (*v)[2]);
      if (l.norm() == 0)
        problems.add("/line_at_infinity", "zero vector");
      else
        out.line_at_infinity = Line(l);
    }
  }

  const std::string kind = root.contains("kind") && root["kind"].is_string() ? root["kind"].get<std::string>() : "";
  if (kind == "trig") {
    out.kind = CurveKind::Trig;
    if (!root.contains("components") || !root["components"].is_array()) {
      problems.add("/components", "expected an array of components");
    } else {
      const auto& comps = root["components"];
      for (size_t k = 0; k < comps.size(); ++k) {
        auto c = component(comps[k], "/components/" + std::to_string(k), problems);
        if (c) out.curve.components.push_back(std::move(*c));
      }
      if (problems.empty() && out.curve.components.empty()) fail(ErrorCode::EmptyCurve, "no components");
    }
  } else if (kind == "algebraic") {
    out.kind = CurveKind::Algebraic;
    int deg = 0;
    if (!root.contains("degree")) problems.add("/degree", "missing");
    else if (auto d = integer(root["degree"], "/degree", problems)) deg = *d;
    if (root.contains("degree") && root["degree"].is_number_integer() && (deg < 2 || deg > Polynomial::kMaxDegree))
      problems.add("/degree", "must lie in [2, " + std::to_string(Polynomial::kMaxDegree) + "]");
    if (root.contains("nodal")) {
      const auto& n = root["nodal"];
      if (!n.is_object() || !n.contains("N")) {
        problems.add("/nodal", "expected {\"N\": count}");
      } else if (auto N = integer(n["N"], "/nodal/N", problems)) {
        if (*N < 0) problems.add("/nodal/N", "negative");
        out.total_nodes = *N;
      }
    }
    if (!root.contains("monomials") || !root["monomials"].is_array()) problems.add("/monomials", "expected an array");
    if (!problems.empty()) problems.raise();

    out.polynomial = Polynomial(deg);
    const auto& list = root["monomials"];
    for (size_t m = 0; m < list.size(); ++m) {
      const std::string path = "/monomials/" + std::to_string(m);
      const auto& e = list[m];
      if (!e.is_object()) {
        problems.add(path, "expected {i, j, k, c}");
        continue;
      }
      std::optional<int> ex[3];
      const char* names[3] = {"i", "j", "k"};
      for (int a = 0; a < 3; ++a) {
        if (!e.contains(names[a])) problems.add(path + "/" + names[a], "missing");
        else ex[a] = integer(e[names[a]], path + "/" + names[a], problems);
      }
      if (!e.contains("c") || !e["c"].is_number()) {
        problems.add(path + "/c", "expected a number");
        continue;
      }
      if (!ex[0] || !ex[1] || !ex[2]) continue;
      if (*ex[0] < 0 || *ex[1] < 0 || *ex[2] < 0 || *ex[0] + *ex[1] + *ex[2] != deg)
        fail(ErrorCode::DegreeMismatch, path + ": x^" + std::to_string(*ex[0]) + " y^" + std::to_string(*ex[1]) +
                                            " z^" + std::to_string(*ex[2]) + " is not of degree " +
                                            std::to_string(deg));
      out.polynomial.add(*ex[0], *ex[1], *ex[2], e["c"].get<double>());
    }
    if (problems.empty() && out.polynomial.is_zero()) fail(ErrorCode::EmptyCurve, "all coefficients are zero");
  } else {
    problems.add("/kind", "expected \"trig\" or \"algebraic\"");
  }
  if (!problems.empty()) problems.raise();
  return out;
}

CurveFile parse_curve_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::IoError, "cannot read " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_curve_json(buffer.str());
}

std::string emit_curve_json(const CurveFile& file) {
  json root;
  root["schema_version"] = kCurveSchemaVersion;
  const Vec3& l = file.line_at_infinity.coeffs();
  root["line_at_infinity"] = {l.x(), l.y(), l.z()};
  if (file.kind == CurveKind::Trig) {
    root["kind"] = "trig";
    json comps = json::array();
    for (const auto& c : file.curve.components) {
      const auto* s = c.trig();
      if (!s) fail(ErrorCode::SchemaError, "only trig components can be written");
      json j;
      for (int r = 0; r < 3; ++r) {
        std::vector<double> cs(s->cos_coeffs.row(r).begin(), s->cos_coeffs.row(r).end());
        std::vector<double> sn(s->sin_coeffs.row(r).begin(), s->sin_coeffs.row(r).end());
        j[kArrays[r][0]] = cs;
        j[kArrays[r][1]] = sn;
      }
      j["half_integer"] = s->half_integer;
      if (c.is_reversed()) j["reversed"] = true;
      comps.push_back(j);
    }
    root["components"] = comps;
  } else {
    root["kind"] = "algebraic";
    root["degree"] = file.polynomial.degree();
    json list = json::array();
    file.polynomial.for_each_monomial([&](int i, int j, int k, double c) {
      if (c != 0.0) list.push_back({{"i", i}, {"j", j}, {"k", k}, {"c", c}});
    });
    root["monomials"] = list;
    if (file.total_nodes) root["nodal"] = {{"N", *file.total_nodes}};
  }
  return root.dump(2) + "\n";
}

}  // namespace curvelab
