#include "curvelab/tolerances.hpp"

#include <cctype>
#include <cstdlib>

#include "curvelab/errors.hpp"

namespace curvelab {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::CoincidentPoints: return "CoincidentPoints";
    case ErrorCode::CoincidentLines: return "CoincidentLines";
    case ErrorCode::OnInfinity: return "OnInfinity";
    case ErrorCode::NotImmersed: return "NotImmersed";
    case ErrorCode::DegenerateFlex: return "DegenerateFlex";
    case ErrorCode::TangentialIntersection: return "TangentialIntersection";
    case ErrorCode::TripleTangent: return "TripleTangent";
    case ErrorCode::InfinityTangency: return "InfinityTangency";
    case ErrorCode::AmbiguousSide: return "AmbiguousSide";
    case ErrorCode::NonTransverseInfinity: return "NonTransverseInfinity";
    case ErrorCode::NonGenericTangent: return "NonGenericTangent";
    case ErrorCode::NonSimpleTangency: return "NonSimpleTangency";
    case ErrorCode::NotAffine: return "NotAffine";
    case ErrorCode::SingularPointHit: return "SingularPointHit";
    case ErrorCode::NodeClassificationAmbiguous: return "NodeClassificationAmbiguous";
    case ErrorCode::UncataloguedJump: return "UncataloguedJump";
    case ErrorCode::EmptyRealLocus: return "EmptyRealLocus";
    case ErrorCode::TracingGapError: return "TracingGapError";
    case ErrorCode::FlexMismatch: return "FlexMismatch";
    case ErrorCode::CrossCheckMismatch: return "CrossCheckMismatch";
    case ErrorCode::PolishDivergence: return "PolishDivergence";
    case ErrorCode::KleinViolation: return "KleinViolation";
    case ErrorCode::IdentityViolation: return "IdentityViolation";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::DegreeMismatch: return "DegreeMismatch";
    case ErrorCode::EmptyCurve: return "EmptyCurve";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

ErrorCategory category(ErrorCode code) {
  switch (code) {
    case ErrorCode::UncataloguedJump:
    case ErrorCode::FlexMismatch:
    case ErrorCode::CrossCheckMismatch:
    case ErrorCode::KleinViolation:
    case ErrorCode::IdentityViolation:
      return ErrorCategory::Identity;
    case ErrorCode::SchemaError:
    case ErrorCode::DegreeMismatch:
    case ErrorCode::EmptyCurve:
      return ErrorCategory::Schema;
    case ErrorCode::IoError:
      return ErrorCategory::Io;
    default:
      return ErrorCategory::Genericity;
  }
}

namespace {

struct Entry {
  const char* name;
  double Tolerances::*real;
  int Tolerances::*integer;
};

constexpr Entry kEntries[] = {
    {"pt", &Tolerances::pt, nullptr},
    {"orient", &Tolerances::orient, nullptr},
    {"flex", &Tolerances::flex, nullptr},
    {"line", &Tolerances::line, nullptr},
    {"diag", &Tolerances::diag, nullptr},
    {"newton", &Tolerances::newton, nullptr},
    {"trace", &Tolerances::trace, nullptr},
    {"glue", &Tolerances::glue, nullptr},
    {"polish", &Tolerances::polish, nullptr},
    {"genericity", &Tolerances::genericity, nullptr},
    {"subdivision", nullptr, &Tolerances::subdivision},
    {"trace_resolution", nullptr, &Tolerances::trace_resolution},
};

const Entry& lookup(std::string_view name) {
  std::string lower;
  for (char c : name) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (lower.rfind("tol_", 0) == 0) lower.erase(0, 4);
  for (const auto& e : kEntries)
    if (lower == e.name) return e;
  fail(ErrorCode::SchemaError, "unknown tolerance '" + std::string(name) + "'");
}

}  // namespace

void Tolerances::set(std::string_view name, double value) {
  const Entry& e = lookup(name);
  if (e.real) {
    if (!(value > 0)) fail(ErrorCode::SchemaError, "tolerance " + std::string(name) + " must be positive");
    this->*e.real = value;
  } else {
    if (!(value >= 16)) fail(ErrorCode::SchemaError, std::string(name) + " must be at least 16");
    this->*e.integer = static_cast<int>(value);
  }
}

double Tolerances::get(std::string_view name) const {
  const Entry& e = lookup(name);
  return e.real ? this->*e.real : static_cast<double>(this->*e.integer);
}

std::vector<std::string> Tolerances::names() {
  std::vector<std::string> out;
  for (const auto& e : kEntries) out.emplace_back(e.name);
  return out;
}

Tolerances Tolerances::from_environment() {
  Tolerances tol;
  for (const auto& e : kEntries) {
    std::string var = "CURVELAB_TOL_";
    for (const char* c = e.name; *c; ++c) var.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(*c))));
    if (const char* value = std::getenv(var.c_str())) {
      char* end = nullptr;
      const double v = std::strtod(value, &end);
      if (end == value || *end != '\0') fail(ErrorCode::SchemaError, var + " is not a number");
      tol.set(e.name, v);
    }
  }
  return tol;
}

}  // namespace curvelab
