#pragma once

// Flexes, nodes, bitangents and the data attached to the line at infinity
// for closed curves in RP^2.

#include <optional>
#include <vector>

#include "curvelab/curve.hpp"
#include "curvelab/geometry.hpp"
#include "curvelab/tolerances.hpp"

namespace curvelab {

struct CurveParameter {
  int component;
  double t;
};

struct Flex {
  CurveParameter at;
  Vec3 point;
};

/// A simple double point; `first` precedes `second` lexicographically.
struct Node {
  CurveParameter first;
  CurveParameter second;
  Vec3 point;
};

enum class BitangentKind { Exterior, Interior };  // types T and S

inline int sign_of(BitangentKind k) { return k == BitangentKind::Exterior ? 1 : -1; }
inline const char* label(BitangentKind k) { return k == BitangentKind::Exterior ? "T" : "S"; }

struct Bitangent {
  Line line;
  CurveParameter first;
  CurveParameter second;
  Vec3 first_point;
  Vec3 second_point;
  BitangentKind kind;
  int sign() const { return sign_of(kind); }
};

/// Tangent T at a point of C on the line at infinity, with |C n T| counted
/// as a set (the tangency point once).
struct InfinityTangent {
  CurveParameter at;
  Vec3 point;
  Line tangent;
  int intersections;
};

struct InfinityProfile {
  std::vector<InfinityTangent> entries;
  int a() const { return static_cast<int>(entries.size()); }
  /// Sum over T of (|C n T| - 1).
  int tangent_excess() const;
};

/// Tangent to C through the base point of a pencil, with its sign: +1 when
/// the local arc is on the side of L, -1 when it is on the side of L_inf,
/// 0 for L itself.
struct PencilTangent {
  CurveParameter at;
  Line line;
  int sign;
};

struct SignedCount {
  int exterior = 0;  // t(C)
  int interior = 0;  // s(C)
  int sigma() const { return exterior - interior; }
};

/// Values, derivatives and sampling grid of every component.
struct CurveSamples {
  struct Component {
    double period;
    bool twisted;
    std::vector<Jet> jets;
  };
  std::vector<Component> components;
  int cells;

  static CurveSamples of(const Curve& curve, int cells);
  double step(int j) const { return components[j].period / cells; }
};

std::vector<Flex> find_flexes(const Curve& curve, const Tolerances& tol);
std::vector<Flex> find_flexes(const Curve& curve, const CurveSamples& samples, const Tolerances& tol);

std::vector<Node> find_nodes(const Curve& curve, const Tolerances& tol);
std::vector<Node> find_nodes(const Curve& curve, const CurveSamples& samples, const Tolerances& tol);

/// Tangency pairs of all bitangents, classified in the chart.
std::vector<Bitangent> find_bitangents(const Curve& curve, const Chart& chart, const Tolerances& tol);
std::vector<Bitangent> find_bitangents(const Curve& curve, const CurveSamples& samples, const Chart& chart,
                                       const Tolerances& tol);

/// Exterior (T) when the arcs near both tangency points lie on the same
/// side of the line in the chart, interior (S) otherwise.
BitangentKind classify_bitangent(const Curve& curve, const Bitangent& candidate, const Chart& chart,
                                 const Tolerances& tol);

InfinityProfile infinity_profile(const Curve& curve, const Chart& chart, const Tolerances& tol);
InfinityProfile infinity_profile(const Curve& curve, const CurveSamples& samples, const Chart& chart,
                                 const Tolerances& tol);

/// Number of distinct points of C on the line; a tangency point counts once.
int line_intersections(const Curve& curve, const CurveSamples& samples, const Line& line, const Tolerances& tol);
int line_intersections(const Curve& curve, const Line& line, const Tolerances& tol);

/// Tangents to C through p_L = L n L_inf with their pencil signs.
std::vector<PencilTangent> tangents_through_point(const Curve& curve, const Point& p, const Chart& chart,
                                                  const Line& L, const Tolerances& tol);
std::vector<PencilTangent> tangents_through_point(const Curve& curve, const CurveSamples& samples,
                                                  const Point& p, const Chart& chart, const Line& L,
                                                  const InfinityProfile& profile, const Tolerances& tol);

/// Pencil sign of the tangent at parameter t through p.
int pencil_sign(const Jet& jet, const Vec3& p, const Line& L, const Line& infinity);

/// Signed count of tangents through p_L.
int sigma_L(const Curve& curve, const Line& L, const Chart& chart, const Tolerances& tol);

SignedCount signed_count_sigma(const std::vector<Bitangent>& bitangents);

/// Everything the identities need, computed once with the genericity gate
/// applied.
struct FeatureSet {
  std::vector<Flex> flexes;
  std::vector<Node> nodes;
  std::vector<Bitangent> bitangents;
  InfinityProfile infinity;

  int i() const { return static_cast<int>(flexes.size()); }
  int n() const { return static_cast<int>(nodes.size()); }
  int a() const { return infinity.a(); }
  SignedCount counts() const { return signed_count_sigma(bitangents); }
};

FeatureSet analyze(const Curve& curve, const Chart& chart, const Tolerances& tol);
FeatureSet analyze(const Curve& curve, const CurveSamples& samples, const Chart& chart, const Tolerances& tol);

}  // namespace curvelab
