#pragma once

#include <optional>
#include <string>
#include <vector>

#include "plsurf/rational.hpp"
#include "plsurf/surface.hpp"

namespace plsurf {

enum class Target { Line, Circle };

/// Vertex values extended linearly over edges. For circle targets values
/// live in [0, 1) and every edge carries a lifted increment in (-1/2, 1/2).
class PLFunction {
 public:
  PLFunction() = default;

  /// Line-valued function from dense vertex values.
  static PLFunction line(const SurfaceComplex& s, std::vector<Rational> values);
  /// Circle-valued function; values are reduced mod 1 and edge increments are
  /// taken as the representative in (-1/2, 1/2). An increment of exactly 1/2
  /// is ambiguous and rejected with InvalidInput.
  static PLFunction circle(const SurfaceComplex& s, std::vector<Rational> values);
  /// Circle-valued function with explicit increments (used for refinements).
  static PLFunction circle_with_deltas(std::vector<Rational> values, std::vector<Rational> deltas);

  Target target() const { return target_; }
  bool circle_valued() const { return target_ == Target::Circle; }
  const Rational& value(int v) const { return values_[v]; }
  const std::vector<Rational>& values() const { return values_; }
  /// f(head) - f(tail), lifted for circle targets.
  const Rational& delta(int e) const { return deltas_[e]; }
  /// Increment from the vertex of `end` to the opposite vertex.
  Rational along(EdgeEnd end) const { return end.at_tail ? deltas_[end.edge] : Rational(-deltas_[end.edge]); }
  /// Normalizes a level for this target (mod 1 on the circle).
  Rational normalize(const Rational& c) const { return circle_valued() ? mod_one(c) : c; }

 private:
  Target target_ = Target::Line;
  std::vector<Rational> values_;
  std::vector<Rational> deltas_;
};

/// Lifted corner values of a face, starting from the value of corner 0.
std::vector<Rational> face_lift(const SurfaceComplex& s, const PLFunction& f, int face);

enum class VertexKind { Regular, Min, Max, Saddle };

struct VertexType {
  VertexKind kind = VertexKind::Regular;
  int multiplicity = 0;  // saddles only
  bool critical() const { return kind != VertexKind::Regular; }
  bool operator==(const VertexType&) const = default;
};

std::string to_string(VertexType t);

struct CriticalVertex {
  int vertex;
  VertexType type;
};

struct AxiomReport {
  std::vector<std::vector<Side>> boundary_circles;
  std::vector<Rational> boundary_levels;  // one per circle
  std::vector<CriticalVertex> critical;
  int interior_vertices = 0;
};

/// Checks boundary constancy, interior genericity, monotone faces, circle
/// winding constraints and that no boundary vertex is critical. Throws
/// BoundaryNotLevel, DegenerateTie, CriticalOnBoundary, NonMonotoneFace or
/// InvalidInput.
AxiomReport validate_axioms(const SurfaceComplex& s, const PLFunction& f);

/// Classification by sign changes around the link. Throws BoundaryVertex for
/// boundary vertices and DegenerateTie when a neighbour has the same value.
VertexType classify_vertex(const SurfaceComplex& s, const PLFunction& f, int v);

/// Special value: a critical value or the value on a boundary circle.
struct SpecialLevel {
  Rational value;
  std::vector<int> critical_vertices;
  std::vector<int> boundary_circles;  // indices into AxiomReport::boundary_circles
};

std::vector<SpecialLevel> critical_levels(const SurfaceComplex& s, const PLFunction& f);
std::vector<SpecialLevel> critical_levels(const AxiomReport& report, const PLFunction& f);

/// Cell of the original complex whose relative interior contains a cell of a
/// refinement: dim 0 = vertex, 1 = edge, 2 = face.
struct CellOrigin {
  int dim;
  int index;
  bool operator==(const CellOrigin&) const = default;
};

/// Complex subdivided along level sets. Every original edge crossed by a
/// level is split, every face crossed by a level is cut by a chord.
struct Refinement {
  SurfaceComplex complex;
  PLFunction function;
  std::vector<CellOrigin> vertex_origin;
  std::vector<CellOrigin> edge_origin;
  std::vector<int> face_origin;
  std::vector<Rational> levels;  // normalized, sorted
};

Refinement refine(const SurfaceComplex& s, const PLFunction& f, std::vector<Rational> levels);

/// Refinement at a single regular level. Throws CriticalLevel when a critical
/// vertex has value c.
Refinement slice(const SurfaceComplex& s, const PLFunction& f, const Rational& c);

/// The part of f^{-1}(c) inside a refinement that contains c.
struct LevelGraph {
  Rational level;
  std::vector<int> vertices;             // refined vertex indices
  std::vector<int> edges;                // refined edge indices
  std::vector<std::vector<int>> vertex_components;
  std::vector<std::vector<int>> edge_components;  // aligned with vertex_components
};

LevelGraph level_graph(const Refinement& r, const Rational& c);

struct Leaf {
  enum class Kind { Point, Arc, Circle };
  Kind kind;
  std::vector<int> vertices;  // refined; for arcs, in walking order including end points
  std::vector<int> edges;     // refined; in walking order
};

struct CriticalComponent {
  Rational level;
  std::vector<int> vertices;           // refined indices
  std::vector<int> edges;              // refined indices
  std::vector<int> critical_vertices;  // original indices
  std::vector<Leaf> leaves;
};

/// Critical components inside a refinement that contains every critical level.
std::vector<CriticalComponent> critical_components(const SurfaceComplex& s, const PLFunction& f,
                                                   const Refinement& r,
                                                   const std::vector<SpecialLevel>& levels);

struct LevelSets {
  Refinement refinement;
  std::vector<SpecialLevel> levels;
  std::vector<CriticalComponent> components;
};

LevelSets critical_components(const SurfaceComplex& s, const PLFunction& f);

}  // namespace plsurf
