#pragma once

#include <optional>
#include <string>
#include <vector>

#include "plsurf/atlas.hpp"
#include "plsurf/cell_automorphism.hpp"

namespace plsurf {

/// A component B of the closure of M \ M_neg.
struct Piece {
  Subsurface region;  // refined faces
  SurfaceClass cls;
  std::vector<int> critical_vertices;  // original indices
  Extraction extraction;               // B as a standalone complex
  PLFunction function;                 // f restricted to B
  bool boundary_in_mneg = false;       // every boundary edge of B is shared with M_neg
  bool boundary_in_mneg_or_dm = false; // ... or lies on the boundary of M
  bool has_extremum = false;
};

struct DecompositionReport {
  Atlas atlas;
  std::vector<int> negative_components;    // indices into atlas.components
  FaceSet r_neg;                           // union of their atoms
  std::vector<Subsurface> absorbed;        // critical-point-free cylinders of the complement
  Subsurface m_neg;
  std::vector<Subsurface> m_neg_components;
  std::vector<Piece> pieces;
};

/// Components whose canonical neighbourhood has negative Euler
/// characteristic. Throws ChiNotNegative unless chi(M) < 0.
std::vector<int> negative_components(const Atlas& a);

/// Builds M_neg and checks its invariants; a failed check throws
/// InvariantViolation. On a surface with boundary a piece may meet the
/// boundary of M; only closed surfaces demand that its boundary lie in M_neg.
DecompositionReport build_Mneg(const SurfaceComplex& s, const PLFunction& f);
DecompositionReport build_Mneg(Atlas a);

struct Factor {
  int piece;
  std::string surface;
  int minima = 0;
  int maxima = 0;
  int saddles = 0;  // counted with multiplicity
};

/// One factor per piece; an empty list is the trivial product.
struct Factorization {
  std::vector<Factor> factors;
  bool trivial() const { return factors.empty(); }
};

Factorization orbit_factorization(const DecompositionReport& report);

/// Undirected Graphviz graph: one node per component of M_neg and per piece,
/// one edge per shared boundary circle.
std::string to_dot(const DecompositionReport& report);

/// How a level-set leaf crosses a cell of the original complex.
struct Passage {
  enum class Kind { Vertex, EdgePoint, Chord, EdgeSegment };
  Kind kind;
  int cell;
  bool operator==(const Passage&) const = default;
};

struct LeafRecord {
  int component = -1;  // negative component whose atom holds the leaf
  Rational level;
  bool closed = false;
  std::vector<Passage> passages;
};

struct LeafVerdict {
  bool passed = true;
  int leaves_checked = 0;
  std::optional<LeafRecord> witness;
  std::string reason;
};

/// Lifts an automorphism of s that preserves f to a refinement of s.
CellularAutomorphism lift_to_refinement(const SurfaceComplex& s, const Refinement& r,
                                        const CellularAutomorphism& h);

/// For an f-preserving h that is Delta-trivial on every negative canonical
/// neighbourhood, checks that each leaf of the atoms is mapped to itself with
/// its orientation. Throws NotFPreserving, NotDeltaTrivial, ChiNotNegative.
LeafVerdict leaf_invariance_check(const SurfaceComplex& s, const PLFunction& f, const CellularAutomorphism& h);

std::string describe(const Passage& p, const SurfaceComplex& s);

}  // namespace plsurf
