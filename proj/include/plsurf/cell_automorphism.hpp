#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "plsurf/atlas.hpp"
#include "plsurf/rational.hpp"
#include "plsurf/surface.hpp"

namespace plsurf {

/// Cell partition of a compact surface N. The shape is a polygonal complex;
/// faces flagged as annuli stand for half-open cylinders whose open end is a
/// boundary circle of N (the face boundary is the closed end). Without
/// annuli the partition is just the cells of the shape.
///
/// Cells are oriented by the shape: edges run tail to head, faces follow
/// their side cycle.
struct CellPartition {
  SurfaceComplex shape;
  std::vector<char> annulus;  // per face

  int num_annuli() const;
  /// chi(N): annuli contribute nothing.
  int euler_char() const;
  /// Boundary circles of N: one per annulus plus those of the shape.
  int boundary_count() const;
  bool closed() const { return boundary_count() == 0; }
  bool orientable() const;
};

CellPartition partition_of(const SurfaceComplex& s);

/// Flags are (face, side, end) triples encoded as 2 * side_index + end, where
/// end 0 is the start of the side in face order. s0 changes the vertex, s1
/// the edge, s2 the face; s2 fixes flags on boundary edges.
struct FlagSystem {
  std::vector<int> s0, s1, s2;
  std::vector<int> vertex, edge, face;
  std::vector<char> at_tail;  // the flag's vertex is the tail end of its edge

  int size() const { return static_cast<int>(s0.size()); }
};

FlagSystem flags_of(const SurfaceComplex& s);

/// Cellular homeomorphism as a permutation of cells. Signs compare the
/// image orientation with the orientation of the image cell; vertex signs
/// are always +1 and not stored. The flag permutation is the underlying
/// combinatorial map automorphism.
struct CellularAutomorphism {
  std::vector<int> vertex, edge, face;
  std::vector<int> edge_sign, face_sign;
  std::vector<int> flag;
};

struct CellMaps {
  std::vector<int> vertex, edge, face;
  std::vector<int> edge_sign, face_sign;
};

CellularAutomorphism identity_automorphism(const CellPartition& p);

/// Throws NotCellular unless the permutation commutes with s0, s1, s2 and
/// maps annuli to annuli.
CellularAutomorphism from_flag_map(const CellPartition& p, std::vector<int> flag);

/// Recovers the flag permutation from cell maps. When a face admits several
/// alignments with its image (repeated side words) the first is used.
/// Throws NotCellular when the maps are inconsistent with incidence.
CellularAutomorphism from_cell_maps(const CellPartition& p, const CellMaps& maps);

/// All automorphisms of the shape that map annuli to annuli, identity first.
std::vector<CellularAutomorphism> enumerate_automorphisms(const CellPartition& p);

CellularAutomorphism compose(const CellularAutomorphism& a, const CellularAutomorphism& b);

/// Every cell is invariant with preserved orientation.
bool is_delta_trivial(const CellularAutomorphism& h);

/// nullopt on non-orientable shapes.
std::optional<bool> preserves_orientation(const CellPartition& p, const CellularAutomorphism& h);

/// Signed permutation matrix, column j has the entry sign[j] in row image[j].
struct SignedPermutation {
  std::vector<int> image;
  std::vector<int> sign;

  int size() const { return static_cast<int>(image.size()); }
  int trace() const;
  std::vector<std::vector<int>> dense() const;
};

/// Sparse integer matrix stored by columns.
struct SparseMatrix {
  int rows = 0;
  std::vector<std::vector<std::pair<int, int>>> cols;  // (row, value)

  int num_cols() const { return static_cast<int>(cols.size()); }
  std::vector<std::vector<int>> dense() const;
};

/// Chains on the non-annulus cells. chain_face[j] is the face of chain
/// 2-cell j.
struct ChainComplex {
  std::array<int, 3> dims{};
  SparseMatrix d1;  // C1 -> C0
  SparseMatrix d2;  // C2 -> C1
  std::vector<int> chain_face;
  std::vector<int> face_chain;  // -1 for annuli
};

/// Throws InconsistentIncidence unless d1 d2 = 0.
ChainComplex chain_complex(const CellPartition& p);

struct ChainMap {
  std::array<SignedPermutation, 3> h;
};

/// Throws NotChainMap unless h commutes with the boundary maps.
ChainMap induced_chain_map(const CellPartition& p, const CellularAutomorphism& h);

int lefschetz_chain(const ChainMap& cm);

/// Rational homology of the chain complex and the induced action.
struct HomologyAction {
  std::array<int, 3> betti{};
  std::array<Rational, 3> trace{};
  bool identity = true;  // the induced maps are identities
};

std::array<int, 3> betti_numbers(const CellPartition& p);
HomologyAction homology_action(const CellPartition& p, const ChainMap& cm);
/// Alternating trace sum on rational homology; integral for automorphisms.
int lefschetz_homology(const CellPartition& p, const ChainMap& cm);

struct InvariantCells {
  std::array<int, 3> plus{};   // invariant cells with preserved orientation
  std::array<int, 3> minus{};  // invariant cells with reversed orientation
  struct Entry {
    int dim;
    int cell;
    int sign;
  };
  std::vector<Entry> cells;

  int count(int dim) const { return plus[dim] + minus[dim]; }
  int total() const { return count(0) + count(1) + count(2); }
};

/// Invariant chain cells (annuli are excluded).
InvariantCells invariant_cells(const CellPartition& p, const CellularAutomorphism& h);

struct KLhVerdict {
  int invariant_total = 0;
  int lefschetz = 0;
  std::array<int, 3> counts{};
  std::array<int, 3> traces{};
  bool per_dimension = false;  // c_i = (-1)^i tr(h_i)
  bool sign_pattern = false;   // no reversed 0/2-cells, no preserved 1-cells
  bool nonnegative = false;
  bool holds = false;
};

/// Invariant cells against the Lefschetz number for an orientation
/// preserving, non-trivial automorphism of a closed orientable partition.
/// Throws PreconditionFailed otherwise.
KLhVerdict check_kLh(const CellPartition& p, const CellularAutomorphism& h);

struct PropagationCertificate {
  int start_flag = -1;
  int flags_visited = 0;
  std::vector<std::pair<int, int>> cells;  // (dim, index) in discovery order
};

/// Starting from a fixed edge whose adjacent faces are preserved, shows
/// that h fixes every flag. Throws HypothesisFails when the hypothesis does
/// not hold or propagation meets a moved flag.
PropagationCertificate propagate_triviality(const CellPartition& p, const CellularAutomorphism& h,
                                            int edge);

/// Orientation double cover. Cover face 2f + s is face f with sheet s; sheet
/// 1 carries the reversed orientation. Annuli lift to annuli.
struct DoubleCover {
  CellPartition cover;
  std::vector<int> vertex_base, edge_base, face_base;
  std::vector<int> flag_of;  // base flag x, sheet s -> cover flag at 2x + s
};

/// Throws AlreadyOrientable for orientable input and PreconditionFailed when
/// the shape has boundary edges.
DoubleCover orientation_double_cover(const CellPartition& p);

/// The lift that carries local orientations along: (x, s) goes to
/// (h x, s xor [h reverses the face of x]).
CellularAutomorphism lift(const CellPartition& base, const DoubleCover& dc, const CellularAutomorphism& h);

/// Turns every annulus into a disk around a marked point. Automorphisms of
/// the input act unchanged on the output. Throws BoundaryNotInAnnuli when the
/// shape itself has boundary.
struct ShrunkPartition {
  CellPartition closed;
  int boundary_count = 0;
  std::vector<int> marked_faces;
};

ShrunkPartition shrink_boundary(const CellPartition& p);

struct TrivialityVerdict {
  enum class Outcome { DeltaTrivial, ExactlyChiInvariant };
  Outcome outcome = Outcome::DeltaTrivial;
  int chi = 0;
  int boundary_count = 0;
  bool double_cover = false;
  int closed_chi = 0;          // chi of the closed orientable surface used for counting
  int closed_lefschetz = 0;
  int annulus_lower_bound = 0; // invariant cells forced by fixed annuli
  int invariant_cells = 0;     // of h on P
  std::vector<std::string> assumed;
  std::vector<std::string> verified;
};

/// Under the caller's assumption that h is isotopic to the identity, checks
/// the necessary conditions (trivial homology action, annuli fixed with
/// orientation) and derives Delta-triviality (chi < 0) or the exact number
/// of invariant cells (closed orientable, chi >= 0). Throws
/// PreconditionFailed without the assumption or outside these cases, and
/// NecessaryConditionFailed when a necessary condition fails.
TrivialityVerdict triviality_theorem(const CellPartition& p, const CellularAutomorphism& h,
                                     bool assumed_isotopic);

/// Partition of a canonical neighbourhood: critical vertices of K, arcs of
/// K, and the components of the neighbourhood minus K (disks, or annuli when
/// they reach its boundary).
struct NbhdPartition {
  int component = -1;
  CellPartition partition;
  std::vector<int> vertex_origin;            // original vertex of each 0-cell
  std::vector<std::vector<int>> arc_edges;   // refined edges of each 1-cell, in order
  std::vector<FaceSet> cell_faces;           // refined faces of each 2-cell
  /// Refined flags matching the two ends of each partition side (indexed by
  /// side index of the partition shape).
  std::vector<std::array<int, 2>> side_flags;
};

/// Throws PreconditionFailed when K is a single point.
NbhdPartition nbhd_partition(const Atlas& a, int component);

std::string to_string(TrivialityVerdict::Outcome o);

}  // namespace plsurf
