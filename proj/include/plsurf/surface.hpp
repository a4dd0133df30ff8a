#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace plsurf {

using Id = std::int64_t;

/// Cell lists as they appear in an instance file. Face sides are signed edge
/// ids: +e traverses edge e from tail to head, -e from head to tail.
struct RawComplex {
  struct Edge {
    Id id;
    Id tail;
    Id head;
  };
  struct Face {
    Id id;
    std::vector<Id> sides;
  };
  std::vector<Id> vertices;
  std::vector<Edge> edges;
  std::vector<Face> faces;
};

struct Side {
  int edge;
  bool forward;
  bool operator==(const Side&) const = default;
};

struct SideRef {
  int face;
  int pos;
  bool operator==(const SideRef&) const = default;
};

/// One end of an edge. A loop contributes two ends at the same vertex.
struct EdgeEnd {
  int edge;
  bool at_tail;
  bool operator==(const EdgeEnd&) const = default;
};

/// Cyclic (interior vertex) or linear (boundary vertex) order of edge ends
/// around a vertex. corners[i] sits between ends[i] and ends[i + 1]; a closed
/// link has as many corners as ends, an open one has one fewer.
struct VertexLink {
  std::vector<EdgeEnd> ends;
  std::vector<SideRef> corners;
  bool closed = false;
};

/// Compact surface as a polygonal cell complex. Vertices, edges and faces are
/// addressed by dense indices; the external ids of the instance format are
/// kept alongside. Immutable after build().
class SurfaceComplex {
 public:
  struct Edge {
    Id id;
    int tail;
    int head;
  };
  struct Face {
    Id id;
    std::vector<Side> sides;
  };
  struct Options {
    bool allow_multi_component = false;
  };

  SurfaceComplex() = default;

  /// Validates ids, face cycles, edge multiplicities and vertex links.
  /// Throws Error with DuplicateId, BrokenFaceCycle, DanglingEdge,
  /// NonManifoldEdge, PinchedVertex or Disconnected.
  static SurfaceComplex build(const RawComplex& raw, Options options);
  static SurfaceComplex build(const RawComplex& raw) { return build(raw, Options{}); }

  RawComplex raw() const;

  int num_vertices() const { return static_cast<int>(vertex_ids_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  int num_faces() const { return static_cast<int>(faces_.size()); }
  int num_sides() const { return static_cast<int>(side_offset_.back()); }

  Id vertex_id(int v) const { return vertex_ids_[v]; }
  const Edge& edge(int e) const { return edges_[e]; }
  const Face& face(int f) const { return faces_[f]; }
  int face_size(int f) const { return static_cast<int>(faces_[f].sides.size()); }

  std::optional<int> find_vertex(Id id) const;
  std::optional<int> find_edge(Id id) const;
  std::optional<int> find_face(Id id) const;

  std::span<const SideRef> edge_sides(int e) const;
  bool is_boundary_edge(int e) const { return edge_sides(e).size() == 1; }
  bool is_boundary_vertex(int v) const { return !links_[v].closed; }
  bool has_boundary() const;

  /// Vertex where side `pos` of face `f` starts (equivalently the corner
  /// between sides pos-1 and pos).
  int side_start(int f, int pos) const;
  int side_end(int f, int pos) const;
  /// Global index of side (f, pos) in [0, num_sides()).
  int side_index(int f, int pos) const { return side_offset_[f] + pos; }
  SideRef side_ref(int index) const;

  const VertexLink& link(int v) const { return links_[v]; }
  /// Vertex at the far end of an edge end.
  int opposite(EdgeEnd end) const {
    return end.at_tail ? edges_[end.edge].head : edges_[end.edge].tail;
  }

  /// Boundary circles as closed side sequences in walking order; a side is
  /// forward when the walk runs from the edge's tail to its head. The first
  /// side of each circle is walked the way its face traverses it.
  std::vector<std::vector<Side>> boundary_cycles() const;

  int euler_characteristic() const { return num_vertices() - num_edges() + num_faces(); }

  bool multi_component() const { return multi_component_; }

  Id max_vertex_id() const;
  Id max_edge_id() const;
  Id max_face_id() const;

 private:
  std::vector<Id> vertex_ids_;
  std::vector<Edge> edges_;
  std::vector<Face> faces_;
  std::vector<int> side_offset_;
  std::vector<int> edge_side_offset_;
  std::vector<SideRef> edge_side_list_;
  std::vector<VertexLink> links_;
  bool multi_component_ = false;
};

struct SurfaceClass {
  bool orientable = true;
  int genus_or_crosscaps = 0;
  int boundary_count = 0;
  int euler_char = 2;

  bool is_disk() const { return orientable && genus_or_crosscaps == 0 && boundary_count == 1; }
  bool is_cylinder() const { return orientable && genus_or_crosscaps == 0 && boundary_count == 2; }
  bool is_mobius() const { return !orientable && genus_or_crosscaps == 1 && boundary_count == 1; }
  bool is_sphere() const { return orientable && genus_or_crosscaps == 0 && boundary_count == 0; }
  bool is_projective_plane() const {
    return !orientable && genus_or_crosscaps == 1 && boundary_count == 0;
  }
  /// Sphere and projective plane are treated specially by the atlas layer.
  bool is_exceptional() const { return is_sphere() || is_projective_plane(); }
  std::string name() const;
  bool operator==(const SurfaceClass&) const = default;
};

/// Builds the class from its numerical invariants.
SurfaceClass surface_class_from(bool orientable, int euler_char, int boundary_count);

/// Face orientation signs (+1/-1) making all faces coherent, or nullopt when
/// the complex is non-orientable. Components are oriented independently.
std::optional<std::vector<int>> coherent_orientation(const SurfaceComplex& s);

/// Throws Disconnected when the complex has more than one component.
SurfaceClass classify(const SurfaceComplex& s);

using FaceSet = std::vector<int>;

/// Face components of the whole complex (dual-graph connectivity).
std::vector<FaceSet> connected_components(const SurfaceComplex& s);
/// Face components of a face subset; faces are joined across edges whose two
/// sides both lie in the subset and which are not listed in `cut_edges`.
std::vector<FaceSet> connected_components(const SurfaceComplex& s, const FaceSet& faces,
                                          std::span<const int> cut_edges = {});

/// Standalone complex induced by a face subset. With cut edges, or with
/// split_pinches set, vertices are split into corner classes; otherwise a
/// vertex whose restricted link is not a single arc/circle is rejected with
/// PinchedVertex.
struct Extraction {
  SurfaceComplex complex;
  std::vector<int> vertex_origin;
  std::vector<int> edge_origin;
  std::vector<int> face_origin;
};
Extraction extract(const SurfaceComplex& s, const FaceSet& faces,
                   std::span<const int> cut_edges = {}, bool split_pinches = false);

/// Face subset of a parent complex that is itself a surface.
struct Subsurface {
  FaceSet faces;
  std::vector<std::vector<Side>> boundary;  // in parent edge indices
  int euler_char = 0;
  int num_components = 0;
  bool orientable = true;
  SurfaceClass cls;  // meaningful when num_components == 1

  bool connected() const { return num_components == 1; }
  bool is_disk() const { return connected() && cls.is_disk(); }
};

/// Validates and describes a face subset. Pinched subsets are rejected.
Subsurface make_subsurface(const SurfaceComplex& s, FaceSet faces);

/// Components of the closure of the complement. Throws EmptyComplement when
/// n covers every face.
std::vector<Subsurface> complement_closure(const SurfaceComplex& s, const Subsurface& n);

/// Barycentric subdivision: one vertex per cell, one triangle per flag.
SurfaceComplex barycentric_subdivision(const SurfaceComplex& s);

/// Builds a complex from vertex cycles, creating one edge per unordered
/// vertex pair. Polygons must not repeat an edge within the complex more than
/// twice.
SurfaceComplex from_polygons(int num_vertices, const std::vector<std::vector<int>>& polygons,
                             SurfaceComplex::Options options = {});

/// Single-polygon surface from an edge word: letter k > 0 is edge k forward,
/// -k is edge k backward. Vertices come from the induced identifications.
SurfaceComplex from_word(const std::vector<int>& word);

}  // namespace plsurf
