#include "plsurf/surface.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <queue>
#include <unordered_map>

#include "plsurf/errors.hpp"

namespace plsurf {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[b] = a;
    return true;
  }
};

// Edge-end node index used by the link walk.
int end_node(EdgeEnd end) { return 2 * end.edge + (end.at_tail ? 0 : 1); }
EdgeEnd node_end(int node) { return {node / 2, node % 2 == 0}; }

EdgeEnd start_end(Side s) { return {s.edge, s.forward}; }
EdgeEnd finish_end(Side s) { return {s.edge, !s.forward}; }

}  // namespace

SurfaceComplex SurfaceComplex::build(const RawComplex& raw, Options options) {
  SurfaceComplex s;
  std::unordered_map<Id, int> vindex, eindex, findex;

  for (Id v : raw.vertices) {
    if (!vindex.emplace(v, static_cast<int>(s.vertex_ids_.size())).second)
      fail(ErrorCode::DuplicateId, "vertex " + std::to_string(v));
    s.vertex_ids_.push_back(v);
  }
  for (const auto& e : raw.edges) {
    if (e.id <= 0) fail(ErrorCode::InvalidInput, "edge ids must be positive, got " + std::to_string(e.id));
    if (!eindex.emplace(e.id, static_cast<int>(s.edges_.size())).second)
      fail(ErrorCode::DuplicateId, "edge " + std::to_string(e.id));
    auto t = vindex.find(e.tail), h = vindex.find(e.head);
    if (t == vindex.end() || h == vindex.end())
      fail(ErrorCode::InvalidInput, "edge " + std::to_string(e.id) + " has an unknown endpoint");
    s.edges_.push_back({e.id, t->second, h->second});
  }
  s.side_offset_.push_back(0);
  for (const auto& f : raw.faces) {
    if (!findex.emplace(f.id, static_cast<int>(s.faces_.size())).second)
      fail(ErrorCode::DuplicateId, "face " + std::to_string(f.id));
    if (f.sides.empty()) fail(ErrorCode::BrokenFaceCycle, "face " + std::to_string(f.id) + " is empty");
    Face face{f.id, {}};
    for (Id se : f.sides) {
      auto it = eindex.find(se < 0 ? -se : se);
      if (se == 0 || it == eindex.end())
        fail(ErrorCode::InvalidInput,
             "face " + std::to_string(f.id) + " uses unknown edge " + std::to_string(se));
      face.sides.push_back({it->second, se > 0});
    }
    s.faces_.push_back(std::move(face));
    s.side_offset_.push_back(s.side_offset_.back() + static_cast<int>(f.sides.size()));
  }

  for (int f = 0; f < s.num_faces(); ++f) {
    int n = s.face_size(f);
    for (int i = 0; i < n; ++i)
      if (s.side_end(f, i) != s.side_start(f, (i + 1) % n))
        fail(ErrorCode::BrokenFaceCycle, "face " + std::to_string(s.faces_[f].id) +
                                             " is not a closed cycle at position " +
                                             std::to_string(i));
  }

  // Edge -> incident sides.
  std::vector<std::vector<SideRef>> per_edge(s.num_edges());
  for (int f = 0; f < s.num_faces(); ++f)
    for (int i = 0; i < s.face_size(f); ++i) per_edge[s.faces_[f].sides[i].edge].push_back({f, i});
  s.edge_side_offset_.push_back(0);
  for (int e = 0; e < s.num_edges(); ++e) {
    if (per_edge[e].empty())
      fail(ErrorCode::DanglingEdge, "edge " + std::to_string(s.edges_[e].id) + " bounds no face");
    if (per_edge[e].size() > 2)
      fail(ErrorCode::NonManifoldEdge, "edge " + std::to_string(s.edges_[e].id) + " bounds " +
                                           std::to_string(per_edge[e].size()) + " face sides");
    for (auto r : per_edge[e]) s.edge_side_list_.push_back(r);
    s.edge_side_offset_.push_back(static_cast<int>(s.edge_side_list_.size()));
  }

  // Vertex links. Corner c = side index of (f, i); it joins the finishing end
  // of side i-1 (slot 0) and the starting end of side i (slot 1).
  int nsides = s.num_sides();
  std::vector<std::array<int, 2>> corner_nodes(nsides);
  std::vector<std::vector<std::pair<int, int>>> node_corners(2 * s.num_edges());
  for (int f = 0; f < s.num_faces(); ++f) {
    int n = s.face_size(f);
    for (int i = 0; i < n; ++i) {
      int c = s.side_index(f, i);
      int a = end_node(finish_end(s.faces_[f].sides[(i + n - 1) % n]));
      int b = end_node(start_end(s.faces_[f].sides[i]));
      corner_nodes[c] = {a, b};
      node_corners[a].push_back({c, 0});
      node_corners[b].push_back({c, 1});
    }
  }
  std::vector<std::vector<int>> vertex_nodes(s.num_vertices());
  for (int e = 0; e < s.num_edges(); ++e) {
    vertex_nodes[s.edges_[e].tail].push_back(end_node({e, true}));
    vertex_nodes[s.edges_[e].head].push_back(end_node({e, false}));
  }
  s.links_.resize(s.num_vertices());
  for (int v = 0; v < s.num_vertices(); ++v) {
    const auto& nodes = vertex_nodes[v];
    if (nodes.empty())
      fail(ErrorCode::InvalidInput, "vertex " + std::to_string(s.vertex_ids_[v]) + " is isolated");
    int start = nodes[0];
    for (int nd : nodes)
      if (node_corners[nd].size() == 1) {
        start = nd;
        break;
      }
    VertexLink& link = s.links_[v];
    link.ends.push_back(node_end(start));
    std::pair<int, int> step = node_corners[start][0];
    while (true) {
      auto [c, slot] = step;
      link.corners.push_back(s.side_ref(c));
      int dest = corner_nodes[c][1 - slot];
      std::pair<int, int> arrived{c, 1 - slot};
      const auto& around = node_corners[dest];
      if (dest == start && around.size() == 2) {
        // Back at the start through its second corner: the link is a circle.
        link.closed = true;
        break;
      }
      link.ends.push_back(node_end(dest));
      if (around.size() == 1) break;
      step = around[0] == arrived ? around[1] : around[0];
      if (link.ends.size() > nodes.size()) break;
    }
    if (link.ends.size() != nodes.size())
      fail(ErrorCode::PinchedVertex,
           "vertex " + std::to_string(s.vertex_ids_[v]) + " has a disconnected link");
  }

  UnionFind uf(s.num_faces());
  int comps = s.num_faces();
  for (int e = 0; e < s.num_edges(); ++e) {
    auto sides = s.edge_sides(e);
    if (sides.size() == 2 && uf.unite(sides[0].face, sides[1].face)) --comps;
  }
  s.multi_component_ = comps > 1;
  if (s.multi_component_ && !options.allow_multi_component)
    fail(ErrorCode::Disconnected, "complex has " + std::to_string(comps) + " components");
  if (s.num_faces() == 0) fail(ErrorCode::InvalidInput, "complex has no faces");
  return s;
}

RawComplex SurfaceComplex::raw() const {
  RawComplex r;
  r.vertices = vertex_ids_;
  for (const auto& e : edges_) r.edges.push_back({e.id, vertex_ids_[e.tail], vertex_ids_[e.head]});
  for (const auto& f : faces_) {
    RawComplex::Face rf{f.id, {}};
    for (auto sd : f.sides) rf.sides.push_back(sd.forward ? edges_[sd.edge].id : -edges_[sd.edge].id);
    r.faces.push_back(std::move(rf));
  }
  return r;
}

std::optional<int> SurfaceComplex::find_vertex(Id id) const {
  auto it = std::find(vertex_ids_.begin(), vertex_ids_.end(), id);
  if (it == vertex_ids_.end()) return std::nullopt;
  return static_cast<int>(it - vertex_ids_.begin());
}

std::optional<int> SurfaceComplex::find_edge(Id id) const {
  for (int e = 0; e < num_edges(); ++e)
    if (edges_[e].id == id) return e;
  return std::nullopt;
}

std::optional<int> SurfaceComplex::find_face(Id id) const {
  for (int f = 0; f < num_faces(); ++f)
    if (faces_[f].id == id) return f;
  return std::nullopt;
}

std::span<const SideRef> SurfaceComplex::edge_sides(int e) const {
  return {edge_side_list_.data() + edge_side_offset_[e],
          static_cast<std::size_t>(edge_side_offset_[e + 1] - edge_side_offset_[e])};
}

bool SurfaceComplex::has_boundary() const {
  for (int e = 0; e < num_edges(); ++e)
    if (is_boundary_edge(e)) return true;
  return false;
}

int SurfaceComplex::side_start(int f, int pos) const {
  Side sd = faces_[f].sides[pos];
  return sd.forward ? edges_[sd.edge].tail : edges_[sd.edge].head;
}

int SurfaceComplex::side_end(int f, int pos) const {
  Side sd = faces_[f].sides[pos];
  return sd.forward ? edges_[sd.edge].head : edges_[sd.edge].tail;
}

SideRef SurfaceComplex::side_ref(int index) const {
  auto it = std::upper_bound(side_offset_.begin(), side_offset_.end(), index);
  int f = static_cast<int>(it - side_offset_.begin()) - 1;
  return {f, index - side_offset_[f]};
}

std::vector<std::vector<Side>> SurfaceComplex::boundary_cycles() const {
  std::vector<std::vector<Side>> cycles;
  std::vector<char> seen(num_edges(), 0);
  for (int e0 = 0; e0 < num_edges(); ++e0) {
    if (!is_boundary_edge(e0) || seen[e0]) continue;
    SideRef r = edge_sides(e0)[0];
    Side cur = faces_[r.face].sides[r.pos];
    std::vector<Side> cycle;
    while (!seen[cur.edge]) {
      seen[cur.edge] = 1;
      cycle.push_back(cur);
      EdgeEnd arrive{cur.edge, !cur.forward};
      int w = cur.forward ? edges_[cur.edge].head : edges_[cur.edge].tail;
      const VertexLink& lk = links_[w];
      EdgeEnd next = lk.ends.front() == arrive ? lk.ends.back() : lk.ends.front();
      cur = {next.edge, next.at_tail};
    }
    cycles.push_back(std::move(cycle));
  }
  return cycles;
}

Id SurfaceComplex::max_vertex_id() const {
  Id m = 0;
  for (Id v : vertex_ids_) m = std::max(m, v);
  return m;
}

Id SurfaceComplex::max_edge_id() const {
  Id m = 0;
  for (const auto& e : edges_) m = std::max(m, e.id);
  return m;
}

Id SurfaceComplex::max_face_id() const {
  Id m = 0;
  for (const auto& f : faces_) m = std::max(m, f.id);
  return m;
}

std::string SurfaceClass::name() const {
  if (is_sphere()) return "sphere";
  if (is_disk()) return "disk";
  if (is_cylinder()) return "cylinder";
  if (is_mobius()) return "Mobius band";
  if (is_projective_plane()) return "projective plane";
  if (orientable && genus_or_crosscaps == 1 && boundary_count == 0) return "torus";
  if (!orientable && genus_or_crosscaps == 2 && boundary_count == 0) return "Klein bottle";
  if (orientable && genus_or_crosscaps == 0 && boundary_count == 3) return "pair of pants";
  std::string s = orientable ? "orientable genus " : "non-orientable genus ";
  s += std::to_string(genus_or_crosscaps);
  if (boundary_count > 0) s += " with " + std::to_string(boundary_count) + " boundary circles";
  return s;
}

SurfaceClass surface_class_from(bool orientable, int euler_char, int boundary_count) {
  SurfaceClass c;
  c.orientable = orientable;
  c.euler_char = euler_char;
  c.boundary_count = boundary_count;
  int d = 2 - euler_char - boundary_count;
  if (d < 0 || (orientable && d % 2 != 0))
    fail(ErrorCode::InvariantViolation, "impossible surface invariants chi=" +
                                            std::to_string(euler_char) +
                                            " b=" + std::to_string(boundary_count));
  c.genus_or_crosscaps = orientable ? d / 2 : d;
  return c;
}

std::optional<std::vector<int>> coherent_orientation(const SurfaceComplex& s) {
  std::vector<int> o(s.num_faces(), 0);
  for (int root = 0; root < s.num_faces(); ++root) {
    if (o[root] != 0) continue;
    o[root] = 1;
    std::queue<int> q;
    q.push(root);
    while (!q.empty()) {
      int f = q.front();
      q.pop();
      for (int i = 0; i < s.face_size(f); ++i) {
        Side sd = s.face(f).sides[i];
        bool dir = sd.forward != (o[f] < 0);
        for (SideRef r : s.edge_sides(sd.edge)) {
          if (r.face == f && r.pos == i) continue;
          bool fwd2 = s.face(r.face).sides[r.pos].forward;
          // The neighbour must traverse the shared edge the other way.
          int want = (fwd2 == !dir) ? 1 : -1;
          if (o[r.face] == 0) {
            o[r.face] = want;
            q.push(r.face);
          } else if (o[r.face] != want) {
            return std::nullopt;
          }
        }
      }
    }
  }
  return o;
}

SurfaceClass classify(const SurfaceComplex& s) {
  if (s.multi_component()) fail(ErrorCode::Disconnected, "cannot classify a disconnected complex");
  bool orient = coherent_orientation(s).has_value();
  int b = static_cast<int>(s.boundary_cycles().size());
  return surface_class_from(orient, s.euler_characteristic(), b);
}

std::vector<FaceSet> connected_components(const SurfaceComplex& s) {
  FaceSet all(s.num_faces());
  std::iota(all.begin(), all.end(), 0);
  return connected_components(s, all);
}

std::vector<FaceSet> connected_components(const SurfaceComplex& s, const FaceSet& faces,
                                          std::span<const int> cut_edges) {
  std::vector<int> slot(s.num_faces(), -1);
  for (std::size_t i = 0; i < faces.size(); ++i) slot[faces[i]] = static_cast<int>(i);
  std::vector<char> cut(s.num_edges(), 0);
  for (int e : cut_edges) cut[e] = 1;
  UnionFind uf(static_cast<int>(faces.size()));
  for (int e = 0; e < s.num_edges(); ++e) {
    auto sides = s.edge_sides(e);
    if (cut[e] || sides.size() != 2) continue;
    int a = slot[sides[0].face], b = slot[sides[1].face];
    if (a >= 0 && b >= 0) uf.unite(a, b);
  }
  std::map<int, FaceSet> groups;
  for (std::size_t i = 0; i < faces.size(); ++i) groups[uf.find(static_cast<int>(i))].push_back(faces[i]);
  std::vector<FaceSet> out;
  for (auto& [_, g] : groups) {
    std::sort(g.begin(), g.end());
    out.push_back(std::move(g));
  }
  std::sort(out.begin(), out.end());
  return out;
}

Extraction extract(const SurfaceComplex& s, const FaceSet& faces, std::span<const int> cut_edges,
                   bool split_pinches) {
  std::vector<int> slot(s.num_faces(), -1);
  std::vector<int> corner_base(faces.size() + 1, 0);
  for (std::size_t i = 0; i < faces.size(); ++i) {
    if (faces[i] < 0 || faces[i] >= s.num_faces() || slot[faces[i]] >= 0)
      fail(ErrorCode::InvalidInput, "bad face subset");
    slot[faces[i]] = static_cast<int>(i);
    corner_base[i + 1] = corner_base[i] + s.face_size(faces[i]);
  }
  std::vector<char> cut(s.num_edges(), 0);
  for (int e : cut_edges) cut[e] = 1;

  auto corner = [&](int f, int pos) {
    int n = s.face_size(f);
    return corner_base[slot[f]] + ((pos % n) + n) % n;
  };
  auto tail_corner = [&](SideRef r) {
    bool fwd = s.face(r.face).sides[r.pos].forward;
    return corner(r.face, fwd ? r.pos : r.pos + 1);
  };
  auto head_corner = [&](SideRef r) {
    bool fwd = s.face(r.face).sides[r.pos].forward;
    return corner(r.face, fwd ? r.pos + 1 : r.pos);
  };

  UnionFind uf(corner_base.back());
  std::vector<std::vector<SideRef>> in_sides(s.num_edges());
  for (int e = 0; e < s.num_edges(); ++e)
    for (SideRef r : s.edge_sides(e))
      if (slot[r.face] >= 0) in_sides[e].push_back(r);
  for (int e = 0; e < s.num_edges(); ++e) {
    if (in_sides[e].size() == 2 && !cut[e]) {
      uf.unite(tail_corner(in_sides[e][0]), tail_corner(in_sides[e][1]));
      uf.unite(head_corner(in_sides[e][0]), head_corner(in_sides[e][1]));
    }
  }

  bool allow_split = split_pinches || !cut_edges.empty();
  Extraction out;
  RawComplex raw;
  std::unordered_map<int, int> class_vertex;  // corner root -> new vertex index
  std::vector<int> seen_count(s.num_vertices(), 0);
  Id next_vid = s.max_vertex_id() + 1;
  auto vertex_of = [&](int c, int orig) {
    int root = uf.find(c);
    auto it = class_vertex.find(root);
    if (it != class_vertex.end()) return it->second;
    int idx = static_cast<int>(out.vertex_origin.size());
    Id id = seen_count[orig]++ == 0 ? s.vertex_id(orig) : next_vid++;
    if (seen_count[orig] > 1 && !allow_split)
      fail(ErrorCode::PinchedVertex, "subset is pinched at vertex " + std::to_string(s.vertex_id(orig)));
    class_vertex.emplace(root, idx);
    out.vertex_origin.push_back(orig);
    raw.vertices.push_back(id);
    return idx;
  };
  // Visit corners face by face so vertex numbering is deterministic.
  for (int f : faces)
    for (int i = 0; i < s.face_size(f); ++i) vertex_of(corner(f, i), s.side_start(f, i));

  // side (global index in s) -> new edge index
  std::unordered_map<int, int> side_edge;
  Id next_eid = s.max_edge_id() + 1;
  for (int e = 0; e < s.num_edges(); ++e) {
    const auto& sides = in_sides[e];
    if (sides.empty()) continue;
    bool shared = sides.size() == 2 && !cut[e];
    for (std::size_t k = 0; k < sides.size(); ++k) {
      if (k == 1 && shared) {
        side_edge[s.side_index(sides[1].face, sides[1].pos)] = side_edge[s.side_index(sides[0].face, sides[0].pos)];
        continue;
      }
      int idx = static_cast<int>(out.edge_origin.size());
      Id id = k == 0 ? s.edge(e).id : next_eid++;
      int t = class_vertex.at(uf.find(tail_corner(sides[k])));
      int h = class_vertex.at(uf.find(head_corner(sides[k])));
      raw.edges.push_back({id, raw.vertices[t], raw.vertices[h]});
      out.edge_origin.push_back(e);
      side_edge[s.side_index(sides[k].face, sides[k].pos)] = idx;
    }
  }
  for (int f : faces) {
    RawComplex::Face rf{s.face(f).id, {}};
    for (int i = 0; i < s.face_size(f); ++i) {
      Side sd = s.face(f).sides[i];
      Id id = raw.edges[side_edge.at(s.side_index(f, i))].id;
      rf.sides.push_back(sd.forward ? id : -id);
    }
    raw.faces.push_back(std::move(rf));
    out.face_origin.push_back(f);
  }
  out.complex = SurfaceComplex::build(raw, {.allow_multi_component = true});
  return out;
}

Subsurface make_subsurface(const SurfaceComplex& s, FaceSet faces) {
  std::sort(faces.begin(), faces.end());
  faces.erase(std::unique(faces.begin(), faces.end()), faces.end());
  Subsurface sub;
  sub.faces = faces;
  if (faces.empty()) return sub;
  Extraction ex = extract(s, faces);
  const SurfaceComplex& c = ex.complex;
  sub.euler_char = c.euler_characteristic();
  sub.num_components = static_cast<int>(connected_components(c).size());
  sub.orientable = coherent_orientation(c).has_value();
  for (const auto& cyc : c.boundary_cycles()) {
    std::vector<Side> mapped;
    for (Side sd : cyc) mapped.push_back({ex.edge_origin[sd.edge], sd.forward});
    sub.boundary.push_back(std::move(mapped));
  }
  if (sub.num_components == 1)
    sub.cls = surface_class_from(sub.orientable, sub.euler_char, static_cast<int>(sub.boundary.size()));
  return sub;
}

std::vector<Subsurface> complement_closure(const SurfaceComplex& s, const Subsurface& n) {
  std::vector<char> in(s.num_faces(), 0);
  for (int f : n.faces) in[f] = 1;
  FaceSet rest;
  for (int f = 0; f < s.num_faces(); ++f)
    if (!in[f]) rest.push_back(f);
  if (rest.empty()) fail(ErrorCode::EmptyComplement, "subsurface covers the whole surface");
  std::vector<Subsurface> out;
  for (auto& comp : connected_components(s, rest)) out.push_back(make_subsurface(s, std::move(comp)));
  return out;
}

SurfaceComplex barycentric_subdivision(const SurfaceComplex& s) {
  int V = s.num_vertices(), E = s.num_edges(), F = s.num_faces();
  RawComplex raw;
  for (int i = 0; i < V + E + F; ++i) raw.vertices.push_back(i + 1);
  auto vid = [&](int v) -> Id { return v + 1; };
  auto mid = [&](int e) -> Id { return V + e + 1; };
  auto ctr = [&](int f) -> Id { return V + E + f + 1; };
  Id next = 1;
  // Half edges: 2e is tail -> midpoint, 2e+1 is midpoint -> head.
  std::vector<Id> half(2 * E);
  for (int e = 0; e < E; ++e) {
    half[2 * e] = next;
    raw.edges.push_back({next++, vid(s.edge(e).tail), mid(e)});
    half[2 * e + 1] = next;
    raw.edges.push_back({next++, mid(e), vid(s.edge(e).head)});
  }
  std::vector<Id> spoke_v(s.num_sides()), spoke_m(s.num_sides());
  for (int f = 0; f < F; ++f)
    for (int i = 0; i < s.face_size(f); ++i) {
      int k = s.side_index(f, i);
      spoke_v[k] = next;
      raw.edges.push_back({next++, ctr(f), vid(s.side_start(f, i))});
      spoke_m[k] = next;
      raw.edges.push_back({next++, ctr(f), mid(s.face(f).sides[i].edge)});
    }
  Id fid = 1;
  for (int f = 0; f < F; ++f) {
    int n = s.face_size(f);
    for (int i = 0; i < n; ++i) {
      Side sd = s.face(f).sides[i];
      int k = s.side_index(f, i), k1 = s.side_index(f, (i + 1) % n);
      Id to_mid = sd.forward ? half[2 * sd.edge] : -half[2 * sd.edge + 1];
      Id from_mid = sd.forward ? half[2 * sd.edge + 1] : -half[2 * sd.edge];
      raw.faces.push_back({fid++, {spoke_v[k], to_mid, -spoke_m[k]}});
      raw.faces.push_back({fid++, {spoke_m[k], from_mid, -spoke_v[k1]}});
    }
  }
  return SurfaceComplex::build(raw, {.allow_multi_component = s.multi_component()});
}

SurfaceComplex from_polygons(int num_vertices, const std::vector<std::vector<int>>& polygons,
                             SurfaceComplex::Options options) {
  RawComplex raw;
  for (int v = 0; v < num_vertices; ++v) raw.vertices.push_back(v + 1);
  std::map<std::pair<int, int>, Id> edge_of;
  Id fid = 1;
  for (const auto& poly : polygons) {
    RawComplex::Face rf{fid++, {}};
    int n = static_cast<int>(poly.size());
    for (int i = 0; i < n; ++i) {
      int a = poly[i], b = poly[(i + 1) % n];
      auto key = std::minmax(a, b);
      auto it = edge_of.find(key);
      if (it == edge_of.end()) {
        Id id = static_cast<Id>(raw.edges.size()) + 1;
        raw.edges.push_back({id, key.first + 1, key.second + 1});
        it = edge_of.emplace(key, id).first;
      }
      rf.sides.push_back(a < b ? it->second : -it->second);
    }
    raw.faces.push_back(std::move(rf));
  }
  return SurfaceComplex::build(raw, options);
}

SurfaceComplex from_word(const std::vector<int>& word) {
  int n = static_cast<int>(word.size());
  UnionFind uf(n);
  std::map<int, int> first;
  auto tail_c = [&](int i) { return word[i] > 0 ? i : (i + 1) % n; };
  auto head_c = [&](int i) { return word[i] > 0 ? (i + 1) % n : i; };
  for (int i = 0; i < n; ++i) {
    int e = std::abs(word[i]);
    auto [it, fresh] = first.emplace(e, i);
    if (!fresh) {
      uf.unite(tail_c(it->second), tail_c(i));
      uf.unite(head_c(it->second), head_c(i));
    }
  }
  RawComplex raw;
  std::map<int, Id> vid;
  for (int i = 0; i < n; ++i) {
    int r = uf.find(i);
    if (!vid.count(r)) {
      vid[r] = static_cast<Id>(vid.size()) + 1;
      raw.vertices.push_back(vid[r]);
    }
  }
  for (auto [e, i] : first) raw.edges.push_back({e, vid[uf.find(tail_c(i))], vid[uf.find(head_c(i))]});
  RawComplex::Face f{1, {}};
  for (int w : word) f.sides.push_back(w);
  raw.faces.push_back(std::move(f));
  return SurfaceComplex::build(raw);
}

}  // namespace plsurf
