#include "plsurf/decomposition.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

#include "plsurf/errors.hpp"

namespace plsurf {

namespace {

std::vector<char> critical_mask(const Atlas& a) {
  std::vector<char> crit(a.surface.num_vertices(), 0);
  for (const auto& cv : a.axioms.critical) crit[cv.vertex] = 1;
  return crit;
}

// Original critical vertices among the corners of a face set.
std::vector<int> criticals_in(const Atlas& a, const FaceSet& faces, const std::vector<char>& crit) {
  const auto& rc = a.refined.complex;
  std::set<int> out;
  for (int f : faces)
    for (int i = 0; i < rc.face_size(f); ++i) {
      const auto& o = a.refined.vertex_origin[rc.side_start(f, i)];
      if (o.dim == 0 && crit[o.index]) out.insert(o.index);
    }
  return {out.begin(), out.end()};
}

const VertexType& type_of(const Atlas& a, int v) {
  for (const auto& cv : a.axioms.critical)
    if (cv.vertex == v) return cv.type;
  fail(ErrorCode::InvariantViolation, "vertex is not critical");
}

PLFunction restrict_function(const Atlas& a, const Extraction& ex) {
  const auto& rf = a.refined.function;
  std::vector<Rational> values;
  for (int v : ex.vertex_origin) values.push_back(rf.value(v));
  if (!rf.circle_valued()) return PLFunction::line(ex.complex, std::move(values));
  std::vector<Rational> deltas;
  for (int e = 0; e < ex.complex.num_edges(); ++e) {
    int pe = ex.edge_origin[e];
    Rational d = rf.delta(pe);
    // Extraction keeps edge directions.
    if (ex.vertex_origin[ex.complex.edge(e).tail] != a.refined.complex.edge(pe).tail) d = -d;
    deltas.push_back(d);
  }
  return PLFunction::circle_with_deltas(std::move(values), std::move(deltas));
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

bool face_aligns(const SurfaceComplex& s, int f, int g, const CellMaps& m, int sign) {
  int k = s.face_size(f);
  if (s.face_size(g) != k) return false;
  const auto& fs = s.face(f).sides;
  const auto& gs = s.face(g).sides;
  for (int t = 0; t < k; ++t) {
    bool ok = true;
    for (int i = 0; i < k && ok; ++i) {
      Side img{m.edge[fs[i].edge], fs[i].forward != (m.edge_sign[fs[i].edge] < 0)};
      if (sign > 0)
        ok = gs[(i + t) % k] == img;
      else
        ok = gs[((t - i) % k + k) % k] == Side{img.edge, !img.forward};
    }
    if (ok) return true;
  }
  return false;
}

Passage vertex_passage(const Refinement& r, int v) {
  const auto& o = r.vertex_origin[v];
  return {o.dim == 0 ? Passage::Kind::Vertex : Passage::Kind::EdgePoint, o.index};
}

Passage edge_passage(const Refinement& r, int e) {
  const auto& o = r.edge_origin[e];
  return {o.dim == 2 ? Passage::Kind::Chord : Passage::Kind::EdgeSegment, o.index};
}

Passage map_passage(const Passage& p, const CellularAutomorphism& h) {
  switch (p.kind) {
    case Passage::Kind::Vertex:
      return {p.kind, h.vertex[p.cell]};
    case Passage::Kind::EdgePoint:
    case Passage::Kind::EdgeSegment:
      return {p.kind, h.edge[p.cell]};
    case Passage::Kind::Chord:
      return {p.kind, h.face[p.cell]};
  }
  return p;
}

// Closed leaf from a level-graph component in which every vertex has degree 2.
std::vector<Passage> circle_passages(const Refinement& r, const std::vector<int>& verts, const std::vector<int>& edges) {
  const auto& rc = r.complex;
  std::map<int, std::vector<int>> inc;
  for (int e : edges) {
    inc[rc.edge(e).tail].push_back(e);
    inc[rc.edge(e).head].push_back(e);
  }
  for (int v : verts)
    if (inc[v].size() != 2) fail(ErrorCode::InvariantViolation, "regular level component is not a circle");
  std::vector<Passage> out;
  int start = *std::min_element(verts.begin(), verts.end());
  int v = start, prev_edge = -1;
  do {
    out.push_back(vertex_passage(r, v));
    int e = inc[v][0] == prev_edge ? inc[v][1] : inc[v][0];
    out.push_back(edge_passage(r, e));
    v = rc.edge(e).tail == v ? rc.edge(e).head : rc.edge(e).tail;
    prev_edge = e;
  } while (v != start);
  return out;
}

enum class Match { Same, Reversed, Moved };

Match compare_leaf(const std::vector<Passage>& orig, const std::vector<Passage>& img, bool closed) {
  int n = static_cast<int>(orig.size());
  if (static_cast<int>(img.size()) != n) return Match::Moved;
  if (!closed) {
    if (img == orig) return Match::Same;
    if (std::equal(img.begin(), img.end(), orig.rbegin())) return Match::Reversed;
    return Match::Moved;
  }
  for (int dir : {1, -1})
    for (int t = 0; t < n; ++t) {
      bool ok = true;
      for (int i = 0; i < n && ok; ++i) {
        int j = dir > 0 ? (i + t) % n : ((t - i) % n + n) % n;
        // reversing a vertex/edge alternation shifts edges by one
        if (dir < 0 && i % 2 == 1) j = ((t - i + 1) % n + n) % n;
        ok = img[i] == orig[j];
      }
      if (ok) return dir > 0 ? Match::Same : Match::Reversed;
    }
  return Match::Moved;
}

}  // namespace

std::vector<int> negative_components(const Atlas& a) {
  int chi = a.surface_class.euler_char;
  if (chi >= 0) fail(ErrorCode::ChiNotNegative, "χ(M) = " + std::to_string(chi));
  std::vector<int> out;
  for (int k = 0; k < a.num_components(); ++k)
    if (!a.canonical[k].is_disk && a.canonical[k].region.euler_char < 0) out.push_back(k);
  if (out.empty()) fail(ErrorCode::InvariantViolation, "chi(M) < 0 but no canonical neighbourhood is negative");
  return out;
}

DecompositionReport build_Mneg(const SurfaceComplex& s, const PLFunction& f) { return build_Mneg(build_atlas(s, f)); }

DecompositionReport build_Mneg(Atlas a) {
  DecompositionReport rep;
  rep.negative_components = negative_components(a);
  const auto& rc = a.refined.complex;
  const auto& rf = a.refined.function;
  auto crit = critical_mask(a);

  for (int k : rep.negative_components) {
    FaceSet u;
    const auto& fa = a.atoms[k].region.faces;
    std::set_union(rep.r_neg.begin(), rep.r_neg.end(), fa.begin(), fa.end(), std::back_inserter(u));
    rep.r_neg = std::move(u);
  }
  FaceSet mneg = rep.r_neg;
  if (static_cast<int>(rep.r_neg.size()) < rc.num_faces()) {
    for (auto& comp : complement_closure(rc, make_subsurface(rc, rep.r_neg))) {
      if (comp.connected() && comp.cls.is_cylinder() && criticals_in(a, comp.faces, crit).empty()) {
        FaceSet u;
        std::set_union(mneg.begin(), mneg.end(), comp.faces.begin(), comp.faces.end(), std::back_inserter(u));
        mneg = std::move(u);
        rep.absorbed.push_back(std::move(comp));
      }
    }
  }
  if (mneg.size() != rep.r_neg.size() + [&] {
        std::size_t n = 0;
        for (const auto& b : rep.absorbed) n += b.faces.size();
        return n;
      }())
    fail(ErrorCode::InvariantViolation, "absorbed cylinders overlap R_neg");
  rep.m_neg = make_subsurface(rc, mneg);
  for (auto& comp : connected_components(rc, mneg)) rep.m_neg_components.push_back(make_subsurface(rc, comp));

  std::vector<char> in_mneg(rc.num_faces(), 0);
  for (int fc : mneg) in_mneg[fc] = 1;
  for (const auto& cyc : rep.m_neg.boundary) {
    const Rational& level = rf.value(rc.edge(cyc.front().edge).tail);
    for (Side sd : cyc)
      for (int v : {rc.edge(sd.edge).tail, rc.edge(sd.edge).head}) {
        if (rf.value(v) != level) fail(ErrorCode::InvariantViolation, "f is not constant on a boundary circle of M_neg");
        const auto& o = a.refined.vertex_origin[v];
        if (o.dim == 0 && crit[o.index])
          fail(ErrorCode::InvariantViolation, "boundary of M_neg passes through a critical vertex");
      }
  }

  bool closed = !a.surface.has_boundary();
  if (static_cast<int>(mneg.size()) < rc.num_faces()) {
    for (auto& comp : complement_closure(rc, rep.m_neg)) {
      Piece pc;
      pc.region = std::move(comp);
      if (!pc.region.connected()) fail(ErrorCode::InvariantViolation, "piece is not connected");
      pc.cls = pc.region.cls;
      if (!pc.cls.is_disk() && !pc.cls.is_cylinder() && !pc.cls.is_mobius())
        fail(ErrorCode::InvariantViolation, "piece is a " + pc.cls.name());
      pc.critical_vertices = criticals_in(a, pc.region.faces, crit);
      if (pc.critical_vertices.empty())
        fail(ErrorCode::InvariantViolation, "piece without critical points (" + pc.cls.name() + ")");
      for (int v : pc.critical_vertices) pc.has_extremum = pc.has_extremum || type_of(a, v).kind != VertexKind::Saddle;
      if ((pc.cls.is_disk() || pc.cls.is_mobius()) && !pc.has_extremum)
        fail(ErrorCode::InvariantViolation, "disk or Mobius piece without a local extremum");
      pc.boundary_in_mneg = pc.boundary_in_mneg_or_dm = true;
      for (const auto& cyc : pc.region.boundary)
        for (Side sd : cyc) {
          bool shared = false;
          for (SideRef sr : rc.edge_sides(sd.edge)) shared = shared || in_mneg[sr.face];
          if (!shared) pc.boundary_in_mneg = false;
          if (!shared && !rc.is_boundary_edge(sd.edge)) pc.boundary_in_mneg_or_dm = false;
        }
      if (!pc.boundary_in_mneg_or_dm) fail(ErrorCode::InvariantViolation, "piece boundary leaves M_neg");
      if (closed && !pc.boundary_in_mneg) fail(ErrorCode::InvariantViolation, "piece boundary is not in M_neg");
      pc.extraction = extract(rc, pc.region.faces);
      pc.function = restrict_function(a, pc.extraction);
      rep.pieces.push_back(std::move(pc));
    }
  }
  rep.atlas = std::move(a);
  return rep;
}

Factorization orbit_factorization(const DecompositionReport& report) {
  Factorization out;
  for (std::size_t i = 0; i < report.pieces.size(); ++i) {
    const auto& pc = report.pieces[i];
    Factor fac{static_cast<int>(i), pc.cls.name()};
    for (int v : pc.critical_vertices) {
      const auto& t = type_of(report.atlas, v);
      if (t.kind == VertexKind::Min) ++fac.minima;
      if (t.kind == VertexKind::Max) ++fac.maxima;
      if (t.kind == VertexKind::Saddle) fac.saddles += t.multiplicity;
    }
    out.factors.push_back(std::move(fac));
  }
  return out;
}

std::string to_dot(const DecompositionReport& report) {
  const auto& rc = report.atlas.refined.complex;
  std::vector<int> owner(rc.num_faces(), -1);
  for (std::size_t i = 0; i < report.m_neg_components.size(); ++i)
    for (int fc : report.m_neg_components[i].faces) owner[fc] = static_cast<int>(i);
  std::ostringstream out;
  out << "graph decomposition {\n";
  for (std::size_t i = 0; i < report.m_neg_components.size(); ++i) {
    const auto& c = report.m_neg_components[i];
    out << "  mneg" << i << " [shape=box, label="
        << quote("M_neg " + std::to_string(i) + ": " + c.cls.name() + ", chi " + std::to_string(c.euler_char))
        << "];\n";
  }
  for (std::size_t i = 0; i < report.pieces.size(); ++i) {
    const auto& pc = report.pieces[i];
    out << "  piece" << i << " [shape=ellipse, label="
        << quote("B" + std::to_string(i) + ": " + pc.cls.name() + ", " + std::to_string(pc.critical_vertices.size()) +
                 " critical")
        << "];\n";
  }
  for (std::size_t i = 0; i < report.pieces.size(); ++i)
    for (const auto& cyc : report.pieces[i].region.boundary) {
      int other = -1;
      for (SideRef sr : rc.edge_sides(cyc.front().edge))
        if (owner[sr.face] >= 0) other = owner[sr.face];
      if (other >= 0) out << "  mneg" << other << " -- piece" << i << ";\n";
    }
  out << "}\n";
  return out.str();
}

CellularAutomorphism lift_to_refinement(const SurfaceComplex& s, const Refinement& r, const CellularAutomorphism& h) {
  (void)s;
  const auto& rc = r.complex;
  const auto& rf = r.function;
  auto image_cell = [&](const CellOrigin& o) {
    return o.dim == 0 ? h.vertex[o.index] : o.dim == 1 ? h.edge[o.index] : h.face[o.index];
  };
  std::map<std::tuple<int, int, Rational>, int> vkey;
  for (int v = 0; v < rc.num_vertices(); ++v)
    vkey[{r.vertex_origin[v].dim, r.vertex_origin[v].index, rf.value(v)}] = v;
  std::map<std::tuple<int, int, int, int>, int> ekey;
  auto edge_key = [](const CellOrigin& o, int idx, int a, int b) {
    return std::make_tuple(o.dim, idx, std::min(a, b), std::max(a, b));
  };
  for (int e = 0; e < rc.num_edges(); ++e)
    ekey[edge_key(r.edge_origin[e], r.edge_origin[e].index, rc.edge(e).tail, rc.edge(e).head)] = e;
  std::map<std::pair<int, std::vector<int>>, int> fkey;
  auto face_edges = [&](int fc, const std::vector<int>* emap) {
    std::vector<int> es;
    for (Side sd : rc.face(fc).sides) es.push_back(emap ? (*emap)[sd.edge] : sd.edge);
    std::sort(es.begin(), es.end());
    return es;
  };
  for (int fc = 0; fc < rc.num_faces(); ++fc) fkey[{r.face_origin[fc], face_edges(fc, nullptr)}] = fc;

  CellMaps m;
  for (int v = 0; v < rc.num_vertices(); ++v) {
    const auto& o = r.vertex_origin[v];
    auto it = vkey.find({o.dim, image_cell(o), rf.value(v)});
    if (it == vkey.end()) fail(ErrorCode::NotFPreserving, "automorphism does not preserve the refinement");
    m.vertex.push_back(it->second);
  }
  for (int e = 0; e < rc.num_edges(); ++e) {
    const auto& o = r.edge_origin[e];
    int t = m.vertex[rc.edge(e).tail], hd = m.vertex[rc.edge(e).head];
    auto it = ekey.find(edge_key(o, image_cell(o), t, hd));
    if (it == ekey.end()) fail(ErrorCode::NotFPreserving, "automorphism does not preserve the refinement");
    m.edge.push_back(it->second);
    m.edge_sign.push_back(rc.edge(it->second).tail == t ? 1 : -1);
  }
  for (int fc = 0; fc < rc.num_faces(); ++fc) {
    auto it = fkey.find({h.face[r.face_origin[fc]], face_edges(fc, &m.edge)});
    if (it == fkey.end()) fail(ErrorCode::NotFPreserving, "automorphism does not preserve the refinement");
    m.face.push_back(it->second);
  }
  m.face_sign.resize(rc.num_faces());
  for (int fc = 0; fc < rc.num_faces(); ++fc)
    m.face_sign[fc] = face_aligns(rc, fc, m.face[fc], m, 1) ? 1 : -1;
  return from_cell_maps(partition_of(rc), m);
}

std::string describe(const Passage& p, const SurfaceComplex& s) {
  switch (p.kind) {
    case Passage::Kind::Vertex:
      return "vertex " + std::to_string(s.vertex_id(p.cell));
    case Passage::Kind::EdgePoint:
      return "point of edge " + std::to_string(s.edge(p.cell).id);
    case Passage::Kind::Chord:
      return "chord of face " + std::to_string(s.face(p.cell).id);
    case Passage::Kind::EdgeSegment:
      return "segment of edge " + std::to_string(s.edge(p.cell).id);
  }
  return {};
}

LeafVerdict leaf_invariance_check(const SurfaceComplex& s, const PLFunction& f, const CellularAutomorphism& h) {
  if (static_cast<int>(h.vertex.size()) != s.num_vertices())
    fail(ErrorCode::NotCellular, "automorphism does not match the surface");
  for (int v = 0; v < s.num_vertices(); ++v)
    if (f.value(h.vertex[v]) != f.value(v))
      fail(ErrorCode::NotFPreserving, "f(h(v)) != f(v) at vertex " + std::to_string(s.vertex_id(v)));

  // Refine once more half way between each critical value and its band ends
  // so that every open interval of regular leaves is sampled.
  auto coarse = build_atlas(s, f);
  std::vector<Rational> extra;
  for (int k : negative_components(coarse)) {
    const auto& b = coarse.bands[coarse.component_level[k]];
    extra.push_back(Rational((b.lo + b.center) / 2));
    extra.push_back(Rational((b.center + b.hi) / 2));
  }
  auto a = build_atlas(s, f, extra);
  auto neg = negative_components(a);
  const auto& r = a.refined;
  auto hr = lift_to_refinement(s, r, h);

  for (int k : neg) {
    auto np = nbhd_partition(a, k);
    std::map<int, int> lookup;  // refined flag -> partition flag
    for (std::size_t side = 0; side < np.side_flags.size(); ++side)
      for (int end = 0; end < 2; ++end) lookup[np.side_flags[side][end]] = 2 * static_cast<int>(side) + end;
    std::vector<int> perm(2 * np.side_flags.size());
    for (std::size_t side = 0; side < np.side_flags.size(); ++side)
      for (int end = 0; end < 2; ++end) {
        auto it = lookup.find(hr.flag[np.side_flags[side][end]]);
        if (it == lookup.end())
          fail(ErrorCode::NotDeltaTrivial, "h moves N^(K_" + std::to_string(k) + ") off itself");
        perm[2 * side + end] = it->second;
      }
    CellularAutomorphism hp;
    try {
      hp = from_flag_map(np.partition, perm);
    } catch (const Error&) {
      fail(ErrorCode::NotDeltaTrivial, "h does not induce a cellular map of N^(K_" + std::to_string(k) + ")");
    }
    for (std::size_t c = 0; c < np.cell_faces.size(); ++c) {
      std::set<int> cell(np.cell_faces[c].begin(), np.cell_faces[c].end());
      for (int fc : np.cell_faces[c])
        if (!cell.count(hr.face[fc])) hp.face[c] = -1;
    }
    if (!is_delta_trivial(hp))
      fail(ErrorCode::NotDeltaTrivial, "h is not Delta-trivial on N^(K_" + std::to_string(k) + ")");
  }

  LeafVerdict verdict;
  const auto& rc = r.complex;
  for (int k : neg) {
    const auto& band = a.bands[a.component_level[k]];
    std::set<int> atom_vertices;
    for (int fc : a.atoms[k].region.faces)
      for (int i = 0; i < rc.face_size(fc); ++i) atom_vertices.insert(rc.side_start(fc, i));
    std::vector<LeafRecord> leaves;
    for (const auto& leaf : a.components[k].leaves) {
      LeafRecord rec{k, band.center, false, {}};
      for (std::size_t i = 0; i < leaf.vertices.size(); ++i) {
        rec.passages.push_back(vertex_passage(r, leaf.vertices[i]));
        if (i < leaf.edges.size()) rec.passages.push_back(edge_passage(r, leaf.edges[i]));
      }
      leaves.push_back(std::move(rec));
    }
    std::vector<Rational> sample{band.lo, Rational((band.lo + band.center) / 2), Rational((band.center + band.hi) / 2),
                                 band.hi};
    for (const Rational& lv : sample) {
      auto lg = level_graph(r, r.function.normalize(lv));
      for (std::size_t c = 0; c < lg.vertex_components.size(); ++c) {
        const auto& vs = lg.vertex_components[c];
        if (std::none_of(vs.begin(), vs.end(), [&](int v) { return atom_vertices.count(v) > 0; })) continue;
        leaves.push_back({k, lv, true, circle_passages(r, vs, lg.edge_components[c])});
      }
    }
    for (const auto& leaf : leaves) {
      ++verdict.leaves_checked;
      std::vector<Passage> img;
      for (const auto& p : leaf.passages) img.push_back(map_passage(p, h));
      auto m = compare_leaf(leaf.passages, img, leaf.closed);
      if (m != Match::Same && verdict.passed) {
        verdict.passed = false;
        verdict.witness = leaf;
        verdict.reason = m == Match::Reversed ? "leaf orientation reversed" : "leaf moved";
      }
    }
  }
  return verdict;
}

}  // namespace plsurf
