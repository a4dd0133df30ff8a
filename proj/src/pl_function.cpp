#include "plsurf/pl_function.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

#include "plsurf/errors.hpp"

namespace plsurf {

namespace {

const Rational kHalf(1, 2);

Rational side_delta(const PLFunction& f, Side sd) {
  return sd.forward ? f.delta(sd.edge) : Rational(-f.delta(sd.edge));
}

// Lifts of the (normalized, sorted) levels lying strictly between lo and hi,
// ascending. On the circle the interval is shorter than 1.
std::vector<Rational> lifts_between(const std::vector<Rational>& levels, bool circle,
                                    const Rational& lo, const Rational& hi) {
  std::vector<Rational> out;
  if (!(lo < hi)) return out;
  if (!circle) {
    auto it = std::upper_bound(levels.begin(), levels.end(), lo);
    for (; it != levels.end() && *it < hi; ++it) out.push_back(*it);
    return out;
  }
  Rational base = lo - mod_one(lo);  // floor(lo)
  for (Rational k = base; k < hi; k += 1)
    for (const auto& c : levels) {
      Rational x = c + k;
      if (lo < x && x < hi) out.push_back(x);
    }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

PLFunction PLFunction::line(const SurfaceComplex& s, std::vector<Rational> values) {
  if (static_cast<int>(values.size()) != s.num_vertices())
    fail(ErrorCode::SchemaError, "one value per vertex required");
  PLFunction f;
  f.target_ = Target::Line;
  f.values_ = std::move(values);
  f.deltas_.reserve(s.num_edges());
  for (int e = 0; e < s.num_edges(); ++e)
    f.deltas_.push_back(f.values_[s.edge(e).head] - f.values_[s.edge(e).tail]);
  return f;
}

PLFunction PLFunction::circle(const SurfaceComplex& s, std::vector<Rational> values) {
  if (static_cast<int>(values.size()) != s.num_vertices())
    fail(ErrorCode::SchemaError, "one value per vertex required");
  PLFunction f;
  f.target_ = Target::Circle;
  for (auto& v : values) v = mod_one(v);
  f.values_ = std::move(values);
  for (int e = 0; e < s.num_edges(); ++e) {
    Rational d = mod_one(f.values_[s.edge(e).head] - f.values_[s.edge(e).tail]);
    if (d == kHalf)
      fail(ErrorCode::InvalidInput, "edge " + std::to_string(s.edge(e).id) +
                                        " spans half the circle; its lift is ambiguous");
    if (d > kHalf) d -= 1;
    f.deltas_.push_back(d);
  }
  return f;
}

PLFunction PLFunction::circle_with_deltas(std::vector<Rational> values, std::vector<Rational> deltas) {
  PLFunction f;
  f.target_ = Target::Circle;
  for (auto& v : values) v = mod_one(v);
  f.values_ = std::move(values);
  f.deltas_ = std::move(deltas);
  return f;
}

std::vector<Rational> face_lift(const SurfaceComplex& s, const PLFunction& f, int face) {
  int n = s.face_size(face);
  std::vector<Rational> lift(n);
  lift[0] = f.value(s.side_start(face, 0));
  for (int i = 0; i + 1 < n; ++i) lift[i + 1] = lift[i] + side_delta(f, s.face(face).sides[i]);
  return lift;
}

std::string to_string(VertexType t) {
  switch (t.kind) {
    case VertexKind::Regular: return "regular";
    case VertexKind::Min: return "min";
    case VertexKind::Max: return "max";
    case VertexKind::Saddle: return "saddle(" + std::to_string(t.multiplicity) + ")";
  }
  return "?";
}

VertexType classify_vertex(const SurfaceComplex& s, const PLFunction& f, int v) {
  if (s.is_boundary_vertex(v))
    fail(ErrorCode::BoundaryVertex, "vertex " + std::to_string(s.vertex_id(v)) + " lies on the boundary");
  const auto& ends = s.link(v).ends;
  std::vector<int> signs;
  for (const auto& end : ends) {
    int sg = sign(f.along(end));
    if (sg == 0)
      fail(ErrorCode::DegenerateTie, "vertex " + std::to_string(s.vertex_id(v)) +
                                         " has a neighbour with the same value");
    signs.push_back(sg);
  }
  int changes = 0;
  for (std::size_t i = 0; i < signs.size(); ++i)
    if (signs[i] != signs[(i + 1) % signs.size()]) ++changes;
  if (changes == 0) return {signs[0] > 0 ? VertexKind::Min : VertexKind::Max, 0};
  if (changes == 2) return {VertexKind::Regular, 0};
  return {VertexKind::Saddle, changes / 2 - 1};
}

AxiomReport validate_axioms(const SurfaceComplex& s, const PLFunction& f) {
  AxiomReport rep;
  auto eid = [&](int e) { return std::to_string(s.edge(e).id); };
  auto fid = [&](int fc) { return std::to_string(s.face(fc).id); };

  if (f.circle_valued()) {
    for (int fc = 0; fc < s.num_faces(); ++fc) {
      Rational total = 0;
      for (Side sd : s.face(fc).sides) total += side_delta(f, sd);
      if (total != 0) fail(ErrorCode::InvalidInput, "face " + fid(fc) + " winds around the circle");
      auto lift = face_lift(s, f, fc);
      auto [lo, hi] = std::minmax_element(lift.begin(), lift.end());
      if (*hi - *lo >= 1) fail(ErrorCode::InvalidInput, "face " + fid(fc) + " covers the whole circle");
    }
  }

  for (int e = 0; e < s.num_edges(); ++e)
    if (s.is_boundary_edge(e) && f.delta(e) != 0)
      fail(ErrorCode::BoundaryNotLevel, "boundary edge " + eid(e) + " is not level");
  for (int e = 0; e < s.num_edges(); ++e)
    if (!s.is_boundary_edge(e) && f.delta(e) == 0)
      fail(ErrorCode::DegenerateTie, "interior edge " + eid(e) + " joins two vertices with equal values");

  for (int fc = 0; fc < s.num_faces(); ++fc) {
    std::vector<int> signs;
    for (Side sd : s.face(fc).sides) {
      int sg = sign(side_delta(f, sd));
      if (sg != 0) signs.push_back(sg);
    }
    if (signs.empty()) fail(ErrorCode::DegenerateTie, "face " + fid(fc) + " is level");
    int changes = 0;
    for (std::size_t i = 0; i < signs.size(); ++i)
      if (signs[i] != signs[(i + 1) % signs.size()]) ++changes;
    if (changes != 2)
      fail(ErrorCode::NonMonotoneFace,
           "face " + fid(fc) + " has " + std::to_string(changes / 2) + " local maxima along its boundary");
  }

  rep.boundary_circles = s.boundary_cycles();
  for (const auto& cyc : rep.boundary_circles)
    rep.boundary_levels.push_back(f.value(s.edge(cyc[0].edge).tail));

  // A boundary vertex must see the interior on one side of its level only.
  for (int v = 0; v < s.num_vertices(); ++v) {
    if (!s.is_boundary_vertex(v)) {
      ++rep.interior_vertices;
      continue;
    }
    bool up = false, down = false;
    for (const auto& end : s.link(v).ends) {
      int sg = sign(f.along(end));
      up |= sg > 0;
      down |= sg < 0;
    }
    for (SideRef c : s.link(v).corners) {
      auto lift = face_lift(s, f, c.face);
      // corner c.pos sits at v; compare the rest of the face with it
      for (const auto& x : lift) {
        int sg = sign(Rational(x - lift[c.pos]));
        up |= sg > 0;
        down |= sg < 0;
      }
    }
    if (up && down)
      fail(ErrorCode::CriticalOnBoundary,
           "boundary vertex " + std::to_string(s.vertex_id(v)) + " has neighbours on both sides of its level");
  }

  for (int v = 0; v < s.num_vertices(); ++v) {
    if (s.is_boundary_vertex(v)) continue;
    VertexType t = classify_vertex(s, f, v);
    if (t.critical()) rep.critical.push_back({v, t});
  }
  return rep;
}

std::vector<SpecialLevel> critical_levels(const AxiomReport& report, const PLFunction& f) {
  std::map<Rational, SpecialLevel> by;
  for (const auto& cv : report.critical) {
    Rational c = f.value(cv.vertex);
    auto& lv = by[c];
    lv.value = c;
    lv.critical_vertices.push_back(cv.vertex);
  }
  for (std::size_t i = 0; i < report.boundary_levels.size(); ++i) {
    const Rational& c = report.boundary_levels[i];
    auto& lv = by[c];
    lv.value = c;
    lv.boundary_circles.push_back(static_cast<int>(i));
  }
  std::vector<SpecialLevel> out;
  for (auto& [_, lv] : by) out.push_back(std::move(lv));
  return out;
}

std::vector<SpecialLevel> critical_levels(const SurfaceComplex& s, const PLFunction& f) {
  return critical_levels(validate_axioms(s, f), f);
}

Refinement refine(const SurfaceComplex& s, const PLFunction& f, std::vector<Rational> levels) {
  const bool circle = f.circle_valued();
  for (auto& c : levels) c = f.normalize(c);
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

  Refinement r;
  r.levels = levels;
  RawComplex raw;
  std::vector<Rational> rvalues;
  std::vector<Rational> rdeltas;
  Id next_vid = s.max_vertex_id() + 1;
  Id next_eid = s.max_edge_id() + 1;
  Id next_fid = s.max_face_id() + 1;

  for (int v = 0; v < s.num_vertices(); ++v) {
    raw.vertices.push_back(s.vertex_id(v));
    rvalues.push_back(f.value(v));
    r.vertex_origin.push_back({0, v});
  }

  // Split edges: chain[e] lists refined vertices tail .. head, piece[e] the
  // refined edges between consecutive chain entries.
  std::vector<std::vector<int>> chain(s.num_edges()), piece(s.num_edges());
  std::vector<std::vector<Rational>> piece_delta(s.num_edges());
  for (int e = 0; e < s.num_edges(); ++e) {
    const auto& ed = s.edge(e);
    Rational a = f.value(ed.tail), b = a + f.delta(e);
    bool up = f.delta(e) > 0;
    auto pts = up ? lifts_between(levels, circle, a, b) : lifts_between(levels, circle, b, a);
    if (!up) std::reverse(pts.begin(), pts.end());
    chain[e].push_back(ed.tail);
    Rational prev = a;
    for (const auto& p : pts) {
      int idx = static_cast<int>(raw.vertices.size());
      raw.vertices.push_back(next_vid++);
      rvalues.push_back(f.normalize(p));
      r.vertex_origin.push_back({1, e});
      chain[e].push_back(idx);
      piece_delta[e].push_back(p - prev);
      prev = p;
    }
    chain[e].push_back(ed.head);
    piece_delta[e].push_back(b - prev);
    for (std::size_t k = 0; k + 1 < chain[e].size(); ++k) {
      Id id = k == 0 ? ed.id : next_eid++;
      piece[e].push_back(static_cast<int>(raw.edges.size()));
      raw.edges.push_back({id, raw.vertices[chain[e][k]], raw.vertices[chain[e][k + 1]]});
      rdeltas.push_back(piece_delta[e][k]);
      r.edge_origin.push_back({1, e});
    }
  }

  struct Poly {
    std::vector<int> verts;
    std::vector<Rational> lift;
    std::vector<Side> sides;  // refined edges
  };

  for (int fc = 0; fc < s.num_faces(); ++fc) {
    Poly p;
    Rational cur = f.value(s.side_start(fc, 0));
    for (Side sd : s.face(fc).sides) {
      const auto& ch = chain[sd.edge];
      int k = static_cast<int>(piece[sd.edge].size());
      for (int j = 0; j < k; ++j) {
        int pj = sd.forward ? j : k - 1 - j;
        p.verts.push_back(sd.forward ? ch[j] : ch[k - j]);
        p.lift.push_back(cur);
        p.sides.push_back({piece[sd.edge][pj], sd.forward});
        cur += sd.forward ? piece_delta[sd.edge][pj] : Rational(-piece_delta[sd.edge][pj]);
      }
    }
    bool first = true;
    std::function<void(Poly)> cut = [&](Poly q) {
      auto [lo, hi] = std::minmax_element(q.lift.begin(), q.lift.end());
      auto inside = lifts_between(levels, circle, *lo, *hi);
      if (inside.empty()) {
        RawComplex::Face rf{first ? s.face(fc).id : next_fid++, {}};
        first = false;
        for (Side sd : q.sides) rf.sides.push_back(sd.forward ? raw.edges[sd.edge].id : -raw.edges[sd.edge].id);
        raw.faces.push_back(std::move(rf));
        r.face_origin.push_back(fc);
        return;
      }
      const Rational& lam = inside[inside.size() / 2];
      std::vector<int> at;
      for (std::size_t i = 0; i < q.lift.size(); ++i)
        if (q.lift[i] == lam) at.push_back(static_cast<int>(i));
      int n = static_cast<int>(q.verts.size());
      if (at.size() != 2 || at[1] == at[0] + 1 || (at[0] == 0 && at[1] == n - 1))
        fail(ErrorCode::InvariantViolation,
             "face " + std::to_string(s.face(fc).id) + " is not cut cleanly at level " + format_rational(lam));
      int i = at[0], j = at[1];
      int chord = static_cast<int>(raw.edges.size());
      raw.edges.push_back({next_eid++, raw.vertices[q.verts[i]], raw.vertices[q.verts[j]]});
      rdeltas.push_back(0);
      r.edge_origin.push_back({2, fc});
      Poly a, b;
      for (int t = i; t < j; ++t) {
        a.verts.push_back(q.verts[t]);
        a.lift.push_back(q.lift[t]);
        a.sides.push_back(q.sides[t]);
      }
      a.verts.push_back(q.verts[j]);
      a.lift.push_back(q.lift[j]);
      a.sides.push_back({chord, false});
      for (int t = j; t != i; t = (t + 1) % n) {
        b.verts.push_back(q.verts[t]);
        b.lift.push_back(q.lift[t]);
        b.sides.push_back(q.sides[t]);
      }
      b.verts.push_back(q.verts[i]);
      b.lift.push_back(q.lift[i]);
      b.sides.push_back({chord, true});
      cut(std::move(a));
      cut(std::move(b));
    };
    cut(std::move(p));
  }

  r.complex = SurfaceComplex::build(raw, {.allow_multi_component = s.multi_component()});
  r.function = circle ? PLFunction::circle_with_deltas(std::move(rvalues), std::move(rdeltas))
                      : PLFunction::line(r.complex, std::move(rvalues));
  return r;
}

Refinement slice(const SurfaceComplex& s, const PLFunction& f, const Rational& c) {
  Rational lv = f.normalize(c);
  for (int v = 0; v < s.num_vertices(); ++v) {
    if (s.is_boundary_vertex(v) || f.value(v) != lv) continue;
    VertexType t = classify_vertex(s, f, v);
    if (t.critical())
      fail(ErrorCode::CriticalLevel, "level " + format_rational(lv) + " contains the " + to_string(t) +
                                         " vertex " + std::to_string(s.vertex_id(v)));
  }
  return refine(s, f, {lv});
}

LevelGraph level_graph(const Refinement& r, const Rational& c) {
  const auto& s = r.complex;
  const auto& f = r.function;
  LevelGraph g;
  g.level = f.normalize(c);
  std::vector<int> slot(s.num_vertices(), -1);
  for (int v = 0; v < s.num_vertices(); ++v)
    if (f.value(v) == g.level) {
      slot[v] = static_cast<int>(g.vertices.size());
      g.vertices.push_back(v);
    }
  std::vector<int> parent(g.vertices.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  for (int e = 0; e < s.num_edges(); ++e) {
    if (f.delta(e) != 0 || slot[s.edge(e).tail] < 0) continue;
    g.edges.push_back(e);
    parent[find(slot[s.edge(e).head])] = find(slot[s.edge(e).tail]);
  }
  std::map<int, int> comp_of_root;
  for (std::size_t i = 0; i < g.vertices.size(); ++i) {
    int root = find(static_cast<int>(i));
    auto [it, fresh] = comp_of_root.emplace(root, static_cast<int>(g.vertex_components.size()));
    if (fresh) {
      g.vertex_components.emplace_back();
      g.edge_components.emplace_back();
    }
    g.vertex_components[it->second].push_back(g.vertices[i]);
  }
  for (int e : g.edges) g.edge_components[comp_of_root.at(find(slot[s.edge(e).tail]))].push_back(e);
  return g;
}

std::vector<CriticalComponent> critical_components(const SurfaceComplex& s, const PLFunction& f,
                                                   const Refinement& r,
                                                   const std::vector<SpecialLevel>& levels) {
  (void)f;
  const auto& rc = r.complex;
  std::vector<char> is_crit(s.num_vertices(), 0);
  for (const auto& lv : levels)
    for (int v : lv.critical_vertices) is_crit[v] = 1;
  auto refined_critical = [&](int rv) {
    const auto& o = r.vertex_origin[rv];
    return o.dim == 0 && is_crit[o.index];
  };

  std::vector<CriticalComponent> out;
  for (const auto& lv : levels) {
    if (lv.critical_vertices.empty()) continue;
    LevelGraph g = level_graph(r, lv.value);
    std::map<int, std::vector<std::pair<int, bool>>> incident;  // vertex -> (edge, at_tail)
    for (int e : g.edges) {
      incident[rc.edge(e).tail].push_back({e, true});
      incident[rc.edge(e).head].push_back({e, false});
    }
    for (std::size_t k = 0; k < g.vertex_components.size(); ++k) {
      const auto& verts = g.vertex_components[k];
      if (std::none_of(verts.begin(), verts.end(), refined_critical)) continue;
      CriticalComponent cc;
      cc.level = lv.value;
      cc.vertices = verts;
      cc.edges = g.edge_components[k];
      std::sort(cc.vertices.begin(), cc.vertices.end());
      std::sort(cc.edges.begin(), cc.edges.end());
      for (int v : verts)
        if (refined_critical(v)) {
          cc.critical_vertices.push_back(r.vertex_origin[v].index);
          cc.leaves.push_back({Leaf::Kind::Point, {v}, {}});
        }
      std::set<int> used;
      // Continue through a regular vertex: the other level edge at it.
      auto step = [&](int v, int via) -> std::pair<int, int> {
        const auto& inc = incident[v];
        if (inc.size() != 2)
          fail(ErrorCode::InvariantViolation, "regular level vertex of degree " + std::to_string(inc.size()));
        int e = inc[0].first == via && inc[1].first != via ? inc[1].first
                : inc[0].first != via                      ? inc[0].first
                                                           : inc[1].first;
        int w = rc.edge(e).tail == v ? rc.edge(e).head : rc.edge(e).tail;
        return {e, w};
      };
      for (int e0 : cc.edges) {
        if (used.count(e0)) continue;
        used.insert(e0);
        std::vector<int> fwd_v{rc.edge(e0).tail, rc.edge(e0).head}, fwd_e{e0};
        bool circle = false;
        // forward from head
        while (!refined_critical(fwd_v.back())) {
          auto [e, w] = step(fwd_v.back(), fwd_e.back());
          if (e == e0) {
            circle = true;
            break;
          }
          used.insert(e);
          fwd_e.push_back(e);
          fwd_v.push_back(w);
        }
        std::vector<int> back_v, back_e;
        if (!circle) {
          int v = fwd_v.front(), via = e0;
          while (!refined_critical(v)) {
            auto [e, w] = step(v, via);
            used.insert(e);
            back_e.push_back(e);
            back_v.push_back(w);
            v = w;
            via = e;
          }
        }
        Leaf leaf{circle ? Leaf::Kind::Circle : Leaf::Kind::Arc, {}, {}};
        for (auto it = back_v.rbegin(); it != back_v.rend(); ++it) leaf.vertices.push_back(*it);
        for (auto it = back_e.rbegin(); it != back_e.rend(); ++it) leaf.edges.push_back(*it);
        leaf.vertices.insert(leaf.vertices.end(), fwd_v.begin(), fwd_v.end());
        leaf.edges.insert(leaf.edges.end(), fwd_e.begin(), fwd_e.end());
        if (circle) leaf.vertices.pop_back();
        cc.leaves.push_back(std::move(leaf));
      }
      std::sort(cc.critical_vertices.begin(), cc.critical_vertices.end());
      out.push_back(std::move(cc));
    }
  }
  return out;
}

LevelSets critical_components(const SurfaceComplex& s, const PLFunction& f) {
  LevelSets ls;
  ls.levels = critical_levels(s, f);
  std::vector<Rational> vals;
  for (const auto& lv : ls.levels) vals.push_back(lv.value);
  ls.refinement = refine(s, f, vals);
  ls.components = critical_components(s, f, ls.refinement, ls.levels);
  return ls;
}

}  // namespace plsurf
