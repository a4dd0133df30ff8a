#include "plsurf/io.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "plsurf/errors.hpp"

namespace plsurf {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

std::string locus(std::string_view text, std::size_t byte) {
  int line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::SyntaxError, locus(text, e.byte == 0 ? 0 : e.byte - 1) + ": " + e.what());
  }
}

[[noreturn]] void schema(const std::string& field, const std::string& what) {
  fail(ErrorCode::SchemaError, field + ": " + what);
}

const json& member(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) schema(where + "/" + key, "missing");
  return *it;
}

Id as_id(const json& v, const std::string& field) {
  if (!v.is_number_integer()) schema(field, "expected an integer id");
  return v.get<Id>();
}

Id parse_id_key(const std::string& key, const std::string& field) {
  try {
    std::size_t used = 0;
    Id id = std::stoll(key, &used);
    if (used == key.size()) return id;
  } catch (const std::exception&) {
  }
  schema(field, "key is not an integer id");
}

Rational as_rational(const json& v, const std::string& field) {
  if (v.is_number_integer()) return Rational(v.get<long long>());
  if (!v.is_string()) schema(field, "expected a rational string \"p/q\"");
  try {
    return parse_rational(v.get<std::string>());
  } catch (const Error&) {
    schema(field, "malformed rational \"" + v.get<std::string>() + "\"");
  }
}

std::string vertex_name(const SurfaceComplex& s, int v) { return std::to_string(s.vertex_id(v)); }

ordered_json class_json(const SurfaceClass& c) {
  return {{"name", c.name()},
          {"orientable", c.orientable},
          {"genus_or_crosscaps", c.genus_or_crosscaps},
          {"boundary", c.boundary_count},
          {"chi", c.euler_char}};
}

ordered_json subsurface_json(const Subsurface& r) {
  ordered_json out{{"faces", r.faces.size()}, {"chi", r.euler_char}, {"boundary", r.boundary.size()}};
  out["class"] = r.connected() ? r.cls.name() : std::to_string(r.num_components) + " components";
  return out;
}

std::vector<Id> critical_ids(const SurfaceComplex& s, const std::vector<int>& vs) {
  std::vector<Id> out;
  for (int v : vs) out.push_back(s.vertex_id(v));
  return out;
}

std::string join(const std::vector<Id>& ids) {
  std::string out;
  for (std::size_t i = 0; i < ids.size(); ++i) out += (i ? "," : "") + std::to_string(ids[i]);
  return out;
}

const char* leaf_kind(Leaf::Kind k) {
  switch (k) {
    case Leaf::Kind::Point:
      return "point";
    case Leaf::Kind::Arc:
      return "arc";
    case Leaf::Kind::Circle:
      return "circle";
  }
  return "?";
}

}  // namespace

Instance parse_instance(std::string_view text, bool validate) {
  json doc = parse_json(text);
  if (!doc.is_object()) schema("/", "expected an object");

  RawComplex raw;
  const auto& vertices = member(doc, "vertices", "");
  if (!vertices.is_array()) schema("/vertices", "expected an array");
  for (std::size_t i = 0; i < vertices.size(); ++i) raw.vertices.push_back(as_id(vertices[i], "/vertices/" + std::to_string(i)));

  const auto& edges = member(doc, "edges", "");
  if (!edges.is_array()) schema("/edges", "expected an array");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    std::string where = "/edges/" + std::to_string(i);
    const auto& e = edges[i];
    if (!e.is_array() || e.size() != 3) schema(where, "expected [id, tail, head]");
    RawComplex::Edge edge{as_id(e[0], where + "/0"), as_id(e[1], where + "/1"), as_id(e[2], where + "/2")};
    if (edge.id <= 0) schema(where + "/0", "edge ids must be positive so that signs can encode direction");
    raw.edges.push_back(edge);
  }

  const auto& faces = member(doc, "faces", "");
  if (!faces.is_array()) schema("/faces", "expected an array");
  for (std::size_t i = 0; i < faces.size(); ++i) {
    std::string where = "/faces/" + std::to_string(i);
    const auto& f = faces[i];
    if (!f.is_array() || f.size() != 2 || !f[1].is_array()) schema(where, "expected [id, [signed edge ids]]");
    RawComplex::Face face{as_id(f[0], where + "/0"), {}};
    for (std::size_t j = 0; j < f[1].size(); ++j) face.sides.push_back(as_id(f[1][j], where + "/1/" + std::to_string(j)));
    raw.faces.push_back(std::move(face));
  }

  Target target = Target::Line;
  if (auto it = doc.find("target"); it != doc.end()) {
    if (*it == "circle")
      target = Target::Circle;
    else if (*it != "line")
      schema("/target", "expected \"line\" or \"circle\"");
  }

  const auto& values = member(doc, "values", "");
  if (!values.is_object()) schema("/values", "expected an object keyed by vertex id");
  std::map<Id, Rational> by_id;
  for (const auto& [key, v] : values.items()) {
    std::string where = "/values/" + key;
    by_id[parse_id_key(key, where)] = as_rational(v, where);
  }

  Instance inst;
  inst.surface = SurfaceComplex::build(raw);
  std::vector<Rational> dense;
  for (int v = 0; v < inst.surface.num_vertices(); ++v) {
    auto it = by_id.find(inst.surface.vertex_id(v));
    if (it == by_id.end()) schema("/values/" + vertex_name(inst.surface, v), "missing value for vertex");
    dense.push_back(it->second);
    by_id.erase(it);
  }
  if (!by_id.empty()) schema("/values/" + std::to_string(by_id.begin()->first), "value for an unknown vertex");
  inst.function = target == Target::Circle ? PLFunction::circle(inst.surface, std::move(dense))
                                           : PLFunction::line(inst.surface, std::move(dense));

  if (auto it = doc.find("metadata"); it != doc.end()) {
    if (!it->is_object()) schema("/metadata", "expected an object");
    for (const auto& [key, v] : it->items()) inst.metadata[key] = v.is_string() ? v.get<std::string>() : v.dump();
  }
  if (validate) validate_axioms(inst.surface, inst.function);
  return inst;
}

std::string serialize_instance(const Instance& inst) {
  const auto& s = inst.surface;
  ordered_json out;
  out["vertices"] = json::array();
  for (int v = 0; v < s.num_vertices(); ++v) out["vertices"].push_back(s.vertex_id(v));
  out["edges"] = json::array();
  for (int e = 0; e < s.num_edges(); ++e)
    out["edges"].push_back({s.edge(e).id, s.vertex_id(s.edge(e).tail), s.vertex_id(s.edge(e).head)});
  out["faces"] = json::array();
  for (int f = 0; f < s.num_faces(); ++f) {
    json sides = json::array();
    for (Side sd : s.face(f).sides) sides.push_back(sd.forward ? s.edge(sd.edge).id : -s.edge(sd.edge).id);
    out["faces"].push_back({s.face(f).id, sides});
  }
  ordered_json values = ordered_json::object();
  for (int v = 0; v < s.num_vertices(); ++v) values[vertex_name(s, v)] = format_rational(inst.function.value(v));
  out["values"] = values;
  out["target"] = inst.function.circle_valued() ? "circle" : "line";
  ordered_json meta = ordered_json::object();
  for (const auto& [k, v] : inst.metadata) meta[k] = v;
  out["metadata"] = meta;
  return out.dump(2) + "\n";
}

AutomorphismInput parse_automorphism(std::string_view text, const SurfaceComplex& s) {
  json doc = parse_json(text);
  if (!doc.is_object()) schema("/", "expected an object");
  AutomorphismInput out;
  out.partition = partition_of(s);
  if (auto it = doc.find("annuli"); it != doc.end()) {
    if (!it->is_array()) schema("/annuli", "expected an array of face ids");
    for (std::size_t i = 0; i < it->size(); ++i) {
      std::string where = "/annuli/" + std::to_string(i);
      auto f = s.find_face(as_id((*it)[i], where));
      if (!f) schema(where, "unknown face");
      out.partition.annulus[*f] = 1;
    }
  }

  CellMaps m;
  m.vertex.assign(s.num_vertices(), -1);
  m.edge.assign(s.num_edges(), -1);
  m.edge_sign.assign(s.num_edges(), 1);
  m.face.assign(s.num_faces(), -1);
  m.face_sign.assign(s.num_faces(), 1);

  const auto& vs = member(doc, "vertices", "");
  if (!vs.is_object()) schema("/vertices", "expected an object");
  for (const auto& [key, v] : vs.items()) {
    std::string where = "/vertices/" + key;
    auto from = s.find_vertex(parse_id_key(key, where));
    auto to = s.find_vertex(as_id(v, where));
    if (!from || !to) schema(where, "unknown vertex");
    m.vertex[*from] = *to;
  }
  auto signed_map = [&](const char* name, auto find, std::vector<int>& image, std::vector<int>& sign) {
    const auto& obj = member(doc, name, "");
    if (!obj.is_object()) schema(std::string("/") + name, "expected an object");
    for (const auto& [key, v] : obj.items()) {
      std::string where = std::string("/") + name + "/" + key;
      if (!v.is_array() || v.size() != 2) schema(where, "expected [id, sign]");
      auto from = find(parse_id_key(key, where));
      auto to = find(as_id(v[0], where + "/0"));
      if (!from || !to) schema(where, "unknown cell");
      Id sg = as_id(v[1], where + "/1");
      if (sg != 1 && sg != -1) schema(where + "/1", "sign must be 1 or -1");
      image[*from] = *to;
      sign[*from] = static_cast<int>(sg);
    }
  };
  signed_map("edges", [&](Id id) { return s.find_edge(id); }, m.edge, m.edge_sign);
  signed_map("faces", [&](Id id) { return s.find_face(id); }, m.face, m.face_sign);

  auto check_total = [](const std::vector<int>& image, const char* name) {
    if (std::find(image.begin(), image.end(), -1) != image.end()) schema(std::string("/") + name, "map is not total");
    std::set<int> seen(image.begin(), image.end());
    if (seen.size() != image.size()) fail(ErrorCode::NotCellular, std::string(name) + " map is not a bijection");
  };
  check_total(m.vertex, "vertices");
  check_total(m.edge, "edges");
  check_total(m.face, "faces");
  out.map = from_cell_maps(out.partition, m);
  return out;
}

std::string serialize_automorphism(const CellPartition& p, const CellularAutomorphism& h) {
  const auto& s = p.shape;
  ordered_json out;
  out["annuli"] = json::array();
  for (int f = 0; f < s.num_faces(); ++f)
    if (p.annulus[f]) out["annuli"].push_back(s.face(f).id);
  ordered_json vs = ordered_json::object(), es = ordered_json::object(), fs = ordered_json::object();
  for (int v = 0; v < s.num_vertices(); ++v) vs[vertex_name(s, v)] = s.vertex_id(h.vertex[v]);
  for (int e = 0; e < s.num_edges(); ++e) es[std::to_string(s.edge(e).id)] = {s.edge(h.edge[e]).id, h.edge_sign[e]};
  for (int f = 0; f < s.num_faces(); ++f) fs[std::to_string(s.face(f).id)] = {s.face(h.face[f]).id, h.face_sign[f]};
  out["vertices"] = vs;
  out["edges"] = es;
  out["faces"] = fs;
  return out.dump(2) + "\n";
}

Report validate_report(const Instance& inst) {
  const auto& s = inst.surface;
  auto axioms = validate_axioms(s, inst.function);
  auto cls = classify(s);
  Report r;
  r.data["vertices"] = s.num_vertices();
  r.data["edges"] = s.num_edges();
  r.data["faces"] = s.num_faces();
  r.data["target"] = inst.function.circle_valued() ? "circle" : "line";
  r.data["surface"] = class_json(cls);
  r.data["interior_vertices"] = axioms.interior_vertices;
  r.data["critical_vertices"] = axioms.critical.size();
  r.data["boundary_levels"] = json::array();
  for (const auto& lv : axioms.boundary_levels) r.data["boundary_levels"].push_back(format_rational(lv));

  std::ostringstream t;
  t << "valid instance: " << s.num_vertices() << " vertices, " << s.num_edges() << " edges, " << s.num_faces()
    << " faces\n";
  t << "surface: " << cls.name() << " (chi " << cls.euler_char << ")\n";
  t << "critical vertices: " << axioms.critical.size() << "\n";
  r.text = t.str();
  return r;
}

Report analyze_report(const Atlas& a) {
  const auto& s = a.surface;
  Report r;
  r.data["surface"] = class_json(a.surface_class);
  r.data["critical"] = json::array();
  std::ostringstream t;
  t << "surface: " << a.surface_class.name() << " (chi " << a.surface_class.euler_char << ")\n";
  t << "critical vertices:\n";
  for (const auto& cv : a.axioms.critical) {
    r.data["critical"].push_back({{"vertex", s.vertex_id(cv.vertex)},
                                  {"type", to_string(cv.type)},
                                  {"value", format_rational(a.function.value(cv.vertex))}});
    t << "  " << s.vertex_id(cv.vertex) << "  " << to_string(cv.type) << "  f = "
      << format_rational(a.function.value(cv.vertex)) << "\n";
  }
  r.data["levels"] = json::array();
  t << "special levels:\n";
  for (const auto& lv : a.levels) {
    std::vector<int> crit = lv.critical_vertices;
    r.data["levels"].push_back({{"value", format_rational(lv.value)},
                                {"critical", critical_ids(s, crit)},
                                {"boundary_circles", lv.boundary_circles.size()}});
    t << "  " << format_rational(lv.value) << "  critical [" << join(critical_ids(s, crit)) << "]  boundary circles "
      << lv.boundary_circles.size() << "\n";
  }
  r.data["components"] = json::array();
  t << "critical components:\n";
  for (int k = 0; k < a.num_components(); ++k) {
    const auto& c = a.components[k];
    std::map<std::string, int> kinds;
    for (const auto& leaf : c.leaves) ++kinds[leaf_kind(leaf.kind)];
    ordered_json leaves = ordered_json::object();
    for (const auto& [kind, n] : kinds) leaves[kind] = n;
    r.data["components"].push_back({{"index", k},
                                    {"level", format_rational(c.level)},
                                    {"critical", critical_ids(s, c.critical_vertices)},
                                    {"leaves", leaves}});
    t << "  K" << k << "  f = " << format_rational(c.level) << "  critical [" << join(critical_ids(s, c.critical_vertices))
      << "]  " << c.leaves.size() << " leaves\n";
  }
  r.text = t.str();
  return r;
}

Report atoms_report(const Atlas& a) {
  const auto& s = a.surface;
  Report r;
  r.data["surface"] = class_json(a.surface_class);
  r.data["components"] = json::array();
  std::ostringstream t;
  t << "surface: " << a.surface_class.name() << " (chi " << a.surface_class.euler_char << ")\n";
  t << "  K    level      critical        atom chi  nbhd chi  nbhd\n";
  for (int k = 0; k < a.num_components(); ++k) {
    const auto& at = a.atoms[k];
    const auto& cn = a.canonical[k];
    r.data["components"].push_back({{"index", k},
                                    {"level", format_rational(a.components[k].level)},
                                    {"critical", critical_ids(s, a.components[k].critical_vertices)},
                                    {"atom", subsurface_json(at.region)},
                                    {"canonical", subsurface_json(cn.region)},
                                    {"added_disks", cn.disks.size()},
                                    {"is_disk", cn.is_disk}});
    char line[160];
    std::snprintf(line, sizeof line, "  K%-3d %-10s %-15s %8d  %8d  %s\n", k,
                  format_rational(a.components[k].level).c_str(),
                  join(critical_ids(s, a.components[k].critical_vertices)).c_str(), at.region.euler_char,
                  cn.region.euler_char, cn.region.connected() ? cn.region.cls.name().c_str() : "?");
    t << line;
  }
  try {
    auto cs = chi_sum_check(a);
    std::vector<int> idx = cs.non_disk;
    r.data["chi_sum"] = {{"non_disk", idx},
                         {"chi_surface", cs.chi_surface},
                         {"chi_sum", cs.chi_sum},
                         {"complement_cylinders", cs.complement_cylinders},
                         {"equal", cs.equal}};
    t << "chi sum over non-disk neighbourhoods: " << cs.chi_sum << " (chi(M) = " << cs.chi_surface << ")"
      << (cs.equal ? ", equal" : ", NOT equal") << "\n";
  } catch (const Error& e) {
    r.data["chi_sum"] = {{"skipped", e.what()}};
    t << "chi sum check skipped: " << e.what() << "\n";
  }
  r.text = t.str();
  return r;
}

Report decomposition_report(const DecompositionReport& rep) {
  const auto& a = rep.atlas;
  const auto& s = a.surface;
  Report r;
  std::ostringstream t;
  r.data["surface"] = class_json(a.surface_class);
  r.data["negative_components"] = json::array();
  t << "surface: " << a.surface_class.name() << " (chi " << a.surface_class.euler_char << ")\n";
  t << "negative neighbourhoods:";
  for (int k : rep.negative_components) {
    r.data["negative_components"].push_back({{"index", k},
                                             {"level", format_rational(a.components[k].level)},
                                             {"critical", critical_ids(s, a.components[k].critical_vertices)},
                                             {"chi", a.canonical[k].region.euler_char}});
    t << " K" << k << " (chi " << a.canonical[k].region.euler_char << ")";
  }
  t << "\n";
  r.data["absorbed_cylinders"] = rep.absorbed.size();
  r.data["m_neg"] = json::array();
  t << "M_neg: " << rep.m_neg_components.size() << " components, " << rep.absorbed.size() << " absorbed cylinders\n";
  for (std::size_t i = 0; i < rep.m_neg_components.size(); ++i) {
    r.data["m_neg"].push_back(subsurface_json(rep.m_neg_components[i]));
    t << "  M" << i << ": " << rep.m_neg_components[i].cls.name() << ", chi " << rep.m_neg_components[i].euler_char
      << ", " << rep.m_neg_components[i].boundary.size() << " boundary circles\n";
  }
  r.data["pieces"] = json::array();
  t << "pieces: " << rep.pieces.size() << "\n";
  for (std::size_t i = 0; i < rep.pieces.size(); ++i) {
    const auto& p = rep.pieces[i];
    r.data["pieces"].push_back({{"class", p.cls.name()},
                                {"chi", p.cls.euler_char},
                                {"critical", critical_ids(s, p.critical_vertices)},
                                {"boundary_in_mneg", p.boundary_in_mneg},
                                {"has_extremum", p.has_extremum}});
    t << "  B" << i << ": " << p.cls.name() << ", critical [" << join(critical_ids(s, p.critical_vertices)) << "]"
      << (p.boundary_in_mneg ? "" : ", meets the boundary of M") << "\n";
  }
  auto fac = orbit_factorization(rep);
  r.data["factorization"] = json::array();
  for (const auto& f : fac.factors)
    r.data["factorization"].push_back(
        {{"piece", f.piece}, {"surface", f.surface}, {"minima", f.minima}, {"maxima", f.maxima}, {"saddles", f.saddles}});
  t << "factors:";
  if (fac.trivial()) t << " none (trivial)";
  for (const auto& f : fac.factors)
    t << " [B" << f.piece << " " << f.surface << ": " << f.minima << " min, " << f.maxima << " max, " << f.saddles
      << " saddle]";
  t << "\n";
  r.text = t.str();
  return r;
}

Report lefschetz_report(const AutomorphismInput& in, bool assume_isotopic) {
  const auto& p = in.partition;
  const auto& h = in.map;
  Report r;
  std::ostringstream t;
  auto cm = induced_chain_map(p, h);
  auto ha = homology_action(p, cm);
  auto inv = invariant_cells(p, h);
  int lc = lefschetz_chain(cm), lh = lefschetz_homology(p, cm);
  bool trivial = is_delta_trivial(h);
  auto orient = preserves_orientation(p, h);

  r.data["partition"] = {{"chi", p.euler_char()},
                         {"boundary", p.boundary_count()},
                         {"annuli", p.num_annuli()},
                         {"orientable", p.orientable()}};
  r.data["chain_traces"] = {cm.h[0].trace(), cm.h[1].trace(), cm.h[2].trace()};
  r.data["betti"] = ha.betti;
  r.data["homology_traces"] = {format_rational(ha.trace[0]), format_rational(ha.trace[1]),
                               format_rational(ha.trace[2])};
  r.data["homology_identity"] = ha.identity;
  r.data["lefschetz_chain"] = lc;
  r.data["lefschetz_homology"] = lh;
  r.data["invariant_cells"] = {{"plus", inv.plus}, {"minus", inv.minus}, {"total", inv.total()}};
  r.data["delta_trivial"] = trivial;
  r.data["preserves_orientation"] = orient ? json(*orient) : json(nullptr);

  t << "partition: chi " << p.euler_char() << ", " << p.boundary_count() << " boundary circles, "
    << (p.orientable() ? "orientable" : "non-orientable") << "\n";
  t << "L(h) = " << lc << " on chains, " << lh << " on homology\n";
  t << "invariant cells: " << inv.count(0) << " vertices, " << inv.count(1) << " edges, " << inv.count(2)
    << " faces\n";
  t << "delta-trivial: " << (trivial ? "yes" : "no") << "\n";

  if (p.closed() && p.orientable() && orient.value_or(false) && !trivial) {
    auto k = check_kLh(p, h);
    r.data["kLh"] = {{"invariant_total", k.invariant_total},
                     {"lefschetz", k.lefschetz},
                     {"per_dimension", k.per_dimension},
                     {"sign_pattern", k.sign_pattern},
                     {"nonnegative", k.nonnegative},
                     {"holds", k.holds}};
    t << "invariant cells = L(h): " << (k.holds ? "holds" : "FAILS") << " (" << k.invariant_total << " vs "
      << k.lefschetz << ")\n";
  }
  if (assume_isotopic) {
    auto v = triviality_theorem(p, h, true);
    r.data["triviality"] = {{"outcome", to_string(v.outcome)},
                            {"chi", v.chi},
                            {"boundary", v.boundary_count},
                            {"double_cover", v.double_cover},
                            {"closed_chi", v.closed_chi},
                            {"closed_lefschetz", v.closed_lefschetz},
                            {"annulus_lower_bound", v.annulus_lower_bound},
                            {"invariant_cells", v.invariant_cells},
                            {"assumed", v.assumed},
                            {"verified", v.verified}};
    t << "assuming h is isotopic to the identity: " << to_string(v.outcome) << "\n";
    for (const auto& line : v.verified) t << "  verified: " << line << "\n";
  } else {
    r.data["triviality"] = nullptr;
  }
  r.text = t.str();
  return r;
}

}  // namespace plsurf
