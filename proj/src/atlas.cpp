#include "plsurf/atlas.hpp"

#include <algorithm>
#include <map>

#include "plsurf/errors.hpp"

namespace plsurf {

namespace {

Rational floor_of(const Rational& x) { return x - mod_one(x); }
Rational ceil_of(const Rational& x) { return -floor_of(-x); }

bool covers_all(const SurfaceComplex& s, const FaceSet& faces) {
  return static_cast<int>(faces.size()) == s.num_faces();
}

FaceSet unite(const FaceSet& a, const FaceSet& b) {
  FaceSet out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool disjoint(const FaceSet& a, const FaceSet& b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i == *j) return false;
    if (*i < *j)
      ++i;
    else
      ++j;
  }
  return true;
}

}  // namespace

std::vector<Band> choose_bands(const std::vector<Rational>& levels, bool circle) {
  int n = static_cast<int>(levels.size());
  std::vector<Band> out;
  for (int i = 0; i < n; ++i) {
    const Rational& c = levels[i];
    Rational gl, gr;
    if (circle) {
      if (n == 1) {
        gl = gr = 1;
      } else {
        gl = mod_one(c - levels[(i + n - 1) % n]);
        gr = mod_one(levels[(i + 1) % n] - c);
      }
    } else {
      bool has_l = i > 0, has_r = i + 1 < n;
      if (has_l) gl = c - levels[i - 1];
      if (has_r) gr = levels[i + 1] - c;
      if (!has_l && !has_r) gl = gr = 2;
      if (!has_l) gl = gr;
      if (!has_r) gr = gl;
    }
    out.push_back({c, c - gl / 4, c + gr / 4});
  }
  return out;
}

FaceSet faces_in_band(const Atlas& a, const Band& band) {
  const auto& r = a.refined;
  FaceSet out;
  for (int fc = 0; fc < r.complex.num_faces(); ++fc) {
    auto lift = face_lift(r.complex, r.function, fc);
    auto [lo, hi] = std::minmax_element(lift.begin(), lift.end());
    Rational k = 0;
    if (r.function.circle_valued()) k = ceil_of(band.lo - *lo);
    if (band.lo <= *lo + k && *hi + k <= band.hi) out.push_back(fc);
  }
  return out;
}

FaceSet component_faces(const Atlas& a, int component) {
  const auto& rc = a.refined.complex;
  FaceSet out;
  for (int v : a.components[component].vertices)
    for (SideRef c : rc.link(v).corners) out.push_back(c.face);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Atom atom(const Atlas& a, int component) {
  const auto& rc = a.refined.complex;
  const auto& rf = a.refined.function;
  int lv = a.component_level[component];
  const Band& band = a.bands[lv];
  FaceSet around = component_faces(a, component);
  FaceSet in_band = faces_in_band(a, band);
  if (!std::includes(in_band.begin(), in_band.end(), around.begin(), around.end()))
    fail(ErrorCode::InvariantViolation, "faces around a critical component leave its band");
  FaceSet mine;
  for (auto& comp : connected_components(rc, in_band))
    if (std::binary_search(comp.begin(), comp.end(), around.front())) mine = std::move(comp);
  if (!std::includes(mine.begin(), mine.end(), around.begin(), around.end()))
    fail(ErrorCode::InvariantViolation, "critical component meets two components of its band");

  Atom at{component, lv, make_subsurface(rc, mine)};

  const auto& own = a.components[component].critical_vertices;
  for (int fc : mine)
    for (int i = 0; i < rc.face_size(fc); ++i) {
      int v = rc.side_start(fc, i);
      const auto& o = a.refined.vertex_origin[v];
      if (o.dim != 0) continue;
      bool crit = std::any_of(a.axioms.critical.begin(), a.axioms.critical.end(),
                              [&](const CriticalVertex& cv) { return cv.vertex == o.index; });
      if (crit && !std::binary_search(own.begin(), own.end(), o.index))
        fail(ErrorCode::BandContainsOtherCritical,
             "atom contains critical vertex " + std::to_string(a.surface.vertex_id(o.index)));
    }

  // The boundary of the atom is exactly its part at the band ends.
  Rational lo = rf.normalize(band.lo), hi = rf.normalize(band.hi);
  for (const auto& cyc : at.region.boundary)
    for (Side sd : cyc) {
      const auto& e = rc.edge(sd.edge);
      for (int v : {e.tail, e.head})
        if (rf.value(v) != lo && rf.value(v) != hi)
          fail(ErrorCode::InvariantViolation, "atom boundary leaves the band ends");
    }
  std::vector<char> on_bd(rc.num_vertices(), 0);
  for (const auto& cyc : at.region.boundary)
    for (Side sd : cyc) on_bd[rc.edge(sd.edge).tail] = on_bd[rc.edge(sd.edge).head] = 1;
  for (int fc : mine)
    for (int i = 0; i < rc.face_size(fc); ++i) {
      int v = rc.side_start(fc, i);
      if ((rf.value(v) == lo || rf.value(v) == hi) && !on_bd[v])
        fail(ErrorCode::InvariantViolation, "band end level passes through the interior of an atom");
    }
  return at;
}

CanonicalNbhd canonical_neighborhood(const Atlas& a, const Atom& at) {
  const auto& rc = a.refined.complex;
  CanonicalNbhd cn;
  cn.component = at.component;
  if (covers_all(rc, at.region.faces)) {
    cn.region = at.region;
  } else {
    FaceSet faces = at.region.faces;
    for (const auto& comp : complement_closure(rc, at.region))
      if (comp.is_disk()) {
        cn.disks.push_back(comp.faces);
        faces = unite(faces, comp.faces);
      }
    cn.region = cn.disks.empty() ? at.region : make_subsurface(rc, faces);
  }
  cn.is_disk = cn.region.is_disk();
  cn.is_whole = covers_all(rc, cn.region.faces);
  if (!cn.is_disk && !cn.is_whole && !is_incompressible(rc, cn.region))
    fail(ErrorCode::InvariantViolation, "non-disk canonical neighbourhood is compressible");
  return cn;
}

bool is_incompressible(const SurfaceComplex& s, const Subsurface& n) {
  for (const auto& comp : connected_components(s, n.faces))
    if (make_subsurface(s, comp).is_disk())
      fail(ErrorCode::DiskComponentInN, "a component of the subsurface is a disk");
  if (covers_all(s, n.faces)) return true;
  for (const auto& comp : complement_closure(s, n))
    if (comp.is_disk()) return false;
  return true;
}

Subsurface canonical_completion(const SurfaceComplex& s, const Subsurface& r) {
  if (covers_all(s, r.faces)) return r;
  FaceSet faces = r.faces;
  bool grew = false;
  for (const auto& comp : complement_closure(s, r))
    if (comp.is_disk()) {
      faces = unite(faces, comp.faces);
      grew = true;
    }
  return grew ? make_subsurface(s, faces) : r;
}

bool contained_in_disk(const SurfaceComplex& s, const Subsurface& r) {
  return canonical_completion(s, r).is_disk();
}

Atlas build_atlas(const SurfaceComplex& s, const PLFunction& f, const std::vector<Rational>& extra_levels) {
  Atlas a;
  a.surface = s;
  a.function = f;
  a.surface_class = classify(s);
  a.axioms = validate_axioms(s, f);
  a.levels = critical_levels(a.axioms, f);
  std::vector<Rational> values;
  for (const auto& lv : a.levels) values.push_back(lv.value);
  a.bands = choose_bands(values, f.circle_valued());
  std::vector<Rational> cuts = values;
  cuts.insert(cuts.end(), extra_levels.begin(), extra_levels.end());
  for (const auto& b : a.bands) {
    cuts.push_back(b.lo);
    cuts.push_back(b.hi);
  }
  a.refined = refine(s, f, cuts);
  a.components = critical_components(s, f, a.refined, a.levels);
  std::map<Rational, int> level_index;
  for (std::size_t i = 0; i < a.levels.size(); ++i) level_index[a.levels[i].value] = static_cast<int>(i);
  for (const auto& cc : a.components) a.component_level.push_back(level_index.at(cc.level));
  for (int k = 0; k < a.num_components(); ++k) a.atoms.push_back(atom(a, k));
  for (int i = 0; i < a.num_components(); ++i)
    for (int j = i + 1; j < a.num_components(); ++j)
      if (!disjoint(a.atoms[i].region.faces, a.atoms[j].region.faces))
        fail(ErrorCode::InvariantViolation, "atoms of distinct critical components overlap");
  for (const auto& at : a.atoms) a.canonical.push_back(canonical_neighborhood(a, at));
  return a;
}

ChiSumReport chi_sum_check(const Atlas& a) {
  if (a.surface_class.is_disk()) fail(ErrorCode::SurfaceIsDisk, "the surface is a disk");
  if (a.surface_class.is_sphere()) fail(ErrorCode::SurfaceIsSphere, "the surface is a sphere");
  const auto& rc = a.refined.complex;
  ChiSumReport rep;
  rep.chi_surface = a.surface_class.euler_char;
  FaceSet all;
  for (int k = 0; k < a.num_components(); ++k) {
    const auto& cn = a.canonical[k];
    if (cn.is_disk) continue;
    for (int j : rep.non_disk)
      if (!disjoint(a.canonical[j].region.faces, cn.region.faces))
        fail(ErrorCode::InvariantViolation, "two non-disk canonical neighbourhoods overlap");
    rep.non_disk.push_back(k);
    rep.chi_sum += cn.region.euler_char;
    all = unite(all, cn.region.faces);
  }
  if (!covers_all(rc, all)) {
    Subsurface u = all.empty() ? Subsurface{} : make_subsurface(rc, all);
    if (all.empty()) {
      FaceSet every(rc.num_faces());
      for (int fc = 0; fc < rc.num_faces(); ++fc) every[fc] = fc;
      rep.complement_cylinders = make_subsurface(rc, every).cls.is_cylinder();
    } else {
      for (const auto& comp : complement_closure(rc, u))
        rep.complement_cylinders = rep.complement_cylinders && comp.connected() && comp.cls.is_cylinder();
    }
  }
  rep.equal = rep.chi_sum == rep.chi_surface;
  return rep;
}

std::optional<int> parent_canonical(const Atlas& a, int component) {
  const auto& own = a.canonical[component];
  if (!own.is_disk) return component;
  for (int k = 0; k < a.num_components(); ++k) {
    const auto& cn = a.canonical[k];
    if (cn.is_disk) continue;
    if (std::includes(cn.region.faces.begin(), cn.region.faces.end(), own.region.faces.begin(),
                      own.region.faces.end()))
      return k;
  }
  if (a.surface_class.is_disk()) return std::nullopt;
  fail(ErrorCode::InvariantViolation, "disk canonical neighbourhood has no non-disk parent");
}

}  // namespace plsurf
