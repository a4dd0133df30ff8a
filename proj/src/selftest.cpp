#include "plsurf/selftest.hpp"

#include <chrono>
#include <sstream>

#include "plsurf/atlas.hpp"
#include "plsurf/cell_automorphism.hpp"
#include "plsurf/decomposition.hpp"
#include "plsurf/errors.hpp"
#include "plsurf/shapes.hpp"

namespace plsurf {

namespace {

std::string label(const Instance& in) {
  std::string out;
  for (const auto& [k, v] : in.metadata) out += (out.empty() ? "" : " ") + k + "=" + v;
  return out;
}

struct Check {
  SelftestCheck result;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  explicit Check(std::string name) { result.name = std::move(name); }

  void violation(const std::string& what) {
    if (result.violations++ == 0) result.detail = what;
  }

  SelftestCheck finish(const std::string& summary) {
    result.passed = result.violations == 0 && result.cases > 0;
    if (result.violations == 0) result.detail = summary;
    result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
  }
};

SelftestCheck hopf_trace() {
  Check c("hopf trace equality");
  std::vector<SurfaceComplex> closed{shapes::tetrahedron(),      shapes::octahedron(),       shapes::cube(),
                                     shapes::icosahedron(),      shapes::torus_grid(3, 3),   shapes::torus_grid(4, 4),
                                     shapes::orientable_word(2), shapes::orientable_word(3), shapes::rp2_6(),
                                     shapes::antipodal_polygon(3), shapes::klein_grid(4, 3), shapes::crosscap_word(2),
                                     shapes::crosscap_word(3)};
  for (const auto& s : closed) {
    auto p = partition_of(s);
    for (const auto& h : enumerate_automorphisms(p)) {
      ++c.result.cases;
      auto cm = induced_chain_map(p, h);
      int lc = lefschetz_chain(cm), lh = lefschetz_homology(p, cm);
      if (lc != lh) c.violation(classify(s).name() + ": chain " + std::to_string(lc) + " != homology " + std::to_string(lh));
    }
  }
  return c.finish(std::to_string(c.result.cases) + " automorphisms");
}

SelftestCheck fixed_cells() {
  Check c("invariant cells equal L(h)");
  for (const auto& s : {shapes::octahedron(), shapes::torus_grid(4, 4), shapes::icosahedron()}) {
    auto p = partition_of(s);
    for (const auto& h : enumerate_automorphisms(p)) {
      if (is_delta_trivial(h) || !*preserves_orientation(p, h)) continue;
      ++c.result.cases;
      auto v = check_kLh(p, h);
      if (!v.holds)
        c.violation(classify(s).name() + ": " + std::to_string(v.invariant_total) + " invariant cells, L(h) = " +
                    std::to_string(v.lefschetz));
    }
  }
  return c.finish(std::to_string(c.result.cases) + " automorphisms");
}

SelftestCheck chi_sum(const std::vector<Atlas>& atlases) {
  Check c("chi(M) equals the sum over non-disk neighbourhoods");
  int skipped = 0;
  for (const auto& a : atlases) {
    if (a.surface_class.is_sphere() || a.surface_class.is_disk()) {
      ++skipped;
      continue;
    }
    ++c.result.cases;
    try {
      auto r = chi_sum_check(a);
      if (!r.equal || !r.complement_cylinders)
        c.violation(a.surface_class.name() + ": sum " + std::to_string(r.chi_sum) + " vs " +
                    std::to_string(r.chi_surface));
    } catch (const Error& e) {
      c.violation(a.surface_class.name() + ": " + e.what());
    }
  }
  return c.finish(std::to_string(c.result.cases) + " instances, " + std::to_string(skipped) + " spheres skipped");
}

SelftestCheck mneg(const std::vector<Instance>& corpus, const std::vector<Atlas>& atlases) {
  Check c("pieces outside M_neg");
  int pieces = 0;
  for (std::size_t i = 0; i < atlases.size(); ++i) {
    if (atlases[i].surface_class.euler_char >= 0) continue;
    ++c.result.cases;
    try {
      auto rep = build_Mneg(atlases[i]);
      pieces += static_cast<int>(rep.pieces.size());
    } catch (const Error& e) {
      c.violation(label(corpus[i]) + ": " + e.what());
    }
  }
  return c.finish(std::to_string(c.result.cases) + " instances, " + std::to_string(pieces) + " pieces");
}

SelftestCheck negativity(const std::vector<Atlas>& atlases) {
  Check c("negative neighbourhoods and incompressible bounds");
  for (const auto& a : atlases) {
    ++c.result.cases;
    int chi = a.surface_class.euler_char;
    bool some_negative = false;
    for (int k = 0; k < a.num_components(); ++k) {
      const auto& n = a.canonical[k];
      if (n.is_disk) continue;
      if (n.region.euler_char < 0) some_negative = true;
      if (is_incompressible(a.refined.complex, n.region) && chi > n.region.euler_char)
        c.violation(a.surface_class.name() + ": chi(M) = " + std::to_string(chi) + " > chi(N) = " +
                    std::to_string(n.region.euler_char));
    }
    if ((chi < 0) != some_negative) c.violation(a.surface_class.name() + ": negativity does not match chi(M)");
  }
  return c.finish(std::to_string(c.result.cases) + " instances");
}

SelftestCheck double_covers() {
  Check c("orientation double covers");
  for (const auto& s : {shapes::klein_grid(4, 3), shapes::rp2_6()}) {
    auto p = partition_of(s);
    auto dc = orientation_double_cover(p);
    if (dc.cover.euler_char() != 2 * p.euler_char()) c.violation(classify(s).name() + ": chi does not double");
    for (const auto& h : enumerate_automorphisms(p)) {
      ++c.result.cases;
      auto up = lift(p, dc, h);
      if (invariant_cells(dc.cover, up).count(2) != 2 * invariant_cells(p, h).plus[2])
        c.violation(classify(s).name() + ": invariant 2-cells do not double");
    }
  }
  return c.finish(std::to_string(c.result.cases) + " lifts");
}

SelftestCheck shrinking() {
  Check c("shrinking boundary circles");
  RawComplex eight{{0}, {{1, 0, 0}, {2, 0, 0}}, {{0, {1}}, {1, {2}}, {2, {-1, -2}}}};
  RawComplex loop{{0}, {{1, 0, 0}}, {{0, {1}}, {1, {-1}}}};
  std::vector<CellPartition> parts{{SurfaceComplex::build(eight), {1, 1, 1}}, {SurfaceComplex::build(loop), {1, 1}}};
  auto pants = generate_named("pants");
  auto a = build_atlas(pants.surface, pants.function);
  for (int k : negative_components(a)) parts.push_back(nbhd_partition(a, k).partition);
  for (const auto& p : parts) {
    ++c.result.cases;
    auto sp = shrink_boundary(p);
    if (sp.closed.euler_char() != p.euler_char() + p.boundary_count())
      c.violation("chi " + std::to_string(sp.closed.euler_char()) + " != " + std::to_string(p.euler_char()) + " + " +
                  std::to_string(p.boundary_count()));
  }
  return c.finish(std::to_string(c.result.cases) + " partitions");
}

SelftestCheck flagship() {
  Check c("genus two decomposition");
  auto in = generate_named("genus2");
  auto rep = build_Mneg(in.surface, in.function);
  c.result.cases = 1;
  if (rep.negative_components.size() != 2)
    c.violation(std::to_string(rep.negative_components.size()) + " negative components");
  if (rep.m_neg_components.size() != 2) c.violation(std::to_string(rep.m_neg_components.size()) + " M_neg components");
  auto dot = to_dot(rep);
  if (dot.rfind("graph decomposition {", 0) != 0 || dot.substr(dot.size() - 2) != "}\n") c.violation("malformed DOT");
  return c.finish("2 negative components, 2 M_neg components, " + std::to_string(rep.pieces.size()) + " pieces");
}

}  // namespace

std::vector<Instance> selftest_corpus() {
  std::vector<Instance> out;
  for (int g = 0; g <= 3; ++g)
    for (int k = 0; k <= 2; ++k)
      for (int b = 0; b <= 3; ++b)
        for (int d = 0; d <= 1; ++d) {
          if (g == 0 && k == 0 && b == 1) continue;  // disk
          GenerateParams gp{g, k, b, d, 2, {}};
          gp.options.seed = static_cast<std::uint32_t>(7 * g + 5 * k + 3 * b + d);
          out.push_back(generate(gp));
        }
  return out;
}

std::vector<SelftestCheck> run_selftest(const std::function<void(const SelftestCheck&)>& progress) {
  std::vector<SelftestCheck> out;
  auto record = [&](SelftestCheck c) {
    if (progress) progress(c);
    out.push_back(std::move(c));
  };
  record(hopf_trace());
  record(fixed_cells());
  auto corpus = selftest_corpus();
  std::vector<Atlas> atlases;
  for (const auto& in : corpus) atlases.push_back(build_atlas(in.surface, in.function));
  record(chi_sum(atlases));
  record(mneg(corpus, atlases));
  record(negativity(atlases));
  record(double_covers());
  record(shrinking());
  record(flagship());
  return out;
}

}  // namespace plsurf
