#include "doctest.h"

#include <algorithm>

#include "plsurf/atlas.hpp"
#include "plsurf/errors.hpp"
#include "plsurf/generate.hpp"
#include "plsurf/shapes.hpp"

using namespace plsurf;

namespace {

Rational q(int p, int d = 1) { return Rational(p) / d; }

int raw_chi(const SurfaceComplex& s) { return s.num_vertices() - s.num_edges() + s.num_faces(); }

// Expected chi of an atom: it retracts onto its critical component, which
// contributes 1 per extremum and -m per saddle of multiplicity m.
int morse_chi(const Atlas& a, int k) {
  int total = 0;
  for (int v : a.components[k].critical_vertices)
    for (const auto& cv : a.axioms.critical)
      if (cv.vertex == v) total += cv.type.kind == VertexKind::Saddle ? -cv.type.multiplicity : 1;
  return total;
}

FaceSet grid_faces(int n, std::initializer_list<std::pair<int, int>> cells) {
  FaceSet out;
  for (auto [i, j] : cells) out.push_back(i + n * j);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("bands shrink the gaps to the neighbouring levels") {
  auto b = choose_bands({q(0), q(1)}, false);
  REQUIRE(b.size() == 2);
  CHECK(b[0].lo == q(-1, 4));
  CHECK(b[0].hi == q(1, 4));
  CHECK(b[1].lo == q(3, 4));
  CHECK(b[1].hi == q(5, 4));

  auto lone = choose_bands({q(0)}, false);
  CHECK(lone[0].lo == q(-1, 2));
  CHECK(lone[0].hi == q(1, 2));

  auto uneven = choose_bands({q(0), q(1), q(5)}, false);
  CHECK(uneven[1].lo == q(3, 4));
  CHECK(uneven[1].hi == q(2));
  CHECK(uneven[2].hi == q(6));

  auto circ = choose_bands({q(0), q(1, 2)}, true);
  for (const auto& band : circ) CHECK(band.hi - band.lo == q(1, 4));
  CHECK(circ[0].lo == q(-1, 8));

  auto one = choose_bands({q(1, 3)}, true);
  CHECK(one[0].lo == q(1, 12));
  CHECK(one[0].hi == q(7, 12));
}

TEST_CASE("atoms retract onto their critical components") {
  for (const auto& name : named_kinds()) {
    CAPTURE(name);
    auto inst = generate_named(name);
    auto a = build_atlas(inst.surface, inst.function);
    REQUIRE(a.num_components() == static_cast<int>(a.atoms.size()));
    for (int k = 0; k < a.num_components(); ++k) {
      CAPTURE(k);
      CHECK(a.atoms[k].region.connected());
      CHECK(a.atoms[k].region.euler_char == morse_chi(a, k));
      const auto& big = a.canonical[k].region.faces;
      const auto& small = a.atoms[k].region.faces;
      CHECK(std::includes(big.begin(), big.end(), small.begin(), small.end()));
    }
  }
}

TEST_CASE("euler characteristic splits over non-disk canonical neighbourhoods") {
  SUBCASE("torus") {
    auto inst = generate_named("torus");
    auto a = build_atlas(inst.surface, inst.function);
    auto rep = chi_sum_check(a);
    CHECK(rep.chi_surface == raw_chi(inst.surface));
    CHECK(rep.chi_sum == 0);
    CHECK(rep.non_disk.size() == 2);
    CHECK(rep.equal);
    CHECK(rep.complement_cylinders);
    for (int k : rep.non_disk) CHECK(a.canonical[k].region.cls.is_cylinder());
  }
  SUBCASE("genus two") {
    auto inst = generate_named("genus2");
    auto a = build_atlas(inst.surface, inst.function);
    auto rep = chi_sum_check(a);
    CHECK(raw_chi(inst.surface) == -2);
    CHECK(rep.chi_sum == -2);
    CHECK(rep.equal);
    CHECK(rep.complement_cylinders);
    int negative = 0;
    for (int k : rep.non_disk) negative += a.canonical[k].region.euler_char < 0;
    CHECK(negative == 2);
  }
  SUBCASE("pants") {
    auto inst = generate_named("pants");
    auto a = build_atlas(inst.surface, inst.function);
    auto rep = chi_sum_check(a);
    REQUIRE(rep.non_disk.size() == 1);
    CHECK(rep.chi_sum == -1);
    CHECK(rep.equal);
    CHECK(a.canonical[rep.non_disk[0]].region.cls.boundary_count == 3);
  }
  SUBCASE("parameter sweep") {
    for (int g = 0; g <= 2; ++g)
      for (int k = 0; k <= 2; ++k)
        for (int b = 0; b <= 2; ++b) {
          GenerateParams p;
          p.genus = g;
          p.crosscaps = k;
          p.boundary = b;
          p.options.seed = 3;
          auto inst = generate(p);
          auto a = build_atlas(inst.surface, inst.function);
          if (a.surface_class.is_disk() || a.surface_class.is_sphere()) continue;
          CAPTURE(g);
          CAPTURE(k);
          CAPTURE(b);
          auto rep = chi_sum_check(a);
          CHECK(rep.chi_sum == raw_chi(inst.surface));
          CHECK(rep.complement_cylinders);
          for (int c = 0; c < a.num_components(); ++c) CHECK(parent_canonical(a, c).has_value());
        }
  }
}

TEST_CASE("disk and sphere are rejected by the chi sum") {
  GenerateParams p;
  p.boundary = 1;
  auto disk = generate(p);
  auto a = build_atlas(disk.surface, disk.function);
  CHECK_THROWS_AS(chi_sum_check(a), Error);
  try {
    chi_sum_check(a);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SurfaceIsDisk);
  }
  for (int c = 0; c < a.num_components(); ++c) CHECK_FALSE(parent_canonical(a, c).has_value());

  auto sphere = generate_named("sphere");
  auto b = build_atlas(sphere.surface, sphere.function);
  try {
    chi_sum_check(b);
    FAIL("expected SurfaceIsSphere");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SurfaceIsSphere);
  }
}

TEST_CASE("incompressibility on a torus grid") {
  auto t = shapes::torus_grid(5, 5);
  auto column = make_subsurface(t, grid_faces(5, {{0, 0}, {0, 1}, {0, 2}, {0, 3}, {0, 4}}));
  CHECK(column.cls.is_cylinder());
  CHECK(is_incompressible(t, column));
  CHECK_FALSE(contained_in_disk(t, column));

  auto ring = make_subsurface(
      t, grid_faces(5, {{0, 0}, {1, 0}, {2, 0}, {0, 1}, {2, 1}, {0, 2}, {1, 2}, {2, 2}}));
  CHECK(ring.cls.is_cylinder());
  CHECK_FALSE(is_incompressible(t, ring));
  CHECK(contained_in_disk(t, ring));
  CHECK(canonical_completion(t, ring).faces.size() == 9);

  auto square = make_subsurface(t, grid_faces(5, {{3, 3}}));
  try {
    is_incompressible(t, square);
    FAIL("expected DiskComponentInN");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DiskComponentInN);
  }

  FaceSet all(t.num_faces());
  for (int i = 0; i < t.num_faces(); ++i) all[i] = i;
  CHECK(is_incompressible(t, make_subsurface(t, all)));
}
