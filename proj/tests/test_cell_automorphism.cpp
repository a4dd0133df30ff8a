#include "doctest.h"

#include <algorithm>
#include <cstdint>

#include "plsurf/cell_automorphism.hpp"
#include "plsurf/errors.hpp"
#include "plsurf/generate.hpp"
#include "plsurf/shapes.hpp"

using namespace plsurf;

namespace {

// Rank over GF(p) of a dense integer matrix; independent of the library's
// rational elimination.
int rank_mod_p(std::vector<std::vector<int>> m, std::int64_t p = 1000003) {
  int rows = static_cast<int>(m.size());
  if (rows == 0) return 0;
  int cols = static_cast<int>(m[0].size());
  std::vector<std::vector<std::int64_t>> a(rows, std::vector<std::int64_t>(cols));
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) a[i][j] = ((m[i][j] % p) + p) % p;
  auto inv = [&](std::int64_t x) {
    std::int64_t r = 1, e = p - 2;
    while (e) {
      if (e & 1) r = r * x % p;
      x = x * x % p;
      e >>= 1;
    }
    return r;
  };
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int piv = r;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[r]);
    auto iv = inv(a[r][c]);
    for (auto& x : a[r]) x = x * iv % p;
    for (int i = 0; i < rows; ++i)
      if (i != r && a[i][c]) {
        auto f = a[i][c];
        for (int j = 0; j < cols; ++j) a[i][j] = ((a[i][j] - f * a[r][j]) % p + p) % p;
      }
    ++r;
  }
  return r;
}

std::array<int, 3> betti_oracle(const CellPartition& p) {
  auto c = chain_complex(p);
  int r1 = c.dims[1] ? rank_mod_p(c.d1.dense()) : 0;
  int r2 = c.dims[2] && c.dims[1] ? rank_mod_p(c.d2.dense()) : 0;
  return {c.dims[0] - r1, c.dims[1] - r1 - r2, c.dims[2] - r2};
}

const CellularAutomorphism* with_vertex_map(const std::vector<CellularAutomorphism>& all,
                                            const std::vector<int>& vmap) {
  for (const auto& h : all)
    if (h.vertex == vmap) return &h;
  return nullptr;
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::InvalidInput;
}

}  // namespace

TEST_CASE("rational betti numbers") {
  struct Row {
    const char* name;
    SurfaceComplex s;
    std::array<int, 3> betti;
  };
  std::vector<Row> rows{{"tetrahedron", shapes::tetrahedron(), {1, 0, 1}},
                        {"torus", shapes::torus_grid(4, 4), {1, 2, 1}},
                        {"klein", shapes::klein_grid(4, 4), {1, 1, 0}},
                        {"rp2", shapes::rp2_6(), {1, 0, 0}},
                        {"genus2", shapes::orientable_word(2), {1, 4, 1}},
                        {"pants", shapes::pants(), {1, 2, 0}}};
  for (const auto& row : rows) {
    CAPTURE(row.name);
    auto p = partition_of(row.s);
    CHECK(betti_oracle(p) == row.betti);
    CHECK(betti_numbers(p) == row.betti);
  }
}

TEST_CASE("automorphism groups of small complexes") {
  struct Row {
    const char* name;
    SurfaceComplex s;
    int count;
  };
  std::vector<Row> rows{{"tetrahedron", shapes::tetrahedron(), 24}, {"octahedron", shapes::octahedron(), 48},
                        {"cube", shapes::cube(), 48},               {"icosahedron", shapes::icosahedron(), 120},
                        {"torus", shapes::torus_grid(4, 4), 128},   {"rp2", shapes::rp2_6(), 60}};
  for (const auto& row : rows) {
    CAPTURE(row.name);
    auto p = partition_of(row.s);
    auto all = enumerate_automorphisms(p);
    CHECK(all.size() == static_cast<std::size_t>(row.count));
    CHECK(is_delta_trivial(all.front()));
    for (const auto& h : all) {
      auto back = from_cell_maps(p, {h.vertex, h.edge, h.face, h.edge_sign, h.face_sign});
      CHECK(back.flag == h.flag);
    }
  }
}

TEST_CASE("octahedron quarter rotation") {
  auto p = partition_of(shapes::octahedron());
  auto all = enumerate_automorphisms(p);
  // +x -> +y -> -x -> -y -> +x, poles fixed
  const auto* h = with_vertex_map(all, {2, 3, 1, 0, 4, 5});
  REQUIRE(h != nullptr);
  CHECK(preserves_orientation(p, *h) == true);
  auto cm = induced_chain_map(p, *h);
  CHECK(cm.h[0].trace() == 2);
  CHECK(cm.h[1].trace() == 0);
  CHECK(cm.h[2].trace() == 0);
  CHECK(lefschetz_chain(cm) == 2);
  CHECK(lefschetz_homology(p, cm) == 2);
  auto inv = invariant_cells(p, *h);
  CHECK(inv.count(0) == 2);
  CHECK(inv.count(1) == 0);
  CHECK(inv.count(2) == 0);
  auto v = check_kLh(p, *h);
  CHECK(v.holds);
  CHECK(v.invariant_total == 2);

  auto id = invariant_cells(p, all.front());
  CHECK(id.count(0) == 6);
  CHECK(id.count(1) == 12);
  CHECK(id.count(2) == 8);
  CHECK(code_of([&] { check_kLh(p, all.front()); }) == ErrorCode::PreconditionFailed);

  int preserving = 0;
  for (const auto& g : all) preserving += *preserves_orientation(p, g);
  CHECK(preserving == 24);
}

TEST_CASE("torus translation has no invariant cells") {
  auto p = partition_of(shapes::torus_grid(4, 4));
  auto all = enumerate_automorphisms(p);
  std::vector<int> shift(16);
  for (int j = 0; j < 4; ++j)
    for (int i = 0; i < 4; ++i) shift[i + 4 * j] = (i + 1) % 4 + 4 * j;
  const auto* h = with_vertex_map(all, shift);
  REQUIRE(h != nullptr);
  auto cm = induced_chain_map(p, *h);
  for (int i = 0; i < 3; ++i) CHECK(cm.h[i].trace() == 0);
  CHECK(lefschetz_homology(p, cm) == 0);
  CHECK(invariant_cells(p, *h).total() == 0);
  auto v = check_kLh(p, *h);
  CHECK(v.holds);
  auto t = triviality_theorem(p, *h, true);
  CHECK(t.outcome == TrivialityVerdict::Outcome::ExactlyChiInvariant);
  CHECK(t.invariant_cells == 0);
  CHECK(code_of([&] { triviality_theorem(p, *h, false); }) == ErrorCode::PreconditionFailed);

  // a quarter turn swaps the two generators of H_1
  std::vector<int> quarter(16);
  for (int j = 0; j < 4; ++j)
    for (int i = 0; i < 4; ++i) quarter[i + 4 * j] = j + 4 * ((4 - i) % 4);
  const auto* r = with_vertex_map(all, quarter);
  REQUIRE(r != nullptr);
  CHECK_FALSE(homology_action(p, induced_chain_map(p, *r)).identity);
  CHECK(code_of([&] { triviality_theorem(p, *r, true); }) == ErrorCode::NecessaryConditionFailed);
}

TEST_CASE("Hopf trace and fixed-cell count on enumerated groups") {
  for (const auto& s : {shapes::octahedron(), shapes::icosahedron(), shapes::torus_grid(4, 4), shapes::cube(),
                        shapes::klein_grid(4, 3), shapes::rp2_6()}) {
    auto p = partition_of(s);
    for (const auto& h : enumerate_automorphisms(p)) {
      auto cm = induced_chain_map(p, h);
      CHECK(lefschetz_chain(cm) == lefschetz_homology(p, cm));
      auto pres = preserves_orientation(p, h);
      if (pres && *pres && !is_delta_trivial(h)) CHECK(check_kLh(p, h).holds);
    }
  }
}

TEST_CASE("propagation from a fixed edge") {
  auto p = partition_of(shapes::icosahedron());
  auto all = enumerate_automorphisms(p);
  auto cert = propagate_triviality(p, all.front(), 0);
  CHECK(cert.cells.size() == 12 + 30 + 20);
  CHECK(cert.flags_visited == 120);
  int rejected = 0;
  for (const auto& h : all) {
    if (is_delta_trivial(h)) continue;
    for (int e = 0; e < 30; ++e) {
      try {
        propagate_triviality(p, h, e);
        FAIL("non-trivial map propagated");
      } catch (const Error& err) {
        CHECK(err.code() == ErrorCode::HypothesisFails);
        ++rejected;
      }
    }
  }
  CHECK(rejected == 119 * 30);
}

TEST_CASE("orientation double covers") {
  auto k = partition_of(shapes::klein_grid(4, 4));
  auto dk = orientation_double_cover(k);
  auto ck = classify(dk.cover.shape);
  CHECK(ck.orientable);
  CHECK(ck.genus_or_crosscaps == 1);
  CHECK(dk.cover.euler_char() == 0);

  auto r = partition_of(shapes::rp2_6());
  auto dr = orientation_double_cover(r);
  CHECK(classify(dr.cover.shape).is_sphere());
  CHECK(dr.cover.euler_char() == 2 * r.euler_char());

  CHECK(code_of([] { orientation_double_cover(partition_of(shapes::torus_grid(3, 3))); }) ==
        ErrorCode::AlreadyOrientable);

  for (const auto* base : {&k, &r}) {
    const auto& dc = base == &k ? dk : dr;
    for (const auto& h : enumerate_automorphisms(*base)) {
      auto up = lift(*base, dc, h);
      CHECK(*preserves_orientation(dc.cover, up));
      auto down = invariant_cells(*base, h);
      auto lifted = invariant_cells(dc.cover, up);
      CHECK(lifted.plus[2] == 2 * down.plus[2]);
      CHECK(lifted.minus[2] == 0);
    }
  }
}

TEST_CASE("shrinking boundary circles") {
  // figure eight with three annuli: the saddle atom of a pair of pants
  RawComplex eight{{0}, {{1, 0, 0}, {2, 0, 0}}, {{0, {1}}, {1, {2}}, {2, {-1, -2}}}};
  CellPartition pants{SurfaceComplex::build(eight), {1, 1, 1}};
  CHECK(pants.euler_char() == -1);
  CHECK(pants.boundary_count() == 3);
  auto sp = shrink_boundary(pants);
  CHECK(sp.closed.euler_char() == 2);
  CHECK(sp.boundary_count == 3);

  RawComplex loop{{0}, {{1, 0, 0}}, {{0, {1}}, {1, {-1}}}};
  CellPartition ann{SurfaceComplex::build(loop), {1, 1}};
  CHECK(ann.euler_char() == 0);
  CHECK(shrink_boundary(ann).closed.euler_char() == 2);

  auto closed = partition_of(shapes::octahedron());
  auto sc = shrink_boundary(closed);
  CHECK(sc.boundary_count == 0);
  CHECK(sc.closed.euler_char() == 2);

  CHECK(code_of([] { shrink_boundary(partition_of(shapes::pants())); }) == ErrorCode::BoundaryNotInAnnuli);

  // Under the isotopy assumption only the identity survives the necessary
  // conditions, and it is Delta-trivial.
  int trivial = 0, rejected = 0;
  for (const auto& h : enumerate_automorphisms(pants)) {
    try {
      auto v = triviality_theorem(pants, h, true);
      CHECK(v.outcome == TrivialityVerdict::Outcome::DeltaTrivial);
      CHECK(is_delta_trivial(h));
      ++trivial;
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NecessaryConditionFailed);
      ++rejected;
    }
  }
  CHECK(trivial == 1);
  CHECK(rejected > 0);
}

TEST_CASE("partitions of canonical neighbourhoods") {
  auto inst = generate_named("genus2");
  auto a = build_atlas(inst.surface, inst.function);
  int negative = 0;
  for (int k = 0; k < a.num_components(); ++k) {
    if (a.canonical[k].is_disk) continue;
    bool saddle = false;
    for (const auto& leaf : a.components[k].leaves) saddle = saddle || leaf.kind == Leaf::Kind::Arc;
    if (!saddle) continue;
    auto np = nbhd_partition(a, k);
    CHECK(np.partition.euler_char() == a.canonical[k].region.euler_char);
    CHECK(np.partition.boundary_count() == a.canonical[k].region.cls.boundary_count);
    if (np.partition.euler_char() < 0) {
      ++negative;
      auto id = identity_automorphism(np.partition);
      CHECK(triviality_theorem(np.partition, id, true).outcome == TrivialityVerdict::Outcome::DeltaTrivial);
    }
  }
  CHECK(negative == 2);
  auto minimum = std::find_if(a.components.begin(), a.components.end(),
                              [](const auto& c) { return c.leaves.size() == 1; });
  REQUIRE(minimum != a.components.end());
  CHECK(code_of([&] { nbhd_partition(a, static_cast<int>(minimum - a.components.begin())); }) ==
        ErrorCode::PreconditionFailed);
}
