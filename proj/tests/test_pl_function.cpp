#include "doctest.h"

#include "plsurf/errors.hpp"
#include "plsurf/pl_function.hpp"
#include "plsurf/shapes.hpp"

using namespace plsurf;

namespace {

ErrorCode code_of(const auto& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::InvariantViolation;
}

std::vector<Rational> ints(std::initializer_list<int> xs) {
  std::vector<Rational> out;
  for (int x : xs) out.emplace_back(x);
  return out;
}

// Cone over a ring of n vertices; vertex 0 is the apex.
SurfaceComplex cone(int n) {
  std::vector<std::vector<int>> tris;
  for (int i = 0; i < n; ++i) tris.push_back({0, 1 + i, 1 + (i + 1) % n});
  return from_polygons(n + 1, tris);
}

}  // namespace

TEST_CASE("vertex classification by lower link") {
  auto c4 = cone(4);
  CHECK(classify_vertex(c4, PLFunction::line(c4, ints({0, 1, 2, 3, 4})), 0) == VertexType{VertexKind::Min, 0});
  CHECK(classify_vertex(c4, PLFunction::line(c4, ints({5, 1, 2, 3, 4})), 0) == VertexType{VertexKind::Max, 0});
  CHECK(classify_vertex(c4, PLFunction::line(c4, ints({0, 1, -1, 2, -2})), 0) ==
        VertexType{VertexKind::Saddle, 1});
  CHECK(classify_vertex(c4, PLFunction::line(c4, ints({0, 1, 2, -1, -2})), 0) ==
        VertexType{VertexKind::Regular, 0});
  auto c6 = cone(6);
  CHECK(classify_vertex(c6, PLFunction::line(c6, ints({0, 1, -1, 2, -2, 3, -3})), 0) ==
        VertexType{VertexKind::Saddle, 2});
  CHECK(code_of([&] { classify_vertex(c6, PLFunction::line(c6, ints({0, 1, -1, 2, -2, 3, -3})), 1); }) ==
        ErrorCode::BoundaryVertex);
}

TEST_CASE("axioms on the octahedron") {
  auto s = shapes::octahedron();
  // -z lowest, +z highest, equator increasing
  auto f = PLFunction::line(s, ints({1, 3, 2, 4, 5, 0}));
  auto rep = validate_axioms(s, f);
  int mins = 0, maxs = 0, saddles = 0;
  for (const auto& cv : rep.critical) {
    mins += cv.type.kind == VertexKind::Min;
    maxs += cv.type.kind == VertexKind::Max;
    if (cv.type.kind == VertexKind::Saddle) saddles += cv.type.multiplicity;
  }
  CHECK(mins + maxs - saddles == 2);
  auto lv = critical_levels(s, f);
  CHECK(lv.front().value == 0);
  CHECK(lv.back().value == 5);

  auto tie = PLFunction::line(s, ints({1, 3, 1, 4, 5, 0}));
  CHECK(code_of([&] { validate_axioms(s, tie); }) == ErrorCode::DegenerateTie);
}

TEST_CASE("boundary must be level") {
  auto a = shapes::annulus(4);  // inner ring 0..3, outer 4..7
  auto good = PLFunction::line(a, ints({0, 0, 0, 0, 1, 1, 1, 1}));
  auto rep = validate_axioms(a, good);
  CHECK(rep.critical.empty());
  auto lv = critical_levels(rep, good);
  REQUIRE(lv.size() == 2);
  CHECK(lv[0].boundary_circles.size() == 1);
  auto bad = PLFunction::line(a, ints({0, 1, 0, 0, 2, 2, 2, 2}));
  CHECK(code_of([&] { validate_axioms(a, bad); }) == ErrorCode::BoundaryNotLevel);
}

TEST_CASE("slicing a single triangle") {
  auto t = from_polygons(3, {{0, 1, 2}}, {});
  auto f = PLFunction::line(t, ints({0, 1, 2}));
  auto r = slice(t, f, Rational(1, 2));
  CHECK(r.complex.num_vertices() == 5);
  CHECK(r.complex.num_faces() == 2);
  std::vector<int> sizes{r.complex.face_size(0), r.complex.face_size(1)};
  std::sort(sizes.begin(), sizes.end());
  CHECK(sizes == std::vector<int>{3, 4});
  CHECK(r.complex.euler_characteristic() == 1);
  auto g = level_graph(r, Rational(1, 2));
  CHECK(g.vertices.size() == 2);
  CHECK(g.edges.size() == 1);
}

TEST_CASE("slicing at a critical value is refused") {
  auto s = shapes::octahedron();
  auto f = PLFunction::line(s, ints({1, 3, 2, 4, 5, 0}));
  CHECK(code_of([&] { slice(s, f, Rational(0)); }) == ErrorCode::CriticalLevel);
  auto r = slice(s, f, Rational(5, 2));
  CHECK(classify(r.complex) == classify(s));
  auto g = level_graph(r, Rational(5, 2));
  CHECK(g.vertex_components.size() == 1);
  CHECK(g.edges.size() == g.vertices.size());  // one circle
}

TEST_CASE("circle valued increments") {
  auto s = shapes::torus_grid(4, 4);
  std::vector<Rational> vals;
  for (int j = 0; j < 4; ++j)
    for (int i = 0; i < 4; ++i) vals.push_back(Rational(j, 4) + Rational(i, 100));
  auto f = PLFunction::circle(s, vals);
  // the vertical edge from row 3 to row 0 wraps around
  for (int e = 0; e < s.num_edges(); ++e) CHECK(abs(f.delta(e)) < Rational(1, 2));
  auto rep = validate_axioms(s, f);
  CHECK(rep.critical.empty());
  auto r = slice(s, f, Rational(1, 8));
  auto g = level_graph(r, Rational(1, 8));
  CHECK(g.vertex_components.size() == 1);
  CHECK(g.vertices.size() == 4);
}
