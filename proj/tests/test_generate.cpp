#include "doctest.h"

#include "plsurf/errors.hpp"
#include "plsurf/generate.hpp"

using namespace plsurf;

namespace {

// Morse count: minima + maxima - saddle multiplicities.
int morse_sum(const AxiomReport& rep) {
  int total = 0;
  for (const auto& cv : rep.critical) {
    if (cv.type.kind == VertexKind::Saddle)
      total -= cv.type.multiplicity;
    else
      total += 1;
  }
  return total;
}

}  // namespace

TEST_CASE("named fixtures have the intended topology") {
  struct Row {
    const char* name;
    bool orientable;
    int genus;
    int boundary;
  };
  for (auto row : {Row{"sphere", true, 0, 0}, Row{"torus", true, 1, 0}, Row{"genus2", true, 2, 0},
                   Row{"genus3", true, 3, 0}, Row{"pants", true, 0, 3}, Row{"two-disk-pieces", true, 0, 3},
                   Row{"klein", false, 2, 0}, Row{"projective", false, 1, 0}, Row{"monkey", true, 2, 0}}) {
    CAPTURE(row.name);
    auto inst = generate_named(row.name);
    auto c = classify(inst.surface);
    CHECK(c.orientable == row.orientable);
    CHECK(c.genus_or_crosscaps == row.genus);
    CHECK(c.boundary_count == row.boundary);
    auto rep = validate_axioms(inst.surface, inst.function);
    if (row.boundary == 0) CHECK(morse_sum(rep) == inst.surface.euler_characteristic());
  }
}

TEST_CASE("monkey fixture has degenerate saddles") {
  auto inst = generate_named("monkey");
  auto rep = validate_axioms(inst.surface, inst.function);
  int deg = 0;
  for (const auto& cv : rep.critical) deg += cv.type.kind == VertexKind::Saddle && cv.type.multiplicity == 2;
  CHECK(deg == 2);
}

TEST_CASE("parameter sweep") {
  for (int g = 0; g <= 3; ++g)
    for (int k = 0; k <= 2; ++k)
      for (int b = 0; b <= 3; ++b)
        for (std::uint32_t seed : {0u, 7u}) {
          GenerateParams p;
          p.genus = g;
          p.crosscaps = k;
          p.boundary = b;
          p.dimples = seed % 2;
          p.options.seed = seed;
          CAPTURE(g);
          CAPTURE(k);
          CAPTURE(b);
          auto inst = generate(p);
          auto c = classify(inst.surface);
          int chi = k > 0 ? 2 - 2 * g - k - b : 2 - 2 * g - b;
          CHECK(c.euler_char == chi);
          CHECK(c.boundary_count == b);
          CHECK(c.orientable == (k == 0));
          auto rep = validate_axioms(inst.surface, inst.function);
          if (b == 0) CHECK(morse_sum(rep) == chi);
        }
}

TEST_CASE("generation is deterministic per seed") {
  GenerateParams p;
  p.genus = 2;
  p.options.seed = 3;
  auto a = generate(p), b = generate(p);
  CHECK(a.function.values() == b.function.values());
  p.options.seed = 4;
  auto c = generate(p);
  CHECK(a.function.values() != c.function.values());
}

TEST_CASE("bad programs are rejected") {
  CHECK_THROWS_AS(generate_named("cow"), Error);
  CHECK_THROWS_AS(build_reeb({{{ReebOp::MinCap}}}), Error);
  CHECK_THROWS_AS(build_reeb({{{ReebOp::MaxCap}}}), Error);
}
