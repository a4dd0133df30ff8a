#include "doctest.h"

#include <fstream>
#include <sstream>

#include "plsurf/errors.hpp"
#include "plsurf/io.hpp"

using namespace plsurf;

namespace {

std::string fixture(const std::string& name) {
  std::ifstream in(std::string(PLSURF_FIXTURES) + "/" + name);
  REQUIRE(in);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ErrorCode code_of(auto&& fn, std::string* message = nullptr) {
  try {
    fn();
  } catch (const Error& e) {
    if (message) *message = e.what();
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::InvalidInput;
}

// A square with two triangles: f = x + 2y on the corners (0,0) (1,0) (1,1) (0,1).
const char* square = R"({
  "vertices": [1, 2, 3, 4],
  "edges": [[1, 1, 2], [2, 2, 3], [3, 3, 4], [4, 4, 1], [5, 1, 3]],
  "faces": [[10, [1, 2, -5]], [11, [5, 3, 4]]],
  "values": {"1": "0", "2": "2/2", "3": 3, "4": "4/2"},
  "metadata": {"note": "square", "n": 7}
})";

}  // namespace

TEST_CASE("bundled torus fixture") {
  auto text = fixture("torus_height.json");
  auto inst = parse_instance(text);
  auto doc = nlohmann::json::parse(text);
  int chi = static_cast<int>(doc["vertices"].size()) - static_cast<int>(doc["edges"].size()) +
            static_cast<int>(doc["faces"].size());
  CHECK(chi == 0);
  CHECK(classify(inst.surface).euler_char == 0);
  CHECK(serialize_instance(inst) == text);
}

TEST_CASE("every fixture is in canonical form") {
  for (const char* name : {"genus2.json", "genus3.json", "pants.json", "klein.json", "projective.json", "sphere.json",
                           "two-disk-pieces.json", "monkey.json", "genus2_symmetric.json"}) {
    CAPTURE(name);
    auto text = fixture(name);
    CHECK(serialize_instance(parse_instance(text)) == text);
  }
}

TEST_CASE("serialization normalizes rationals and metadata") {
  auto inst = parse_instance(square, false);
  auto out = nlohmann::json::parse(serialize_instance(inst));
  CHECK(out["values"]["2"] == "1");
  CHECK(out["values"]["3"] == "3");
  CHECK(out["values"]["4"] == "2");
  CHECK(out["target"] == "line");
  CHECK(out["metadata"]["n"] == "7");
  CHECK(out["faces"][1] == nlohmann::json::parse("[11, [5, 3, 4]]"));
  CHECK(serialize_instance(parse_instance(serialize_instance(inst), false)) == serialize_instance(inst));
}

TEST_CASE("schema and syntax errors name their locus") {
  std::string msg;
  std::string missing = square;
  missing.replace(missing.find(", \"4\": \"4/2\""), 12, "");
  CHECK(code_of([&] { parse_instance(missing); }, &msg) == ErrorCode::SchemaError);
  CHECK(msg.find("/values/4") != std::string::npos);

  std::string floaty = square;
  floaty.replace(floaty.find("\"2/2\""), 5, "1.0");
  CHECK(code_of([&] { parse_instance(floaty); }, &msg) == ErrorCode::SchemaError);
  CHECK(msg.find("/values/2") != std::string::npos);

  std::string target = square;
  target.replace(target.find("\"metadata\""), 0, "\"target\": \"plane\", ");
  CHECK(code_of([&] { parse_instance(target); }, &msg) == ErrorCode::SchemaError);
  CHECK(msg.find("/target") != std::string::npos);

  std::string edge = square;
  edge.replace(edge.find("[5, 1, 3]"), 9, "[5, 1]");
  CHECK(code_of([&] { parse_instance(edge); }, &msg) == ErrorCode::SchemaError);
  CHECK(msg.find("/edges/4") != std::string::npos);

  std::string broken = square;
  broken.replace(broken.find("\"faces\""), 0, "oops ");
  CHECK(code_of([&] { parse_instance(broken); }, &msg) == ErrorCode::SyntaxError);
  CHECK(msg.find("line 4") != std::string::npos);

  std::string extra = square;
  extra.replace(extra.find("\"1\": \"0\""), 0, "\"9\": \"5\", ");
  CHECK(code_of([&] { parse_instance(extra); }) == ErrorCode::SchemaError);
}

TEST_CASE("validation errors pass through") {
  // the square's boundary is not a level set
  CHECK(code_of([&] { parse_instance(square); }) == ErrorCode::BoundaryNotLevel);
  auto doc = nlohmann::json::parse(fixture("torus_height.json"));
  auto tail = std::to_string(doc["edges"][0][1].get<int>());
  auto head = std::to_string(doc["edges"][0][2].get<int>());
  doc["values"][head] = doc["values"][tail];
  auto code = code_of([&] { parse_instance(doc.dump()); });
  CHECK(category(code) == ErrorCategory::Input);
  CHECK(code != ErrorCode::SchemaError);
  std::string dup = square;
  dup.replace(dup.find("[4, 4, 1]"), 9, "[3, 4, 1]");
  CHECK(code_of([&] { parse_instance(dup); }) == ErrorCode::DuplicateId);
}

TEST_CASE("generation is deterministic") {
  CHECK(serialize_instance(generate_named("genus2", 4)) == serialize_instance(generate_named("genus2", 4)));
  GenerateParams gp{1, 1, 1, 0};
  gp.options.seed = 9;
  CHECK(serialize_instance(generate(gp)) == serialize_instance(generate(gp)));
  CHECK(code_of([] { generate_named("hyperbolic-plane"); }) == ErrorCode::UnsupportedKind);
}

TEST_CASE("genus two fixture has two negative neighbourhoods") {
  auto inst = parse_instance(fixture("genus2.json"));
  auto a = build_atlas(inst.surface, inst.function);
  auto cs = chi_sum_check(a);
  int negative = 0;
  for (int k : cs.non_disk)
    if (a.canonical[k].region.euler_char == -1) ++negative;
  CHECK(negative == 2);
  CHECK(cs.equal);

  auto sphere = parse_instance(fixture("sphere.json"));
  auto crit = validate_axioms(sphere.surface, sphere.function).critical;
  REQUIRE(crit.size() == 2);
  CHECK(crit[0].type.kind != VertexKind::Saddle);
  CHECK(crit[1].type.kind != VertexKind::Saddle);
}

TEST_CASE("automorphism files") {
  auto inst = parse_instance(fixture("genus2_symmetric.json"));
  for (const char* name : {"genus2_identity.aut.json", "genus2_swap.aut.json", "genus2_turn.aut.json"}) {
    CAPTURE(name);
    auto text = fixture(name);
    auto in = parse_automorphism(text, inst.surface);
    CHECK(serialize_automorphism(in.partition, in.map) == text);
  }
  auto id = parse_automorphism(fixture("genus2_identity.aut.json"), inst.surface);
  CHECK(is_delta_trivial(id.map));

  auto doc = nlohmann::json::parse(fixture("genus2_identity.aut.json"));
  doc["vertices"].erase(doc["vertices"].begin());
  CHECK(code_of([&] { parse_automorphism(doc.dump(), inst.surface); }) == ErrorCode::SchemaError);

  auto twice = nlohmann::json::parse(fixture("genus2_identity.aut.json"));
  auto first = twice["vertices"].begin().value();
  for (auto& [k, v] : twice["vertices"].items()) v = first;
  CHECK(code_of([&] { parse_automorphism(twice.dump(), inst.surface); }) == ErrorCode::NotCellular);

  auto swapped = nlohmann::json::parse(fixture("genus2_identity.aut.json"));
  auto it = swapped["edges"].begin();
  auto a = it.value();
  auto b = std::next(it).value();
  it.value() = b;
  std::next(it).value() = a;
  CHECK(code_of([&] { parse_automorphism(swapped.dump(), inst.surface); }) == ErrorCode::NotCellular);
}

TEST_CASE("lefschetz reports") {
  auto inst = parse_instance(fixture("genus2_symmetric.json"));
  auto id = parse_automorphism(fixture("genus2_identity.aut.json"), inst.surface);
  auto r = lefschetz_report(id, true);
  CHECK(r.data["lefschetz_chain"] == -2);
  CHECK(r.data["lefschetz_homology"] == -2);
  CHECK(r.data["triviality"]["outcome"] == "delta-trivial");
  CHECK(lefschetz_report(id, false).data["triviality"].is_null());

  auto turn = parse_automorphism(fixture("genus2_turn.aut.json"), inst.surface);
  auto t = lefschetz_report(turn, false);
  CHECK(t.data["kLh"]["holds"] == true);
  CHECK(t.data["lefschetz_chain"] == t.data["invariant_cells"]["total"]);
  CHECK(code_of([&] { lefschetz_report(turn, true); }) == ErrorCode::NecessaryConditionFailed);
}

TEST_CASE("command reports") {
  auto inst = parse_instance(fixture("genus2.json"));
  auto a = build_atlas(inst.surface, inst.function);
  CHECK(validate_report(inst).data["surface"]["chi"] == -2);
  CHECK(analyze_report(a).data["critical"].size() == a.axioms.critical.size());
  auto atoms = atoms_report(a);
  CHECK(atoms.data["chi_sum"]["equal"] == true);
  CHECK(atoms.text.find("chi(M) = -2") != std::string::npos);
  auto d = decomposition_report(build_Mneg(a));
  CHECK(d.data["negative_components"].size() == 2);
  CHECK(d.data["m_neg"].size() == 2);
  CHECK(d.data["factorization"].size() == d.data["pieces"].size());

  auto sphere = parse_instance(fixture("sphere.json"));
  auto sa = atoms_report(build_atlas(sphere.surface, sphere.function));
  CHECK(sa.data["chi_sum"].contains("skipped"));
}
