#include <sstream>

#include "cli.hpp"
#include "doctest.h"
#include "json.hpp"
#include "support.hpp"

using namespace lqg;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

json machine(std::vector<std::string> args, int expected_code) {
  args.insert(args.begin(), {"--format", "machine"});
  const auto r = run(args);
  CHECK(r.code == expected_code);
  const auto j = json::parse(r.out);
  CHECK(j["schema_version"] == cli::kSchemaVersion);
  if (!args[2].starts_with("--")) CHECK(j["command"] == args[2]);
  return j;
}

const std::string kExample = test::data_path("example_paper.bundle");
const std::string kZ3 = test::data_path("z3_group.bundle");
const std::string kLoop = test::data_path("fuzzy_loop.bundle");

}  // namespace

TEST_CASE("validate") {
  auto j = machine({"validate", kExample}, 0);
  CHECK(j["verdict"] == "ok");
  CHECK(j["payload"]["valid"] == true);
  CHECK(j["payload"]["mu"] == json{{"a", "1"}, {"b", "1"}, {"c", "1"}, {"d", "q"}, {"e", "u"}});

  j = machine({"validate", test::fixture_path("separation.bundle")}, 1);
  CHECK(j["verdict"] == "fail");
  bool separation = false;
  for (const auto& v : j["payload"]["violations"])
    if (v["kind"] == "Separation") {
      separation = true;
      CHECK(v["witness"] == json{"a", "b"});
    }
  CHECK(separation);

  j = machine({"validate", test::fixture_path("incompatible.bundle")}, 1);
  CHECK(j["payload"]["violations"][0]["kind"] == "Compatibility");
  CHECK(j["payload"]["violations"][0]["witness"] == json{"a", "a", "e", "e"});
}

TEST_CASE("input errors exit with 2") {
  const std::pair<const char*, const char*> cases[] = {
      {"unknown_name.bundle", "UnknownName"},
      {"empty.bundle", "SyntaxError"},
      {"dimension.bundle", "DimensionMismatch"},
      {"not_a_lattice.bundle", "NotALattice"}};
  for (const auto& [file, kind] : cases) {
    for (const char* cmd : {"validate", "classify", "cuts"}) {
      const auto j = machine({cmd, test::fixture_path(file)}, 2);
      CHECK(j["verdict"] == "error");
      CHECK(j["payload"]["error"]["kind"] == kind);
    }
  }
  const auto j = machine({"validate", test::fixture_path("unknown_name.bundle")}, 2);
  CHECK(j["payload"]["error"]["line"] == 37);
  CHECK(j["payload"]["error"]["section"] == "equality.table");

  // Commands other than validate need a valid equality.
  const auto c = machine({"classify", test::fixture_path("separation.bundle")}, 2);
  CHECK(c["payload"]["error"]["kind"] == "InvalidEquality");

  CHECK(run({"validate", "/nonexistent.bundle"}).code == 2);
  CHECK(run({"frobnicate", kExample}).code == 2);
  CHECK(run({"solve", kExample, "--side", "up", "--a", "a", "--b", "d"}).code == 2);
  CHECK(run({"solve", kExample, "--side", "left", "--a", "zz", "--b", "d"}).code == 2);
  CHECK(run({"cuts", kExample, "--at", "zz"}).code == 2);
  CHECK(run({"check-identity", kExample, "--lhs", "(* x1", "--rhs", "x1"}).code == 2);
  CHECK(run({"check-identity", kExample, "--lhs", "(+ x1 x1)", "--rhs", "x1"}).code == 2);
  CHECK(run({"--format", "yaml", "validate", kExample}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("classify") {
  auto j = machine({"classify", kExample}, 0);
  const auto& p = j["payload"];
  CHECK(p["l_groupoid"] == true);
  CHECK(p["l_quasigroup"]["holds"] == true);
  CHECK(p["l_semigroup"]["holds"] == false);
  CHECK(p["l_semigroup"]["failed_law"] == "LG1");
  CHECK(p["l_loop"]["applicable"] == false);

  j = machine({"classify", kZ3}, 0);
  CHECK(j["payload"]["l_quasigroup"]["holds"] == true);
  CHECK(j["payload"]["l_semigroup"]["holds"] == true);
  CHECK(j["payload"]["l_loop"]["holds"] == true);
  CHECK(j["payload"]["l_group"]["holds"] == true);

  j = machine({"classify", kLoop}, 0);
  CHECK(j["payload"]["l_loop"]["holds"] == true);

  const auto text = run({"classify", kExample});
  CHECK(text.code == 0);
  CHECK(text.out.find("L-quasigroup:  yes") != std::string::npos);
  CHECK(text.out.find("L-semigroup:   no") != std::string::npos);
}

TEST_CASE("solve") {
  auto j = machine({"solve", kExample, "--side", "left", "--a", "a", "--b", "d"}, 0);
  CHECK(j["payload"]["grade"] == "q");
  CHECK(j["payload"]["class"] == json{"b"});
  CHECK(j["payload"]["representative"] == "b");
  CHECK(j["payload"]["check"]["product"] == "c");
  CHECK(j["payload"]["check"]["e_value"] == "q");

  j = machine({"solve", kExample, "--side", "right", "--a", "e", "--b", "a"}, 0);
  CHECK(j["payload"]["grade"] == "u");
  CHECK(j["payload"]["class"] == json{"e"});

  const auto text = run({"solve", kExample, "--side", "left", "--a", "a", "--b", "d"});
  CHECK(text.out.find("grade: q") != std::string::npos);
  CHECK(text.out.find("class: {b}") != std::string::npos);
}

TEST_CASE("cuts") {
  auto j = machine({"cuts", kExample, "--at", "q"}, 0);
  REQUIRE(j["payload"]["cuts"].size() == 1);
  const auto& cut = j["payload"]["cuts"][0];
  CHECK(cut["p"] == "q");
  CHECK(cut["mu_p"] == json{"a", "b", "c", "d"});
  CHECK(cut["blocks"] == json{json{"a"}, json{"b"}, json{"c", "d"}});

  j = machine({"cuts", kExample}, 0);
  CHECK(j["payload"]["cuts"].size() == 8);
}

TEST_CASE("check-identity") {
  auto j = machine(
      {"check-identity", kExample, "--lhs", "(* x1 x2)", "--rhs", "(* x2 x1)"}, 1);
  CHECK(j["verdict"] == "fail");
  CHECK(j["payload"]["witness"]["assignment"] == json{{"x1", "a"}, {"x2", "b"}});
  CHECK(j["payload"]["witness"]["value"] == "p");

  j = machine({"check-identity", kZ3, "--lhs", "(* x1 (* x2 x3))", "--rhs",
               "(* (* x1 x2) x3)"},
              0);
  CHECK(j["verdict"] == "ok");
  j = machine({"check-identity", kZ3, "--lhs", "(* x1 (inv x1))", "--rhs", "e"}, 0);
  CHECK(j["payload"]["holds"] == true);
}

TEST_CASE("synthesize") {
  auto r = run({"synthesize", kExample});
  REQUIRE(r.code == 0);
  const auto b = parse_bundle(r.out);
  const auto& A = b.algebra();
  CHECK(A.signature().size() == 3);
  CHECK(A.name(A.binary(1, A.element("a"), A.element("d"))) == "b");
  CHECK(A.name(A.binary(2, A.element("d"), A.element("b"))) == "a");
  CHECK(validate_lequality(b.equality).equality.has_value());

  r = run({"synthesize", kLoop, "--inverse"});
  REQUIRE(r.code == 0);
  const auto g = parse_bundle(r.out);
  CHECK(g.algebra().signature().size() == 3);

  // Not an L-quasigroup: the crisp groupoid from the example table.
  const auto crisp = machine({"synthesize", test::fixture_path("incompatible.bundle")}, 2);
  CHECK(crisp["payload"]["error"]["kind"] == "InvalidEquality");
  const auto no_loop = machine({"synthesize", kExample, "--inverse"}, 1);
  CHECK(no_loop["verdict"] == "fail");
  CHECK(no_loop["payload"]["error"] == "NotApplicable");
  const auto present = machine({"synthesize", kZ3, "--inverse"}, 1);
  CHECK(present["payload"]["error"] == "NotApplicable");
  CHECK(run({"synthesize", kExample, "--inverse", "--divisions"}).code == 2);
}

TEST_CASE("random-check") {
  const auto j =
      machine({"--seed", "5", "random-check", "--count", "40", "--max-lattice", "6"}, 0);
  CHECK(j["verdict"] == "ok");
  const auto again =
      machine({"--seed", "5", "random-check", "--count", "40", "--max-lattice", "6"}, 0);
  CHECK(again == j);
}

TEST_CASE("quiet mode prints nothing") {
  const auto r = run({"--quiet", "validate", kExample});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  CHECK(run({"--quiet", "validate", test::fixture_path("separation.bundle")}).code == 1);
}
