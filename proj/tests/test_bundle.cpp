#include <fstream>
#include <sstream>

#include "doctest.h"
#include "lqg/synthesis.hpp"
#include "support.hpp"

using namespace lqg;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Failure {
  ErrorKind kind;
  std::size_t line;
  std::string section;
};

std::optional<Failure> parse_failure(std::string_view text) {
  try {
    parse_bundle(text);
  } catch (const ParseError& e) {
    return Failure{e.kind(), e.line(), e.section()};
  } catch (const Error& e) {
    return Failure{e.kind(), 0, ""};
  }
  return std::nullopt;
}

const char* const kSmall =
    "lqg-bundle 1\n"
    "\n"
    "[lattice.elements]\n"
    "0 h 1\n"
    "\n"
    "[lattice.covers]\n"
    "0 h\n"
    "h 1\n"
    "\n"
    "[algebra.carrier]\n"
    "x y\n"
    "\n"
    "[algebra.ops]\n"
    "op * 2\n"
    "x y\n"
    "y x\n"
    "op n 1\n"
    "y x\n"
    "op k 0\n"
    "x\n"
    "\n"
    "[equality.table]\n"
    "1 0\n"
    "0 h\n";

bool same_relation(const LRelation& a, const LRelation& b) {
  const auto& A = a.algebra();
  const auto& B = b.algebra();
  if (A.size() != B.size() || a.lattice().size() != b.lattice().size()) return false;
  for (std::size_t i = 0; i < A.size(); ++i)
    if (A.name(static_cast<Elem>(i)) != B.name(static_cast<Elem>(i))) return false;
  if (A.signature().size() != B.signature().size()) return false;
  for (std::size_t op = 0; op < A.signature().size(); ++op) {
    if (A.signature()[op].name != B.signature()[op].name) return false;
    if (!std::ranges::equal(A.table(op), B.table(op))) return false;
  }
  for (Elem x = 0; x < A.size(); ++x)
    for (Elem y = 0; y < A.size(); ++y)
      if (a.lattice().name(a.at(x, y)) != b.lattice().name(b.at(x, y))) return false;
  for (std::size_t i = 0; i < a.lattice().size(); ++i)
    for (std::size_t j = 0; j < a.lattice().size(); ++j)
      if (a.lattice().leq_at(i, j) != b.lattice().leq_at(i, j)) return false;
  return true;
}

}  // namespace

TEST_CASE("canonical text round trips byte for byte") {
  const auto b = parse_bundle(kSmall);
  CHECK_FALSE(b.meta.name);
  CHECK(serialize_bundle(b) == kSmall);
  CHECK(serialize_bundle(parse_bundle(serialize_bundle(b))) == kSmall);
  CHECK(serialize_bundle(b).find("[meta]") == std::string::npos);
}

TEST_CASE("the example bundle") {
  const auto b = test::example_bundle();
  CHECK(b.meta.name == "worked-example");
  CHECK(b.lattice().size() == 8);
  CHECK(b.algebra().size() == 5);
  const auto again = parse_bundle(serialize_bundle(b));
  CHECK(again.meta == b.meta);
  CHECK(same_relation(again.equality, b.equality));
  CHECK(serialize_bundle(again) == serialize_bundle(b));

  // The lattice agrees with the one built directly from covers.
  const auto L = test::example_lattice();
  for (std::size_t i = 0; i < L->size(); ++i)
    for (std::size_t j = 0; j < L->size(); ++j) {
      CHECK(b.lattice().leq_at(i, j) == L->leq_at(i, j));
      CHECK(b.lattice().meet_at(i, j) == L->meet_at(i, j));
    }
}

TEST_CASE("shipped data files parse and validate") {
  for (const char* f : {"example_paper.bundle", "z3_group.bundle", "fuzzy_loop.bundle"}) {
    const auto b = load_bundle(test::data_path(f));
    CHECK(validate_lequality(b.equality).equality.has_value());
    CHECK(serialize_bundle(parse_bundle(serialize_bundle(b))) == serialize_bundle(b));
  }
}

TEST_CASE("comments, blank lines and section order do not matter") {
  const std::string reordered =
      "# leading comment\n"
      "lqg-bundle 1\n"
      "[equality.table]\n"
      "# a comment inside a section\n"
      "1 0\n"
      "0 h\n"
      "[algebra.ops]\n"
      "op * 2\n"
      "x y\n"
      "\n"
      "y x\n"
      "op n 1\n"
      "y x\n"
      "op k 0\n"
      "x\n"
      "[algebra.carrier]\n"
      "x y\n"
      "[lattice.order]\n"
      "0 h\n"
      "h 1\n"
      "0 1\n"
      "[lattice.elements]\n"
      "0 h 1\n";
  CHECK(serialize_bundle(parse_bundle(reordered)) == kSmall);
}

TEST_CASE("synthesized bundles re-parse and re-validate") {
  const auto q = synthesize_divisions(test::example_groupoid());
  const Bundle out{{std::string("divisions"), std::nullopt}, q.equality.relation()};
  const auto text = serialize_bundle(out);
  const auto back = parse_bundle(text);
  CHECK(back.meta.name == "divisions");
  CHECK(same_relation(back.equality, out.equality));
  const auto E = require_lequality(back.equality);
  CHECK(check_equasigroup(E, find_division_ops(E.algebra())).holds);
}

TEST_CASE("random bundles round trip") {
  gen::Rng rng(71);
  for (int i = 0; i < 200; ++i) {
    const auto L = gen::random_lattice(rng, 8);
    const auto E = gen::random_lalgebra(rng, L, 1 + i % 5);
    const Bundle b{{}, E.relation()};
    const auto text = serialize_bundle(b);
    const auto back = parse_bundle(text);
    CHECK(same_relation(back.equality, b.equality));
    CHECK(serialize_bundle(back) == text);
  }
}

TEST_CASE("fixtures report the right error") {
  const auto unknown = parse_failure(read_file(test::fixture_path("unknown_name.bundle")));
  REQUIRE(unknown);
  CHECK(unknown->kind == ErrorKind::UnknownName);
  CHECK(unknown->line == 37);
  CHECK(unknown->section == "equality.table");

  const auto empty = parse_failure(read_file(test::fixture_path("empty.bundle")));
  REQUIRE(empty);
  CHECK(empty->kind == ErrorKind::SyntaxError);

  const auto dim = parse_failure(read_file(test::fixture_path("dimension.bundle")));
  REQUIRE(dim);
  CHECK(dim->kind == ErrorKind::DimensionMismatch);
  CHECK(dim->line == 30);
  CHECK(dim->section == "algebra.ops");

  const auto lattice = parse_failure(read_file(test::fixture_path("not_a_lattice.bundle")));
  REQUIRE(lattice);
  CHECK(lattice->kind == ErrorKind::NotALattice);

  // These parse, but the equality is not valid.
  for (const char* f : {"separation.bundle", "incompatible.bundle"}) {
    const auto b = load_bundle(test::fixture_path(f));
    CHECK_FALSE(validate_lequality(b.equality).equality.has_value());
  }
}

TEST_CASE("malformed input") {
  const auto kind = [](std::string_view text) {
    const auto f = parse_failure(text);
    return f ? std::optional<ErrorKind>(f->kind) : std::nullopt;
  };
  CHECK(kind("lqg-bundle 2\n") == ErrorKind::SyntaxError);
  CHECK(kind("hello\n") == ErrorKind::SyntaxError);
  CHECK(kind("lqg-bundle 1\n[lattice.elements]\n0 1\n") == ErrorKind::SyntaxError);

  std::string s = kSmall;
  CHECK(kind(std::string(s).replace(s.find("[algebra.carrier]\nx y"), 21,
                                    "[algebra.carrier]\nx x")) == ErrorKind::DuplicateName);
  CHECK(kind(std::string(s).replace(s.find("op n 1\ny x"), 10, "op n 1\ny z")) ==
        ErrorKind::UnknownName);
  CHECK(kind(std::string(s).replace(s.find("[lattice"), 8, "[lattixe")) ==
        ErrorKind::SyntaxError);
  CHECK(kind(std::string(s).replace(s.find("0 h\nh 1"), 3, "0 q")) == ErrorKind::UnknownName);
  CHECK(kind(std::string(s).replace(s.find("1 0\n0 h"), 7, "1 0\n0 h\n1 1")) ==
        ErrorKind::DimensionMismatch);
  CHECK(kind(std::string(s).replace(s.find("op k 0"), 6, "op k 3")) == ErrorKind::SyntaxError);
  CHECK(test::error_kind([] { load_bundle("/nonexistent/file.bundle"); }) ==
        ErrorKind::SyntaxError);
}
