#include <map>
#include <set>

#include "doctest.h"
#include "support.hpp"

using namespace lqg;
using test::elt;
using test::set_of;

namespace {

Term x(std::size_t i) { return Term::variable(i); }
Term mul(Term a, Term b) { return Term::apply("*", {std::move(a), std::move(b)}); }

std::vector<std::vector<std::string>> partition_names(const LEquality& E, const char* p) {
  std::vector<std::vector<std::string>> out;
  const auto theta = e_cut(E, elt(E.lattice(), p));
  for (const auto& block : theta.blocks()) {
    std::vector<std::string> names;
    for (Elem v : block) names.push_back(E.algebra().name(v));
    out.push_back(names);
  }
  return out;
}

std::vector<std::string> cut_names(const LEquality& E, const char* p) {
  std::vector<std::string> names;
  for (Elem v : mu_cut(E, elt(E.lattice(), p))) names.push_back(E.algebra().name(v));
  return names;
}

// Random instances: a lattice, a random algebra and a generated equality.
std::vector<LEquality> random_instances(std::uint64_t seed, int count, std::size_t max_carrier) {
  gen::Rng rng(seed);
  std::vector<LEquality> out;
  while (static_cast<int>(out.size()) < count) {
    const auto L = gen::random_lattice(rng, 8);
    out.push_back(gen::random_lalgebra(rng, L, max_carrier));
    out.push_back(gen::random_lgroupoid(rng, L, max_carrier).equality());
  }
  return out;
}

}  // namespace

TEST_CASE("the example equality is valid and determines mu") {
  const auto bundle = test::example_bundle();
  const auto result = validate_lequality(bundle.equality);
  REQUIRE(result.report.ok());
  const auto& E = *result.equality;
  const auto& L = E.lattice();
  const char* expected[] = {"1", "1", "1", "q", "u"};
  const auto mu = membership(E);
  for (Elem v = 0; v < 5; ++v) CHECK(L.name(mu.values[v]) == expected[v]);

  // μ(d)∧μ(e) = q∧u = 0 and d·e = e.
  const auto& A = E.algebra();
  const Elem d = A.element("d"), e = A.element("e");
  CHECK(L.name(L.meet(E.mu(d), E.mu(e))) == "0");
  CHECK(A.binary(0, d, e) == e);
  CHECK(L.leq(L.meet(E.mu(d), E.mu(e)), E.mu(A.binary(0, d, e))));
}

TEST_CASE("crisp equalities are always valid") {
  gen::Rng rng(1);
  const Signature sig({{"*", 2}, {"i", 1}, {"k", 0}});
  for (int i = 0; i < 50; ++i) {
    const auto L = gen::random_lattice(rng, 6);
    const auto A = std::make_shared<const FiniteAlgebra>(gen::random_algebra(rng, 1 + i % 5, sig));
    const auto r = validate_lequality(LRelation::crisp(L, A));
    CHECK(r.report.ok() == (L->size() > 1 || A->size() == 1));
    if (r.equality) {
      for (Elem v = 0; v < A->size(); ++v) CHECK(r.equality->mu(v) == L->top());
    }
  }
}

TEST_CASE("violations are reported once each, with least witness") {
  const auto bad = load_bundle(test::fixture_path("separation.bundle"));
  const auto r = validate_lequality(bad.equality);
  CHECK_FALSE(r.equality);
  const auto* sep = r.report.find(ViolationKind::Separation);
  REQUIRE(sep);
  CHECK(sep->witness == std::vector<Elem>{0, 1});
  CHECK(sep->count == 1);
  CHECK(r.report.find(ViolationKind::Symmetry));
  CHECK(test::error_kind([&] { require_lequality(bad.equality); }) ==
        ErrorKind::InvalidEquality);

  // Constant with E(c,c) < 1, and an everywhere-bottom relation.
  const auto L = gen::chain_lattice(3);
  const auto Z3 = test::cyclic_group(3);
  std::vector<std::uint32_t> v = {1, 0, 0, 0, 1, 0, 0, 0, 1};
  const auto c = validate_lequality(LRelation::from_indices(L, Z3, v));
  REQUIRE(c.report.find(ViolationKind::ConstantNotOne));
  CHECK(c.report.find(ViolationKind::ConstantNotOne)->operation == "e");
  const auto zero = validate_lequality(
      LRelation::from_indices(L, test::groupoid({"a", "b"}, {0, 0, 0, 0}), {0, 0, 0, 0}));
  CHECK(zero.report.find(ViolationKind::ConstantlyBottom));
  CHECK(zero.report.violations.size() == 1);
}

TEST_CASE("violation reports match a brute-force oracle on random relations") {
  gen::Rng rng(17);
  const Signature sig({{"*", 2}, {"i", 1}});
  for (int round = 0; round < 300; ++round) {
    const auto L = gen::random_lattice(rng, 5);
    const std::size_t n = 1 + round % 4;
    const auto A = std::make_shared<const FiniteAlgebra>(gen::random_algebra(rng, n, sig));
    std::vector<std::uint32_t> values(n * n);
    for (auto& value : values) value = static_cast<std::uint32_t>(rng() % L->size());
    if (round % 3 == 0)  // keep a good share symmetric
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < a; ++b) values[a * n + b] = values[b * n + a];
    const auto rel = LRelation::from_indices(L, A, values);
    auto E = [&](std::size_t a, std::size_t b) { return values[a * n + b]; };

    std::map<std::pair<ViolationKind, std::string>, std::set<std::vector<Elem>>> expected;
    for (Elem a = 0; a < n; ++a)
      for (Elem b = 0; b < n; ++b) {
        if (a < b && E(a, b) != E(b, a)) expected[{ViolationKind::Symmetry, ""}].insert({a, b});
        if (a != b && E(a, b) == L->top_index())
          expected[{ViolationKind::Separation, ""}].insert({a, b});
        if (!L->leq_at(E(a, b), E(A->unary(1, a), A->unary(1, b))))
          expected[{ViolationKind::Compatibility, "i"}].insert({a, b});
        for (Elem c = 0; c < n; ++c)
          if (!L->leq_at(L->meet_at(E(a, c), E(c, b)), E(a, b)))
            expected[{ViolationKind::Transitivity, ""}].insert({a, b, c});
        for (Elem a2 = 0; a2 < n; ++a2)
          for (Elem b2 = 0; b2 < n; ++b2)
            if (!L->leq_at(L->meet_at(E(a, b), E(a2, b2)),
                           E(A->binary(0, a, a2), A->binary(0, b, b2))))
              expected[{ViolationKind::Compatibility, "*"}].insert({a, a2, b, b2});
      }
    bool bottom = L->size() > 1;
    for (Elem a = 0; a < n; ++a) bottom = bottom && E(a, a) == L->bottom_index();
    if (bottom) expected[{ViolationKind::ConstantlyBottom, ""}].insert(std::vector<Elem>{});

    const auto report = validate_lequality(rel).report;
    CHECK(report.violations.size() == expected.size());
    for (const auto& v : report.violations) {
      const auto it = expected.find({v.kind, v.operation});
      REQUIRE(it != expected.end());
      CHECK(v.witness == *it->second.begin());
      CHECK(v.count == it->second.size());
    }
  }
}

TEST_CASE("cuts of the example") {
  const auto E = test::example_equality();
  using V = std::vector<std::string>;
  CHECK(cut_names(E, "1") == V{"a", "b", "c"});
  CHECK(cut_names(E, "p") == V{"a", "b", "c"});
  for (const char* p : {"q", "r", "w"}) CHECK(cut_names(E, p) == V{"a", "b", "c", "d"});
  for (const char* p : {"u", "v"}) CHECK(cut_names(E, p) == V{"a", "b", "c", "e"});
  CHECK(cut_names(E, "0") == V{"a", "b", "c", "d", "e"});

  using P = std::vector<V>;
  CHECK(partition_names(E, "1") == P{{"a"}, {"b"}, {"c"}});
  CHECK(partition_names(E, "p") == P{{"a", "b", "c"}});
  CHECK(partition_names(E, "q") == P{{"a"}, {"b"}, {"c", "d"}});
  CHECK(partition_names(E, "r") == P{{"a", "b", "c", "d"}});
  CHECK(partition_names(E, "w") == P{{"a", "b", "c", "d"}});
  CHECK(partition_names(E, "u") == P{{"a", "b", "c"}, {"e"}});
  CHECK(partition_names(E, "v") == P{{"a", "b", "c", "e"}});
  CHECK(partition_names(E, "0") == P{{"a", "b", "c", "d", "e"}});

  const auto q = cut_quotient(E, elt(E.lattice(), "q"));
  CHECK(q.size() == 3);
  CHECK(is_quasigroup(q.algebra(), 0));
  CHECK(cut_quotient(E, E.lattice().bottom()).size() == 1);
  for (auto p : E.lattice().elements()) CHECK(is_quasigroup(cut_quotient(E, p).algebra(), 0));
}

TEST_CASE("a cut above every membership value is empty") {
  const auto L = gen::chain_lattice(3);
  const auto A = test::groupoid({"a"}, {0});
  const auto E = require_lequality(LRelation::from_indices(L, A, {1}));
  const auto q = cut_quotient(E, L->top());
  CHECK(q.size() == 0);
  CHECK(mu_cut(E, L->top()).empty());
  CHECK(is_quasigroup(q.algebra(), 0));
}

TEST_CASE("fuzzy identities on the example") {
  const auto E = test::example_equality();
  const auto& L = E.lattice();
  const auto comm = check_fuzzy_identity(E, mul(x(1), x(2)), mul(x(2), x(1)));
  CHECK_FALSE(comm.holds);
  CHECK(comm.witness == test::set_of(E.algebra(), {"a", "b"}));
  CHECK(L.name(*comm.bound) == "1");
  CHECK(L.name(*comm.value) == "p");
  CHECK_FALSE(check_identity_via_cuts(E, mul(x(1), x(2)), mul(x(2), x(1))).holds);

  const auto assoc = check_fuzzy_identity(E, mul(x(1), mul(x(2), x(3))), mul(mul(x(1), x(2)), x(3)));
  CHECK_FALSE(assoc.holds);
  CHECK(assoc.witness == std::vector<Elem>{0, 0, 0});
  CHECK(L.name(*assoc.value) == "p");

  const auto t = mul(x(2), mul(x(1), x(1)));
  CHECK(check_fuzzy_identity(E, t, t).holds);
  CHECK(check_identity_via_cuts(E, t, t).holds);
}

TEST_CASE("identities of the crisp algebra hold for every equality on it") {
  gen::Rng rng(23);
  const auto Z3 = test::cyclic_group(3);
  const Term assoc_l = mul(x(1), mul(x(2), x(3)));
  const Term assoc_r = mul(mul(x(1), x(2)), x(3));
  const Term inv = Term::apply("inv", {x(1)});
  std::size_t checked = 0;
  for (int i = 0; i < 60; ++i) {
    const auto L = gen::random_lattice(rng, 8);
    const auto rel = gen::random_equality(rng, L, Z3);
    if (!rel) continue;
    const auto E = require_lequality(*rel);
    CHECK(check_fuzzy_identity(E, assoc_l, assoc_r).holds);
    CHECK(check_fuzzy_identity(E, mul(x(1), x(2)), mul(x(2), x(1))).holds);
    CHECK(check_fuzzy_identity(E, mul(x(1), inv), Term::apply("e")).holds);
    ++checked;
  }
  CHECK(checked > 30);
}

TEST_CASE("generated equalities validate") {
  gen::Rng rng(29);
  const Signature sig({{"*", 2}, {"i", 1}, {"k", 0}});
  for (int i = 0; i < 300; ++i) {
    const auto L = gen::random_lattice(rng, 8);
    const auto A = std::make_shared<const FiniteAlgebra>(gen::random_algebra(rng, 1 + i % 6, sig));
    const auto rel = gen::random_equality(rng, L, A);
    if (rel) CHECK(validate_lequality(*rel).report.ok());
  }
}

TEST_CASE("strictness, antitone cuts and the top cut") {
  for (const auto& E : random_instances(31, 300, 5)) {
    const auto& L = E.lattice();
    const std::size_t n = E.size();
    for (Elem a = 0; a < n; ++a)
      for (Elem b = 0; b < n; ++b)
        CHECK(L.leq_at(E.index_at(a, b), L.meet_at(E.mu_index(a), E.mu_index(b))));
    for (auto p : L.elements()) {
      const auto mp = mu_cut(E, p);
      const auto ep = e_cut(E, p).as_relation();
      for (auto q : L.elements()) {
        if (!L.leq(p, q)) continue;
        const auto mq = mu_cut(E, q);
        CHECK(std::includes(mp.begin(), mp.end(), mq.begin(), mq.end()));
        const auto eq = e_cut(E, q).as_relation();
        for (std::size_t k = 0; k < eq.size(); ++k)
          if (eq[k]) CHECK(ep[k]);
      }
    }
    const auto top = cut_quotient(E, L.top());
    for (const auto& block : top.blocks()) CHECK(block.size() == 1);
  }
}

TEST_CASE("terms never leave the membership bound") {
  gen::Rng rng(37);
  for (const auto& E : random_instances(41, 100, 4)) {
    const auto& L = E.lattice();
    const auto t = gen::random_term(rng, E.algebra().signature(), 3, 3);
    const CompiledTerm c(E.algebra(), t);
    const std::size_t vars = std::max<std::size_t>(t.max_variable(), 1);
    for_each_assignment(E.size(), vars, [&](std::span<const Elem> env) {
      std::size_t bound = L.top_index();
      for (Elem a : env) bound = L.meet_at(bound, E.mu_index(a));
      CHECK(L.leq_at(bound, E.mu_index(c.eval(env))));
      return true;
    });
  }
}

TEST_CASE("identity routes agree") {
  gen::Rng rng(43);
  for (const auto& E : random_instances(47, 200, 4)) {
    const auto& sig = E.algebra().signature();
    const auto u = gen::random_term(rng, sig, 3, 3);
    const auto v = gen::random_term(rng, sig, 3, 3);
    const auto direct = check_fuzzy_identity(E, u, v);
    const auto cuts = check_identity_via_cuts(E, u, v);
    CHECK(direct.holds == cuts.holds);
    if (!direct.holds) {
      CHECK_FALSE(E.lattice().leq(*direct.bound, *direct.value));
      CHECK(cuts.failing_cut);
    }
  }
}
