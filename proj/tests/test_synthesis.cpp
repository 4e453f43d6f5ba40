#include "doctest.h"
#include "lqg/synthesis.hpp"
#include "support.hpp"

using namespace lqg;
using test::elt;

namespace {

LEquality crisp(std::shared_ptr<const FiniteAlgebra> A) {
  return require_lequality(LRelation::crisp(gen::chain_lattice(2), std::move(A)));
}

LEquality fuzzy_loop() {
  return require_lequality(load_bundle(test::data_path("fuzzy_loop.bundle")).equality);
}

std::vector<Elem> table_of(const FiniteAlgebra& A, std::size_t op) {
  return {A.table(op).begin(), A.table(op).end()};
}

}  // namespace

TEST_CASE("divisions of the example") {
  const auto g = test::example_groupoid();
  const auto q = synthesize_divisions(g);
  const auto& A = q.equality.algebra();
  const Elem a = A.element("a"), b = A.element("b"), d = A.element("d");
  CHECK(A.name(A.binary(q.ops.left_div, a, d)) == "b");
  CHECK(A.name(A.binary(q.ops.right_div, d, b)) == "a");
  CHECK(check_equasigroup(q.equality, q.ops).holds);
  for (auto level : q.equality.lattice().elements())
    CHECK(check_lemma_quotient_divisions(q, level));

  // a\d lies in the class B = {b} of μ_q/E_q.
  const auto quo = cut_quotient(q.equality, elt(q.equality.lattice(), "q"));
  CHECK(quo.blocks()[*quo.block_of(A.binary(q.ops.left_div, a, d))] == ElementSet{b});
}

TEST_CASE("a corrupted left division breaks QE2") {
  const auto q = synthesize_divisions(test::example_groupoid());
  const auto& A = q.equality.algebra();
  auto constant = std::make_shared<const FiniteAlgebra>(
      A.reduct(std::vector<std::size_t>{0})
          .with_operation({"\\", 2}, std::vector<Elem>(25, 0))
          .with_operation({"/", 2}, table_of(A, q.ops.right_div)));
  const auto E = require_lequality(q.equality.relation().with_algebra(constant));
  const auto report = check_equasigroup(E, find_division_ops(*constant));
  CHECK_FALSE(report.holds);
  CHECK_FALSE(report.identities[1].holds);
  CHECK(report.identities[2].holds);
  CHECK(report.identities[3].holds);
}

TEST_CASE("crisp divisions are the classical ones") {
  const auto g = LGroupoid::reduct_of(crisp(test::cyclic_group(4)), "*");
  const auto q = synthesize_divisions(g);
  const auto& A = q.equality.algebra();
  for (Elem a = 0; a < 4; ++a)
    for (Elem b = 0; b < 4; ++b) {
      CHECK(A.binary(q.ops.left_div, a, b) ==
            solve_in_table(A, 0, Side::Left, a, b).front());
      CHECK(A.binary(q.ops.right_div, b, a) ==
            solve_in_table(A, 0, Side::Right, a, b).front());
    }
  CHECK(check_equasigroup(q.equality, q.ops).holds);
}

TEST_CASE("synthesis refuses groupoids that are not L-quasigroups") {
  const auto A = test::groupoid({"a", "b"}, {0, 0, 0, 0});
  const LGroupoid g(crisp(A));
  CHECK(test::error_kind([&] { synthesize_divisions(g); }) == ErrorKind::NotAnLQuasigroup);
}

TEST_CASE("choice of representative does not change quotient classes") {
  gen::Rng rng(61);
  std::size_t differing = 0, tested = 0;
  for (int i = 0; i < 300 && tested < 60; ++i) {
    const auto g = gen::random_lgroupoid(rng, gen::random_lattice(rng, 6), 5);
    if (!is_l_quasigroup(g).holds) continue;
    ++tested;
    const auto least = synthesize_divisions(g, Choice::LeastIndex);
    const auto greatest = synthesize_divisions(g, Choice::GreatestIndex);
    const auto& E = least.equality;
    const auto& L = E.lattice();
    const auto& A1 = least.equality.algebra();
    const auto& A2 = greatest.equality.algebra();
    if (table_of(A1, 1) != table_of(A2, 1) || table_of(A1, 2) != table_of(A2, 2)) ++differing;
    for (Elem a = 0; a < g.size(); ++a)
      for (Elem b = 0; b < g.size(); ++b) {
        const auto grade = L.meet_at(E.mu_index(a), E.mu_index(b));
        for (std::size_t q = 0; q < L.size(); ++q) {
          if (!L.leq_at(q, grade)) continue;
          CHECK(L.leq_at(q, E.index_at(A1.binary(1, a, b), A2.binary(1, a, b))));
          CHECK(L.leq_at(q, E.index_at(A1.binary(2, b, a), A2.binary(2, b, a))));
        }
      }
    CHECK(check_equasigroup(greatest.equality, greatest.ops).holds);
    // The multiplication reduct is again an L-quasigroup.
    CHECK(is_l_quasigroup(LGroupoid::reduct_of(greatest.equality, "*")).holds);
    for (auto level : L.elements()) CHECK(check_lemma_quotient_divisions(greatest, level));
  }
  CHECK(tested >= 60);
  CHECK(differing > 0);
}

TEST_CASE("semigroups") {
  const auto ex = test::example_equality();
  const auto r = is_l_semigroup(ex, 0);
  CHECK_FALSE(r.holds);
  CHECK(r.failed_law == "LG1");
  CHECK(r.witness.witness == std::vector<Elem>{0, 0, 0});
  CHECK(ex.lattice().name(*r.witness.bound) == "1");
  CHECK(is_l_semigroup(crisp(test::cyclic_group(3)), 0).holds);
  CHECK(is_l_semigroup(LGroupoid(crisp(test::groupoid({"a"}, {0})))).holds);
}

TEST_CASE("loops") {
  CHECK(is_l_loop(crisp(test::cyclic_group(3))).holds);
  CHECK(test::error_kind([] { is_l_loop(test::example_equality()); }) ==
        ErrorKind::NotApplicable);
  const auto E = fuzzy_loop();
  CHECK(is_l_loop(E).holds);
  // Two distinct cuts, each quotient a loop with identity [e].
  for (auto p : E.lattice().elements()) {
    const auto q = cut_quotient(E, p);
    CHECK(is_loop(q.algebra(), 0, 1));
  }
  CHECK(cut_quotient(E, E.lattice().top()).size() == 2);
  CHECK(mu_cut(E, elt(E.lattice(), "h")).size() == 4);
  // The underlying groupoid is not a loop: e·f = e.
  CHECK_FALSE(is_loop(E.algebra(), 0, 1));

  // A loop whose unit is not an identity.
  const auto A = std::make_shared<const FiniteAlgebra>(
      std::vector<std::string>{"0", "1"}, Signature({{"*", 2}, {"e", 0}}),
      std::vector<std::vector<Elem>>{{0, 1, 1, 0}, {1}});
  const auto r = is_l_loop(crisp(A));
  CHECK_FALSE(r.holds);
  CHECK(r.failed_law.rfind("LG2", 0) == 0);
}

TEST_CASE("groups and inverses") {
  const auto Z3 = crisp(test::cyclic_group(3));
  CHECK(is_l_group(Z3).holds);
  const auto ops = find_loop_ops(Z3.algebra());
  CHECK(synthesize_inverse(Z3, ops) == std::vector<Elem>{0, 2, 1});

  // Identity map as inverse.
  const auto& A = Z3.algebra();
  auto broken = std::make_shared<const FiniteAlgebra>(
      std::vector<std::string>(A.carrier().begin(), A.carrier().end()), A.signature(),
      std::vector<std::vector<Elem>>{table_of(A, 0), {0, 1, 2}, {0}});
  const auto r = is_l_group(crisp(broken));
  CHECK_FALSE(r.holds);
  CHECK(r.failed_law.rfind("LG3", 0) == 0);
  CHECK(r.witness.witness == std::vector<Elem>{1});

  const auto one = std::make_shared<const FiniteAlgebra>(
      std::vector<std::string>{"e"}, Signature({{"*", 2}, {"e", 0}}),
      std::vector<std::vector<Elem>>{{0}, {0}});
  CHECK(synthesize_inverse(crisp(one), find_loop_ops(*one)) == std::vector<Elem>{0});

  const auto E = fuzzy_loop();
  const auto inv = synthesize_inverse(E, find_loop_ops(E.algebra()));
  const auto G = with_inverse(E, find_loop_ops(E.algebra()), inv);
  REQUIRE(G);
  CHECK(is_l_group(G->equality, G->ops).holds);
  const Elem e = G->equality.algebra().constant(G->ops.unit);
  CHECK(G->equality.algebra().binary(G->ops.mul, e, e) == e);
  CHECK(G->equality.mu(e) == G->equality.lattice().top());
}

TEST_CASE("inverse synthesis needs an associative L-loop") {
  // Nonassociative loop of order 5.
  const auto loops = gen::all_loops(5);
  std::optional<std::vector<Elem>> table;
  for (const auto& t : loops) {
    const auto A = test::groupoid(gen::carrier_names(5), t);
    if (!is_associative(*A, 0)) {
      table = t;
      break;
    }
  }
  REQUIRE(table);
  const auto E = gen::crisp_loop(gen::chain_lattice(2), *table, 5);
  CHECK(is_l_loop(E).holds);
  CHECK_FALSE(is_l_semigroup(E, 0).holds);
  CHECK(test::error_kind([&] { synthesize_inverse(E, find_loop_ops(E.algebra())); }) ==
        ErrorKind::PreconditionFailed);
}

TEST_CASE("loop enumeration") {
  // Normalized Latin squares of orders 1..5.
  const std::size_t expected[] = {1, 1, 1, 4, 56};
  for (std::size_t n = 1; n <= 5; ++n) CHECK(gen::all_loops(n).size() == expected[n - 1]);
}

TEST_CASE("random fuzzy loops are L-loops") {
  gen::Rng rng(67);
  for (int i = 0; i < 100; ++i) {
    const auto E = gen::random_fuzzy_loop(rng, gen::random_lattice(rng, 6), 6, 4);
    CHECK(is_l_loop(E).holds);
    const Elem e = E.algebra().constant(1);
    CHECK(E.mu(e) == E.lattice().top());
  }
}
