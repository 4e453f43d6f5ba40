#include "lqg/solver.hpp"

#include <array>

namespace lqg {

LGroupoid::LGroupoid(LEquality equality) : equality_(std::move(equality)) {
  const auto& sig = equality_.algebra().signature();
  if (sig.size() != 1 || sig[0].arity != 2) {
    throw Error(ErrorKind::NotApplicable,
                "an L-groupoid has exactly one binary operation");
  }
}

LGroupoid LGroupoid::reduct_of(const LEquality& equality, std::string_view op) {
  const auto& A = equality.algebra();
  const std::size_t index = A.op_index(op);
  if (A.arity(index) != 2) {
    throw Error(ErrorKind::NotBinary,
                "operation '" + std::string(op) + "' is not binary");
  }
  const std::array<std::size_t, 1> ops{index};
  auto reduct = std::make_shared<const FiniteAlgebra>(A.reduct(ops));
  // Compatibility with a subset of the operations is inherited.
  return LGroupoid(require_lequality(equality.relation().with_algebra(reduct)));
}

LGroupoid LGroupoid::reduct_of(const LEquality& equality) {
  const auto op = equality.algebra().signature().first_of_arity(2);
  if (!op) {
    throw Error(ErrorKind::NotApplicable, "algebra has no binary operation");
  }
  return reduct_of(equality, equality.algebra().signature()[*op].name);
}

namespace {

std::size_t grade_index(const LGroupoid& g, Elem a, Elem b) {
  const auto& E = g.equality();
  return g.lattice().meet_at(E.mu_index(a), E.mu_index(b));
}

// p <= μ(c) ∧ E(a·c, b)
bool solves_at(const LGroupoid& g, Side side, Elem a, Elem b, Elem c,
               std::size_t p) {
  const auto& E = g.equality();
  const auto& L = g.lattice();
  return L.leq_at(p, L.meet_at(E.mu_index(c),
                               E.index_at(g.product(side, a, c), b)));
}

}  // namespace

std::optional<Elem> is_solvable(const LGroupoid& g, Side side, Elem a, Elem b) {
  const std::size_t p = grade_index(g, a, b);
  for (Elem c = 0; c < g.size(); ++c) {
    if (solves_at(g, side, a, b, c, p)) return c;
  }
  return std::nullopt;
}

ElementSet all_solutions(const LGroupoid& g, Side side, Elem a, Elem b) {
  const std::size_t p = grade_index(g, a, b);
  ElementSet out;
  for (Elem c = 0; c < g.size(); ++c) {
    if (solves_at(g, side, a, b, c, p)) out.push_back(c);
  }
  return out;
}

bool is_e_uniquely_solvable(const LGroupoid& g, Side side, Elem a, Elem b) {
  const auto solutions = all_solutions(g, side, a, b);
  if (solutions.empty()) return false;
  const auto& L = g.lattice();
  const auto& E = g.equality();
  const std::size_t grade = grade_index(g, a, b);
  for (std::size_t p = 0; p < L.size(); ++p) {
    if (!L.leq_at(p, grade)) continue;
    for (Elem c1 = 0; c1 < g.size(); ++c1) {
      if (!solves_at(g, side, a, b, c1, p)) continue;
      for (Elem c : solutions) {
        if (!L.leq_at(p, E.index_at(c, c1))) return false;
      }
    }
  }
  return true;
}

std::optional<Equation> first_non_unique_equation(const LGroupoid& g) {
  for (Elem a = 0; a < g.size(); ++a)
    for (Elem b = 0; b < g.size(); ++b)
      for (Side side : {Side::Left, Side::Right})
        if (!is_e_uniquely_solvable(g, side, a, b)) return Equation{side, a, b};
  return std::nullopt;
}

std::optional<LatticeElt> first_non_quasigroup_cut(const LGroupoid& g) {
  for (LatticeElt p : g.lattice().elements()) {
    if (!is_quasigroup(cut_quotient(g.equality(), p).algebra(), 0)) return p;
  }
  return std::nullopt;
}

LQuasigroupCertificate is_l_quasigroup(const LGroupoid& g) {
  LQuasigroupCertificate cert;
  cert.failing_equation = first_non_unique_equation(g);
  cert.failing_cut = first_non_quasigroup_cut(g);
  if (cert.failing_equation.has_value() != cert.failing_cut.has_value()) {
    throw Error(ErrorKind::InternalDisagreement,
                "equation route and cut route disagree on L-quasigroup status");
  }
  cert.holds = !cert.failing_equation;
  if (cert.holds) {
    for (LatticeElt p : g.lattice().elements()) {
      cert.quotients.push_back(cut_quotient(g.equality(), p));
    }
  }
  return cert;
}

SolveOutcome solve_outcome(const LGroupoid& g, Side side, Elem a, Elem b) {
  if (a >= g.size() || b >= g.size()) {
    throw Error(ErrorKind::UnknownName, "equation operand outside the carrier");
  }
  const LatticeElt p = g.lattice().element(grade_index(g, a, b));
  const auto q = cut_quotient(g.equality(), p);
  // a, b lie in μ_p because p <= μ(a) and p <= μ(b).
  const auto qa = static_cast<Elem>(*q.block_of(a));
  const auto qb = static_cast<Elem>(*q.block_of(b));
  SolveOutcome out{p, {}};
  for (Elem cls : solve_in_table(q.algebra(), 0, side, qa, qb)) {
    out.solving_classes.push_back(q.blocks()[cls]);
  }
  return out;
}

FuzzySolution solve(const LGroupoid& g, Side side, Elem a, Elem b) {
  auto outcome = solve_outcome(g, side, a, b);
  if (outcome.solving_classes.empty()) {
    throw SolveError(ErrorKind::NoSolution,
                     "no class solves the equation in the cut quotient",
                     std::move(outcome));
  }
  if (!outcome.unique()) {
    throw SolveError(ErrorKind::NotUnique,
                     std::to_string(outcome.solving_classes.size()) +
                         " classes solve the equation in the cut quotient",
                     std::move(outcome));
  }
  auto cls = outcome.solving_classes.front();
  const Elem rep = cls.front();
  return FuzzySolution{side, a, b, outcome.grade, std::move(cls), rep};
}

}  // namespace lqg
