#include "lqg/synthesis.hpp"

#include <memory>

#include "lqg/error.hpp"

namespace lqg {

namespace {

Term x(std::size_t i) { return Term::variable(i); }
Term bin(const std::string& op, Term a, Term b) {
  return Term::apply(op, {std::move(a), std::move(b)});
}
Term un(const std::string& op, Term a) { return Term::apply(op, {std::move(a)}); }
Term cst(const std::string& op) { return Term::apply(op); }

Elem pick(const ElementSet& cls, Choice choice) {
  return choice == Choice::LeastIndex ? cls.front() : cls.back();
}

LEquality reduct_equality(const LEquality& equality,
                          std::initializer_list<std::size_t> ops) {
  const std::vector<std::size_t> list(ops);
  auto reduct = std::make_shared<const FiniteAlgebra>(
      equality.algebra().reduct(list));
  return require_lequality(equality.relation().with_algebra(std::move(reduct)));
}

const std::string& op_name(const LEquality& equality, std::size_t op) {
  return equality.algebra().signature()[op].name;
}

// Runs the fuzzy identity and records it in `report` on failure. Returns
// whether it held.
bool record(LawReport& report, const std::string& law,
            const FuzzyIdentityResult& result) {
  if (!result.holds && report.holds) {
    report.holds = false;
    report.failed_law = law;
    report.witness = result;
  }
  return result.holds;
}

void require_agreement(bool direct, bool cuts, const std::string& what) {
  if (direct != cuts) {
    throw Error(ErrorKind::InternalDisagreement,
                what + ": identity route and cut route disagree");
  }
}

}  // namespace

// ---------------------------------------------------------------- divisions

DivisionOps find_division_ops(const FiniteAlgebra& algebra) {
  const auto& sig = algebra.signature();
  const auto left = sig.find(kLeftDivision);
  const auto right = sig.find(kRightDivision);
  if (!left || !right || sig[*left].arity != 2 || sig[*right].arity != 2) {
    throw Error(ErrorKind::NotApplicable,
                "algebra lacks binary operations '\\' and '/'");
  }
  for (std::size_t op = 0; op < sig.size(); ++op) {
    if (sig[op].arity == 2 && op != *left && op != *right) {
      return DivisionOps{op, *left, *right};
    }
  }
  throw Error(ErrorKind::NotApplicable, "algebra lacks a multiplication");
}

LEquasigroup synthesize_divisions(const LGroupoid& g, Choice choice) {
  const auto& mul_name = g.algebra().signature()[0].name;
  if (mul_name == kLeftDivision || mul_name == kRightDivision) {
    throw Error(ErrorKind::NotApplicable,
                "multiplication may not be named like a division");
  }
  const auto cert = is_l_quasigroup(g);
  if (!cert.holds) {
    throw Error(ErrorKind::NotAnLQuasigroup,
                "division synthesis needs an L-quasigroup");
  }

  const std::size_t n = g.size();
  std::vector<Elem> left(n * n);
  std::vector<Elem> right(n * n);
  for (Elem a = 0; a < n; ++a) {
    for (Elem b = 0; b < n; ++b) {
      // a\b solves [a]·X = [b]; b/a solves Y·[a] = [b].
      const auto l = solve_outcome(g, Side::Left, a, b);
      const auto r = solve_outcome(g, Side::Right, a, b);
      if (!l.unique() || !r.unique()) {
        throw Error(ErrorKind::InternalInvariant,
                    "L-quasigroup with a non-unique quotient solution");
      }
      left[a * n + b] = pick(l.solving_classes.front(), choice);
      right[b * n + a] = pick(r.solving_classes.front(), choice);
    }
  }

  auto algebra = std::make_shared<const FiniteAlgebra>(
      g.algebra()
          .with_operation({std::string(kLeftDivision), 2}, std::move(left))
          .with_operation({std::string(kRightDivision), 2}, std::move(right)));
  auto validated =
      validate_lequality(g.equality().relation().with_algebra(algebra));
  if (!validated.equality) {
    throw Error(ErrorKind::QEViolation,
                "E is not compatible with the synthesized divisions");
  }
  LEquasigroup out{std::move(*validated.equality), DivisionOps{0, 1, 2}};
  if (!check_equasigroup(out.equality, out.ops).holds) {
    throw Error(ErrorKind::QEViolation,
                "synthesized divisions violate QE1-QE4");
  }
  return out;
}

EquasigroupReport check_equasigroup(const LEquality& equality,
                                    const DivisionOps& ops) {
  const auto& m = op_name(equality, ops.mul);
  const auto& l = op_name(equality, ops.left_div);
  const auto& r = op_name(equality, ops.right_div);
  // x = x1, y = x2
  const std::array<std::pair<Term, Term>, 4> laws{{
      {x(2), bin(m, x(1), bin(l, x(1), x(2)))},
      {x(2), bin(l, x(1), bin(m, x(1), x(2)))},
      {x(2), bin(m, bin(r, x(2), x(1)), x(1))},
      {x(2), bin(r, bin(m, x(2), x(1)), x(1))},
  }};

  EquasigroupReport report;
  std::array<bool, 4> via_cuts{true, true, true, true};
  for (LatticeElt p : equality.lattice().elements()) {
    const auto q = cut_quotient(equality, p);
    for (std::size_t i = 0; i < laws.size(); ++i) {
      if (via_cuts[i] && !satisfies_identity(q.algebra(), laws[i].first,
                                             laws[i].second)) {
        via_cuts[i] = false;
      }
    }
  }
  for (std::size_t i = 0; i < laws.size(); ++i) {
    report.identities[i] =
        check_fuzzy_identity(equality, laws[i].first, laws[i].second);
    require_agreement(report.identities[i].holds, via_cuts[i],
                      "QE" + std::to_string(i + 1));
    report.holds = report.holds && report.identities[i].holds;
  }
  return report;
}

bool check_lemma_quotient_divisions(const LEquasigroup& q, LatticeElt level) {
  const auto quotient = cut_quotient(q.equality, level);
  const auto& A = q.equality.algebra();
  const auto& Q = quotient.algebra();
  for (const auto& block_a : quotient.blocks()) {
    for (Elem a : block_a) {
      for (const auto& block_b : quotient.blocks()) {
        for (Elem b : block_b) {
          const auto qa = static_cast<Elem>(*quotient.block_of(a));
          const auto qb = static_cast<Elem>(*quotient.block_of(b));
          const auto ldiv = quotient.block_of(A.binary(q.ops.left_div, a, b));
          const auto rdiv = quotient.block_of(A.binary(q.ops.right_div, a, b));
          if (!ldiv || !rdiv) return false;
          const auto x = solve_in_table(Q, q.ops.mul, Side::Left, qa, qb);
          const auto y = solve_in_table(Q, q.ops.mul, Side::Right, qb, qa);
          if (x.size() != 1 || x[0] != *ldiv) return false;
          if (y.size() != 1 || y[0] != *rdiv) return false;
        }
      }
    }
  }
  return true;
}

// ------------------------------------------------------- semigroups, loops

LoopOps find_loop_ops(const FiniteAlgebra& algebra) {
  const auto mul = algebra.signature().first_of_arity(2);
  const auto unit = algebra.signature().first_of_arity(0);
  if (!mul || !unit) {
    throw Error(ErrorKind::NotApplicable,
                "loop checks need a binary operation and a constant");
  }
  return LoopOps{*mul, *unit};
}

GroupOps find_group_ops(const FiniteAlgebra& algebra) {
  const auto loop = find_loop_ops(algebra);
  const auto inv = algebra.signature().first_of_arity(1);
  if (!inv) {
    throw Error(ErrorKind::NotApplicable, "group checks need a unary operation");
  }
  return GroupOps{loop.mul, *inv, loop.unit};
}

LawReport is_l_semigroup(const LEquality& equality, std::size_t mul) {
  const auto& m = op_name(equality, mul);
  const Term lhs = bin(m, x(1), bin(m, x(2), x(3)));
  const Term rhs = bin(m, bin(m, x(1), x(2)), x(3));
  LawReport report;
  record(report, "LG1", check_fuzzy_identity(equality, lhs, rhs));
  const auto cuts = check_identity_via_cuts(equality, lhs, rhs);
  require_agreement(report.holds, cuts.holds, "LG1");
  report.failing_cut = cuts.failing_cut;
  return report;
}

LawReport is_l_semigroup(const LGroupoid& g) {
  return is_l_semigroup(g.equality(), 0);
}

LawReport is_l_loop(const LEquality& equality, const LoopOps& ops) {
  const auto& m = op_name(equality, ops.mul);
  const auto& e = op_name(equality, ops.unit);
  const auto& L = equality.lattice();
  LawReport report;

  const auto groupoid = LGroupoid::reduct_of(equality, m);
  if (!is_l_quasigroup(groupoid).holds && report.holds) {
    report.holds = false;
    report.failed_law = "L-quasigroup";
  }
  const Elem unit = equality.algebra().constant(ops.unit);
  if (equality.index_at(unit, unit) != L.top_index() && report.holds) {
    report.holds = false;
    report.failed_law = "E(e,e)=1";
  }
  record(report, "LG2 (x*e ~ x)",
         check_fuzzy_identity(equality, bin(m, x(1), cst(e)), x(1)));
  record(report, "LG2 (e*x ~ x)",
         check_fuzzy_identity(equality, bin(m, cst(e), x(1)), x(1)));

  const auto reduct = reduct_equality(equality, {ops.mul, ops.unit});
  bool cuts = true;
  for (LatticeElt p : L.elements()) {
    if (!is_loop(cut_quotient(reduct, p).algebra(), 0, 1)) {
      cuts = false;
      report.failing_cut = p;
      break;
    }
  }
  require_agreement(report.holds, cuts, "L-loop");
  return report;
}

LawReport is_l_loop(const LEquality& equality) {
  return is_l_loop(equality, find_loop_ops(equality.algebra()));
}

LawReport is_l_group(const LEquality& equality, const GroupOps& ops) {
  const auto& m = op_name(equality, ops.mul);
  const auto& i = op_name(equality, ops.inv);
  const auto& e = op_name(equality, ops.unit);
  LawReport report;
  record(report, "LG1",
         check_fuzzy_identity(equality, bin(m, x(1), bin(m, x(2), x(3))),
                              bin(m, bin(m, x(1), x(2)), x(3))));
  record(report, "LG2 (x*e ~ x)",
         check_fuzzy_identity(equality, bin(m, x(1), cst(e)), x(1)));
  record(report, "LG2 (e*x ~ x)",
         check_fuzzy_identity(equality, bin(m, cst(e), x(1)), x(1)));
  record(report, "LG3 (x*x' ~ e)",
         check_fuzzy_identity(equality, bin(m, x(1), un(i, x(1))), cst(e)));
  record(report, "LG3 (x'*x ~ e)",
         check_fuzzy_identity(equality, bin(m, un(i, x(1)), x(1)), cst(e)));

  const auto reduct = reduct_equality(equality, {ops.mul, ops.inv, ops.unit});
  bool cuts = true;
  for (LatticeElt p : equality.lattice().elements()) {
    if (!is_group(cut_quotient(reduct, p).algebra(), 0, 1, 2)) {
      cuts = false;
      report.failing_cut = p;
      break;
    }
  }
  require_agreement(report.holds, cuts, "L-group");

  if (report.holds) {
    const Elem unit = equality.algebra().constant(ops.unit);
    if (equality.algebra().binary(ops.mul, unit, unit) != unit) {
      throw Error(ErrorKind::InternalInvariant, "L-group with e*e != e");
    }
  }
  return report;
}

LawReport is_l_group(const LEquality& equality) {
  return is_l_group(equality, find_group_ops(equality.algebra()));
}

// ------------------------------------------------------------------ inverse

std::optional<std::vector<Elem>> inverse_candidate(const LEquality& equality,
                                                   const LoopOps& ops,
                                                   Choice choice) {
  const auto reduct = reduct_equality(equality, {ops.mul, ops.unit});
  const auto& L = equality.lattice();
  const Elem unit = equality.algebra().constant(ops.unit);
  std::vector<Elem> inverse(equality.size());
  for (Elem a = 0; a < equality.size(); ++a) {
    const auto q = cut_quotient(reduct, L.element(equality.mu_index(a)));
    const auto qa = static_cast<Elem>(*q.block_of(a));
    const auto qe = static_cast<Elem>(*q.block_of(unit));
    const auto cls = solve_in_table(q.algebra(), 0, Side::Left, qa, qe);
    if (cls.size() != 1) return std::nullopt;
    inverse[a] = pick(q.blocks()[cls[0]], choice);
  }
  return inverse;
}

std::optional<LGroupInstance> with_inverse(const LEquality& equality,
                                           const LoopOps& ops,
                                           const std::vector<Elem>& inverse) {
  const std::array<std::size_t, 2> keep{ops.mul, ops.unit};
  auto algebra = std::make_shared<const FiniteAlgebra>(
      equality.algebra().reduct(keep).with_operation(
          {std::string(kInverse), 1}, inverse));
  auto validated =
      validate_lequality(equality.relation().with_algebra(std::move(algebra)));
  if (!validated.equality) return std::nullopt;
  return LGroupInstance{std::move(*validated.equality), GroupOps{0, 2, 1}};
}

std::vector<Elem> synthesize_inverse(const LEquality& equality,
                                     const LoopOps& ops, Choice choice) {
  const auto semigroup = is_l_semigroup(equality, ops.mul);
  const auto loop = is_l_loop(equality, ops);
  if (!semigroup.holds || !loop.holds) {
    throw Error(ErrorKind::PreconditionFailed,
                std::string("inverse synthesis needs an L-semigroup and an "
                            "L-loop; failed: ") +
                    (semigroup.holds ? loop.failed_law : semigroup.failed_law));
  }
  auto inverse = inverse_candidate(equality, ops, choice);
  if (!inverse) {
    throw Error(ErrorKind::InternalInvariant,
                "L-loop with a non-unique quotient inverse");
  }
  const auto group = with_inverse(equality, ops, *inverse);
  if (!group || !is_l_group(group->equality, group->ops).holds) {
    throw Error(ErrorKind::InternalInvariant,
                "synthesized inverse does not give an L-group");
  }
  return *inverse;
}

}  // namespace lqg
