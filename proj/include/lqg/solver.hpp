#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "lqg/algebra.hpp"
#include "lqg/error.hpp"
#include "lqg/lalgebra.hpp"

namespace lqg {

/// A groupoid (one binary operation) with a compatible L-valued equality.
class LGroupoid {
 public:
  /// `equality` must be over an algebra whose only operation is binary.
  explicit LGroupoid(LEquality equality);

  /// The groupoid reduct on operation `op` of a larger L-algebra.
  static LGroupoid reduct_of(const LEquality& equality, std::string_view op);
  /// Reduct on the first declared binary operation.
  static LGroupoid reduct_of(const LEquality& equality);

  const LEquality& equality() const noexcept { return equality_; }
  const FiniteAlgebra& algebra() const noexcept { return equality_.algebra(); }
  const FiniteLattice& lattice() const noexcept { return equality_.lattice(); }
  std::size_t size() const noexcept { return algebra().size(); }

  Elem mul(Elem x, Elem y) const { return algebra().binary(0, x, y); }
  /// a·x for Side::Left, x·a for Side::Right.
  Elem product(Side side, Elem a, Elem x) const {
    return side == Side::Left ? mul(a, x) : mul(x, a);
  }

 private:
  LEquality equality_;
};

/// One equation a·x = b (left) or y·a = b (right).
struct Equation {
  Side side;
  Elem a;
  Elem b;

  friend bool operator==(const Equation&, const Equation&) = default;
};

/// First c in carrier order with μ(a)∧μ(b) <= μ(c) ∧ E(a·c, b) (or c·a).
std::optional<Elem> is_solvable(const LGroupoid& g, Side side, Elem a, Elem b);

/// Every c satisfying the solvability inequality.
ElementSet all_solutions(const LGroupoid& g, Side side, Elem a, Elem b);

/// Solvable, and for every p <= μ(a)∧μ(b) and every c1 with
/// p <= μ(c1) ∧ E(a·c1, b), every solution c has E(c, c1) >= p.
bool is_e_uniquely_solvable(const LGroupoid& g, Side side, Elem a, Elem b);

/// Direct route: first equation (a, b, side order) that is not E-uniquely
/// solvable, or nullopt when all are.
std::optional<Equation> first_non_unique_equation(const LGroupoid& g);

/// Cut route: first p in lattice order whose quotient is not a quasigroup.
std::optional<LatticeElt> first_non_quasigroup_cut(const LGroupoid& g);

struct LQuasigroupCertificate {
  bool holds = false;
  /// Per-p quotients, in lattice element order, when `holds`.
  std::vector<QuotientAlgebra> quotients;
  std::optional<Equation> failing_equation;
  std::optional<LatticeElt> failing_cut;
};

/// Runs both routes; throws InternalDisagreement if they differ.
LQuasigroupCertificate is_l_quasigroup(const LGroupoid& g);

struct FuzzySolution {
  Side side;
  Elem a;
  Elem b;
  LatticeElt grade;
  ElementSet solution_class;
  Elem canonical_rep;
};

/// Outcome of solving [a]·X = [b] in μ_p/E_p with p = μ(a)∧μ(b).
struct SolveOutcome {
  LatticeElt grade;
  /// Every quotient class solving the equation, in block order.
  std::vector<ElementSet> solving_classes;

  bool unique() const noexcept { return solving_classes.size() == 1; }
};

SolveOutcome solve_outcome(const LGroupoid& g, Side side, Elem a, Elem b);

class SolveError : public Error {
 public:
  SolveError(ErrorKind kind, const std::string& message, SolveOutcome outcome)
      : Error(kind, message), outcome_(std::move(outcome)) {}

  const SolveOutcome& outcome() const noexcept { return outcome_; }

 private:
  SolveOutcome outcome_;
};

/// Per-instance solution; throws SolveError (NoSolution or NotUnique).
FuzzySolution solve(const LGroupoid& g, Side side, Elem a, Elem b);

}  // namespace lqg
