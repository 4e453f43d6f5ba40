#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "lqg/lalgebra.hpp"
#include "lqg/solver.hpp"

namespace lqg {

/// Which member of a solution class becomes the operation value. The carrier
/// is finite, so a fixed rule stands in for an arbitrary choice function.
enum class Choice { LeastIndex, GreatestIndex };

inline constexpr std::string_view kLeftDivision = "\\";
inline constexpr std::string_view kRightDivision = "/";
inline constexpr std::string_view kInverse = "inv";

struct DivisionOps {
  std::size_t mul = 0;
  std::size_t left_div = 0;   // x \ y
  std::size_t right_div = 0;  // y / x
};

struct LEquasigroup {
  LEquality equality;
  DivisionOps ops;
};

/// Result of checking a family of laws; on failure names the first failed
/// law with its witness.
struct LawReport {
  bool holds = true;
  std::string failed_law;
  FuzzyIdentityResult witness;
  std::optional<LatticeElt> failing_cut;

  explicit operator bool() const noexcept { return holds; }
};

/// Builds \ and / from the unique quotient solutions at p = μ(a)∧μ(b).
/// Throws NotAnLQuasigroup when the input is not an L-quasigroup.
LEquasigroup synthesize_divisions(const LGroupoid& g,
                                  Choice choice = Choice::LeastIndex);

/// Finds ·, \ and / in an algebra: the first binary operation that is not a
/// division is ·; the divisions are looked up by name.
DivisionOps find_division_ops(const FiniteAlgebra& algebra);

struct EquasigroupReport {
  bool holds = true;
  /// QE1..QE4 in order.
  std::array<FuzzyIdentityResult, 4> identities;
};

/// QE1–QE4 as fuzzy identities, cross-checked against Q1–Q4 on every cut
/// quotient (throws InternalDisagreement if the routes differ).
EquasigroupReport check_equasigroup(const LEquality& equality,
                                    const DivisionOps& ops);

/// For all a, b in μ_q: [a\b] = [a]\[b] and [a/b] = [a]/[b] in μ_q/E_q, with
/// the right-hand sides computed by solving in the quotient's · table.
bool check_lemma_quotient_divisions(const LEquasigroup& q, LatticeElt level);

struct LoopOps {
  std::size_t mul = 0;
  std::size_t unit = 0;
};

struct GroupOps {
  std::size_t mul = 0;
  std::size_t inv = 0;
  std::size_t unit = 0;
};

/// First binary operation and first constant; throws NotApplicable if absent.
LoopOps find_loop_ops(const FiniteAlgebra& algebra);
/// Adds the first unary operation; throws NotApplicable if absent.
GroupOps find_group_ops(const FiniteAlgebra& algebra);

/// LG1 as a fuzzy identity, cross-checked on every cut quotient.
LawReport is_l_semigroup(const LEquality& equality, std::size_t mul);
LawReport is_l_semigroup(const LGroupoid& g);

/// L-quasigroup on ·, E(e,e) = 1 and LG2; cross-checked against "every cut
/// quotient is a loop with identity [e]".
LawReport is_l_loop(const LEquality& equality, const LoopOps& ops);
LawReport is_l_loop(const LEquality& equality);

/// LG1–LG3; cross-checked against "every cut quotient is a group". Accepted
/// instances are also checked for e·e = e in the underlying table.
LawReport is_l_group(const LEquality& equality, const GroupOps& ops);
LawReport is_l_group(const LEquality& equality);

/// ⁻¹ candidate from the quotient equations [a]·X = [e] at p = μ(a); nullopt
/// when some equation lacks a unique solving class. No precondition check.
std::optional<std::vector<Elem>> inverse_candidate(const LEquality& equality,
                                                   const LoopOps& ops,
                                                   Choice choice);

struct LGroupInstance {
  LEquality equality;
  GroupOps ops;
};

/// The (·, e) reduct extended by the unary table `inverse` (named "inv");
/// nullopt if E is not compatible with it.
std::optional<LGroupInstance> with_inverse(const LEquality& equality,
                                           const LoopOps& ops,
                                           const std::vector<Elem>& inverse);

/// Throws PreconditionFailed unless the input is an L-semigroup and an
/// L-loop. The returned table always passes is_l_group.
std::vector<Elem> synthesize_inverse(const LEquality& equality,
                                     const LoopOps& ops,
                                     Choice choice = Choice::LeastIndex);

}  // namespace lqg
