#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lqg/algebra.hpp"
#include "lqg/lattice.hpp"

namespace lqg {

/// Lattice-valued binary relation on the carrier of an algebra.
class LRelation {
 public:
  LRelation(std::shared_ptr<const FiniteLattice> lattice,
            std::shared_ptr<const FiniteAlgebra> algebra,
            const std::vector<LatticeElt>& values);

  /// `values` holds lattice indices, row-major over carrier pairs.
  static LRelation from_indices(std::shared_ptr<const FiniteLattice> lattice,
                                std::shared_ptr<const FiniteAlgebra> algebra,
                                std::vector<std::uint32_t> values);

  /// Diagonal top, everything else bottom.
  static LRelation crisp(std::shared_ptr<const FiniteLattice> lattice,
                         std::shared_ptr<const FiniteAlgebra> algebra);

  const FiniteLattice& lattice() const noexcept { return *lattice_; }
  const FiniteAlgebra& algebra() const noexcept { return *algebra_; }
  const std::shared_ptr<const FiniteLattice>& lattice_ptr() const noexcept {
    return lattice_;
  }
  const std::shared_ptr<const FiniteAlgebra>& algebra_ptr() const noexcept {
    return algebra_;
  }

  LatticeElt at(Elem x, Elem y) const {
    return lattice_->element(index_at(x, y));
  }
  std::size_t index_at(Elem x, Elem y) const noexcept {
    return values_[x * algebra_->size() + y];
  }
  std::span<const std::uint32_t> indices() const noexcept { return values_; }

  /// Same values over another algebra with the same carrier.
  LRelation with_algebra(std::shared_ptr<const FiniteAlgebra> algebra) const;

 private:
  LRelation() = default;

  std::shared_ptr<const FiniteLattice> lattice_;
  std::shared_ptr<const FiniteAlgebra> algebra_;
  std::vector<std::uint32_t> values_;
};

enum class ViolationKind {
  Symmetry,
  Transitivity,
  Separation,
  Compatibility,
  ConstantNotOne,
  ConstantlyBottom,
};

std::string_view to_string(ViolationKind kind) noexcept;

/// One violated axiom: the lexicographically least witnessing tuple and how
/// many tuples violate it in total.
struct Violation {
  ViolationKind kind;
  std::string operation;       // for Compatibility / ConstantNotOne
  std::vector<Elem> witness;   // (x,y) / (x,y,z) / (a1..an,b1..bn) / (c)
  std::size_t count = 0;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const noexcept { return violations.empty(); }
  const Violation* find(ViolationKind kind) const;
};

struct ValidationResult;
ValidationResult validate_lequality(const LRelation& relation);

/// An LRelation that passed validation, with μ(x) = E(x,x) cached.
class LEquality {
 public:
  const LRelation& relation() const noexcept { return relation_; }
  const FiniteLattice& lattice() const noexcept { return relation_.lattice(); }
  const FiniteAlgebra& algebra() const noexcept { return relation_.algebra(); }
  std::size_t size() const noexcept { return algebra().size(); }

  LatticeElt at(Elem x, Elem y) const { return relation_.at(x, y); }
  std::size_t index_at(Elem x, Elem y) const noexcept {
    return relation_.index_at(x, y);
  }
  LatticeElt mu(Elem x) const { return lattice().element(mu_[x]); }
  std::size_t mu_index(Elem x) const noexcept { return mu_[x]; }

 private:
  friend ValidationResult validate_lequality(const LRelation&);
  explicit LEquality(LRelation relation);

  LRelation relation_;
  std::vector<std::uint32_t> mu_;
};

struct ValidationResult {
  std::optional<LEquality> equality;
  ValidationReport report;
};

/// Checks symmetry, transitivity, separation, compatibility with every
/// operation and E(c,c) = 1 for constants; all violations are reported.
ValidationResult validate_lequality(const LRelation& relation);

/// validate_lequality that throws InvalidEquality on any violation.
LEquality require_lequality(const LRelation& relation);

struct Membership {
  std::vector<LatticeElt> values;
};

Membership membership(const LEquality& equality);

/// μ_p = { x | μ(x) >= p }.
ElementSet mu_cut(const LEquality& equality, LatticeElt p);
/// Partition of μ_p by E(x,y) >= p.
EquivRelation e_cut(const LEquality& equality, LatticeElt p);
/// μ_p / E_p with canonical block order.
QuotientAlgebra cut_quotient(const LEquality& equality, LatticeElt p);

struct CutPair {
  LatticeElt p;
  ElementSet mu_p;
  EquivRelation e_p;
};
CutPair cut_pair(const LEquality& equality, LatticeElt p);

struct FuzzyIdentityResult {
  bool holds = true;
  std::vector<Elem> witness;       // least failing assignment
  std::optional<LatticeElt> bound; // meet of μ over the witness
  std::optional<LatticeElt> value; // E(u(witness), v(witness))
};

FuzzyIdentityResult check_fuzzy_identity(const LEquality& equality,
                                         const Term& u, const Term& v);

struct CutIdentityResult {
  bool holds = true;
  std::optional<LatticeElt> failing_cut;
};

CutIdentityResult check_identity_via_cuts(const LEquality& equality,
                                          const Term& u, const Term& v);

}  // namespace lqg
