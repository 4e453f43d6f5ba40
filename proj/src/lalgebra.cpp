#include "lqg/lalgebra.hpp"

#include <algorithm>

#include "lqg/error.hpp"

namespace lqg {

// ---------------------------------------------------------------- LRelation

LRelation::LRelation(std::shared_ptr<const FiniteLattice> lattice,
                     std::shared_ptr<const FiniteAlgebra> algebra,
                     const std::vector<LatticeElt>& values)
    : lattice_(std::move(lattice)), algebra_(std::move(algebra)) {
  const std::size_t n = algebra_->size();
  if (values.size() != n * n) {
    throw Error(ErrorKind::DimensionMismatch,
                "equality table must have carrier-squared entries");
  }
  values_.reserve(values.size());
  for (LatticeElt v : values) {
    if (v.lattice_id() != lattice_->id()) {
      throw Error(ErrorKind::LatticeMismatch,
                  "equality entry taken from a different lattice");
    }
    values_.push_back(static_cast<std::uint32_t>(v.index()));
  }
}

LRelation LRelation::from_indices(std::shared_ptr<const FiniteLattice> lattice,
                                  std::shared_ptr<const FiniteAlgebra> algebra,
                                  std::vector<std::uint32_t> values) {
  const std::size_t n = algebra->size();
  if (values.size() != n * n) {
    throw Error(ErrorKind::DimensionMismatch,
                "equality table must have carrier-squared entries");
  }
  for (auto v : values) {
    if (v >= lattice->size()) {
      throw Error(ErrorKind::UnknownElement, "equality entry outside lattice");
    }
  }
  LRelation r;
  r.lattice_ = std::move(lattice);
  r.algebra_ = std::move(algebra);
  r.values_ = std::move(values);
  return r;
}

LRelation LRelation::crisp(std::shared_ptr<const FiniteLattice> lattice,
                           std::shared_ptr<const FiniteAlgebra> algebra) {
  const std::size_t n = algebra->size();
  std::vector<std::uint32_t> values(
      n * n, static_cast<std::uint32_t>(lattice->bottom_index()));
  for (std::size_t x = 0; x < n; ++x) {
    values[x * n + x] = static_cast<std::uint32_t>(lattice->top_index());
  }
  return from_indices(std::move(lattice), std::move(algebra), std::move(values));
}

LRelation LRelation::with_algebra(
    std::shared_ptr<const FiniteAlgebra> algebra) const {
  if (algebra->size() != algebra_->size()) {
    throw Error(ErrorKind::DimensionMismatch,
                "relation moved to an algebra with a different carrier");
  }
  return from_indices(lattice_, std::move(algebra), values_);
}

// --------------------------------------------------------------- validation

std::string_view to_string(ViolationKind kind) noexcept {
  switch (kind) {
    case ViolationKind::Symmetry: return "Symmetry";
    case ViolationKind::Transitivity: return "Transitivity";
    case ViolationKind::Separation: return "Separation";
    case ViolationKind::Compatibility: return "Compatibility";
    case ViolationKind::ConstantNotOne: return "ConstantNotOne";
    case ViolationKind::ConstantlyBottom: return "ConstantlyBottom";
  }
  return "Unknown";
}

const Violation* ValidationReport::find(ViolationKind kind) const {
  for (const auto& v : violations)
    if (v.kind == kind) return &v;
  return nullptr;
}

namespace {

// Collects the first (least) witness and a running count for one axiom.
class Tally {
 public:
  Tally(ViolationKind kind, std::string op = {})
      : violation_{kind, std::move(op), {}, 0} {}

  void hit(std::initializer_list<Elem> tuple) {
    if (violation_.count++ == 0) violation_.witness.assign(tuple);
  }
  void flush(ValidationReport& report) {
    if (violation_.count > 0) report.violations.push_back(std::move(violation_));
  }

 private:
  Violation violation_;
};

}  // namespace

LEquality::LEquality(LRelation relation) : relation_(std::move(relation)) {
  const std::size_t n = relation_.algebra().size();
  mu_.resize(n);
  for (Elem x = 0; x < n; ++x) {
    mu_[x] = static_cast<std::uint32_t>(relation_.index_at(x, x));
  }
}

ValidationResult validate_lequality(const LRelation& r) {
  const FiniteLattice& L = r.lattice();
  const FiniteAlgebra& A = r.algebra();
  const auto n = static_cast<Elem>(A.size());
  const std::size_t top = L.top_index();
  auto E = [&](Elem x, Elem y) { return r.index_at(x, y); };
  auto leq = [&](std::size_t p, std::size_t q) { return L.leq_at(p, q); };
  auto meet = [&](std::size_t p, std::size_t q) { return L.meet_at(p, q); };

  ValidationResult result;
  auto& report = result.report;

  Tally symmetry(ViolationKind::Symmetry);
  for (Elem x = 0; x < n; ++x)
    for (Elem y = x + 1; y < n; ++y)
      if (E(x, y) != E(y, x)) symmetry.hit({x, y});
  symmetry.flush(report);

  Tally transitivity(ViolationKind::Transitivity);
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y)
      for (Elem z = 0; z < n; ++z)
        if (!leq(meet(E(x, z), E(z, y)), E(x, y))) transitivity.hit({x, y, z});
  transitivity.flush(report);

  // In the one-element lattice 1 = 0, so separation forbids any off-diagonal
  // pair at all.
  Tally separation(ViolationKind::Separation);
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y)
      if (x != y && E(x, y) == top) separation.hit({x, y});
  separation.flush(report);

  for (std::size_t op = 0; op < A.signature().size(); ++op) {
    const std::string& name = A.signature()[op].name;
    switch (A.arity(op)) {
      case 0: {
        Tally t(ViolationKind::ConstantNotOne, name);
        const Elem c = A.constant(op);
        if (E(c, c) != top) t.hit({c});
        t.flush(report);
        break;
      }
      case 1: {
        Tally t(ViolationKind::Compatibility, name);
        for (Elem a = 0; a < n; ++a)
          for (Elem b = 0; b < n; ++b)
            if (!leq(E(a, b), E(A.unary(op, a), A.unary(op, b)))) t.hit({a, b});
        t.flush(report);
        break;
      }
      default: {
        Tally t(ViolationKind::Compatibility, name);
        for (Elem a1 = 0; a1 < n; ++a1)
          for (Elem a2 = 0; a2 < n; ++a2)
            for (Elem b1 = 0; b1 < n; ++b1)
              for (Elem b2 = 0; b2 < n; ++b2)
                if (!leq(meet(E(a1, b1), E(a2, b2)),
                         E(A.binary(op, a1, a2), A.binary(op, b1, b2))))
                  t.hit({a1, a2, b1, b2});
        t.flush(report);
        break;
      }
    }
  }

  if (L.size() > 1) {
    bool all_bottom = true;
    for (Elem x = 0; x < n && all_bottom; ++x)
      all_bottom = E(x, x) == L.bottom_index();
    if (all_bottom) {
      Tally t(ViolationKind::ConstantlyBottom);
      t.hit({});
      t.flush(report);
    }
  }

  if (!report.ok()) return result;

  LEquality eq(r);
  // Strictness and the L-subalgebra property of μ follow from the axioms
  // above; a failure here is a bug, not bad input.
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y)
      if (!leq(E(x, y), meet(eq.mu_index(x), eq.mu_index(y)))) {
        throw Error(ErrorKind::InternalInvariant, "strictness failed at (" +
                                                      A.name(x) + ", " +
                                                      A.name(y) + ")");
      }
  for (std::size_t op = 0; op < A.signature().size(); ++op) {
    bool ok = true;
    if (A.arity(op) == 1) {
      for (Elem x = 0; x < n; ++x)
        ok = ok && leq(eq.mu_index(x), eq.mu_index(A.unary(op, x)));
    } else if (A.arity(op) == 2) {
      for (Elem x = 0; x < n; ++x)
        for (Elem y = 0; y < n; ++y)
          ok = ok && leq(meet(eq.mu_index(x), eq.mu_index(y)),
                         eq.mu_index(A.binary(op, x, y)));
    } else {
      ok = eq.mu_index(A.constant(op)) == top;
    }
    if (!ok) {
      throw Error(ErrorKind::InternalInvariant,
                  "membership is not an L-valued subalgebra");
    }
  }
  result.equality.emplace(std::move(eq));
  return result;
}

LEquality require_lequality(const LRelation& relation) {
  auto result = validate_lequality(relation);
  if (!result.equality) {
    std::string msg = "not an L-valued equality:";
    for (const auto& v : result.report.violations) {
      msg += " " + std::string(to_string(v.kind));
      if (!v.operation.empty()) msg += "(" + v.operation + ")";
    }
    throw Error(ErrorKind::InvalidEquality, msg);
  }
  return std::move(*result.equality);
}

// --------------------------------------------------------------------- cuts

Membership membership(const LEquality& equality) {
  Membership m;
  const auto& L = equality.lattice();
  bool all_bottom = true;
  for (Elem x = 0; x < equality.size(); ++x) {
    m.values.push_back(equality.mu(x));
    all_bottom = all_bottom && equality.mu_index(x) == L.bottom_index();
  }
  if (all_bottom && L.size() > 1) {
    throw Error(ErrorKind::ConstantlyBottom, "membership is constantly bottom");
  }
  return m;
}

namespace {

void check_cut_level(const LEquality& equality, LatticeElt p) {
  if (p.lattice_id() != equality.lattice().id()) {
    throw Error(ErrorKind::LatticeMismatch,
                "cut level taken from a different lattice");
  }
}

ElementSet mu_cut_unchecked(const LEquality& equality, std::size_t p) {
  ElementSet out;
  for (Elem x = 0; x < equality.size(); ++x) {
    if (equality.lattice().leq_at(p, equality.mu_index(x))) out.push_back(x);
  }
  return out;
}

EquivRelation e_cut_unchecked(const LEquality& equality, std::size_t p,
                              const ElementSet& support) {
  const auto& L = equality.lattice();
  return EquivRelation::from_predicate(
      equality.size(), support,
      [&](Elem x, Elem y) { return L.leq_at(p, equality.index_at(x, y)); });
}

}  // namespace

ElementSet mu_cut(const LEquality& equality, LatticeElt p) {
  check_cut_level(equality, p);
  auto cut = mu_cut_unchecked(equality, p.index());
  if (!is_subuniverse(equality.algebra(), cut)) {
    throw Error(ErrorKind::InternalInvariant,
                "cut of μ at " + equality.lattice().name(p) +
                    " is not a subuniverse");
  }
  return cut;
}

EquivRelation e_cut(const LEquality& equality, LatticeElt p) {
  const auto support = mu_cut(equality, p);
  auto theta = e_cut_unchecked(equality, p.index(), support);
  if (!is_congruence(equality.algebra(), support, theta)) {
    throw Error(ErrorKind::InternalInvariant,
                "cut of E at " + equality.lattice().name(p) +
                    " is not a congruence");
  }
  return theta;
}

CutPair cut_pair(const LEquality& equality, LatticeElt p) {
  auto theta = e_cut(equality, p);
  auto support = theta.support();
  return CutPair{p, std::move(support), std::move(theta)};
}

QuotientAlgebra cut_quotient(const LEquality& equality, LatticeElt p) {
  const auto theta = e_cut(equality, p);
  try {
    return quotient(equality.algebra(), theta.support(), theta);
  } catch (const Error& e) {
    throw Error(ErrorKind::InternalInvariant,
                std::string("cut quotient undefined: ") + e.what());
  }
}

// --------------------------------------------------------------- identities

FuzzyIdentityResult check_fuzzy_identity(const LEquality& equality,
                                         const Term& u, const Term& v) {
  const auto& A = equality.algebra();
  const auto& L = equality.lattice();
  const CompiledTerm cu(A, u);
  const CompiledTerm cv(A, v);
  const std::size_t vars = std::max(u.max_variable(), v.max_variable());
  FuzzyIdentityResult result;
  for_each_assignment(A.size(), vars, [&](std::span<const Elem> a) {
    std::size_t bound = L.top_index();
    for (Elem x : a) bound = L.meet_at(bound, equality.mu_index(x));
    const std::size_t value = equality.index_at(cu.eval(a), cv.eval(a));
    if (L.leq_at(bound, value)) return true;
    result.holds = false;
    result.witness.assign(a.begin(), a.end());
    result.bound = L.element(bound);
    result.value = L.element(value);
    return false;
  });
  return result;
}

CutIdentityResult check_identity_via_cuts(const LEquality& equality,
                                          const Term& u, const Term& v) {
  // Resolve names up front so signature errors surface even when every cut
  // is empty.
  (void)CompiledTerm(equality.algebra(), u);
  (void)CompiledTerm(equality.algebra(), v);
  for (LatticeElt p : equality.lattice().elements()) {
    const auto q = cut_quotient(equality, p);
    if (!satisfies_identity(q.algebra(), u, v)) return {false, p};
  }
  return {};
}

}  // namespace lqg
