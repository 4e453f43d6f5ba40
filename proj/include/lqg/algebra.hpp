#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace lqg {

/// Carrier element, identified by its position in the carrier list.
using Elem = std::uint32_t;

/// Sorted, duplicate-free list of carrier elements.
using ElementSet = std::vector<Elem>;

struct Operation {
  std::string name;
  int arity = 0;  // 0, 1 or 2

  friend bool operator==(const Operation&, const Operation&) = default;
};

class Signature {
 public:
  Signature() = default;
  explicit Signature(std::vector<Operation> ops);

  std::size_t size() const noexcept { return ops_.size(); }
  const Operation& operator[](std::size_t i) const { return ops_[i]; }
  std::span<const Operation> operations() const noexcept { return ops_; }

  std::optional<std::size_t> find(std::string_view name) const;
  std::optional<std::size_t> first_of_arity(int arity) const;
  bool has_constants() const;

  friend bool operator==(const Signature&, const Signature&) = default;

 private:
  std::vector<Operation> ops_;
};

/// Finite carrier plus one table per operation: a single entry for a
/// constant, n entries for a unary operation, n*n row-major for a binary one.
class FiniteAlgebra {
 public:
  FiniteAlgebra(std::vector<std::string> carrier, Signature signature,
                std::vector<std::vector<Elem>> tables);

  std::size_t size() const noexcept { return carrier_.size(); }
  std::span<const std::string> carrier() const noexcept { return carrier_; }
  const std::string& name(Elem x) const { return carrier_.at(x); }
  std::optional<Elem> find(std::string_view name) const;
  Elem element(std::string_view name) const;

  const Signature& signature() const noexcept { return signature_; }
  std::size_t op_index(std::string_view name) const;
  int arity(std::size_t op) const { return signature_[op].arity; }
  std::span<const Elem> table(std::size_t op) const { return tables_[op]; }

  Elem constant(std::size_t op) const { return tables_[op][0]; }
  Elem unary(std::size_t op, Elem x) const { return tables_[op][x]; }
  Elem binary(std::size_t op, Elem x, Elem y) const {
    return tables_[op][x * size() + y];
  }
  Elem apply(std::size_t op, std::span<const Elem> args) const;

  /// Same carrier, only the listed operations (in the listed order).
  FiniteAlgebra reduct(std::span<const std::size_t> ops) const;
  /// Same carrier with one more operation appended.
  FiniteAlgebra with_operation(Operation op, std::vector<Elem> table) const;

  friend bool operator==(const FiniteAlgebra&, const FiniteAlgebra&) = default;

 private:
  std::vector<std::string> carrier_;
  Signature signature_;
  std::vector<std::vector<Elem>> tables_;
};

/// Term over operation names and variables x1..xn (stored 1-based).
class Term {
 public:
  static Term variable(std::size_t index);
  static Term apply(std::string op, std::vector<Term> args = {});

  bool is_variable() const noexcept { return variable_ != 0; }
  std::size_t variable_index() const noexcept { return variable_; }
  const std::string& op() const noexcept { return op_; }
  const std::vector<Term>& args() const noexcept { return args_; }

  /// Largest variable index occurring in the term (0 for ground terms).
  std::size_t max_variable() const;
  std::size_t depth() const;
  /// Prefix rendering, e.g. "(* x1 (\ x1 x2))".
  std::string to_string() const;

  friend bool operator==(const Term&, const Term&) = default;

 private:
  std::size_t variable_ = 0;
  std::string op_;
  std::vector<Term> args_;
};

/// Term resolved against one algebra into a postfix program.
class CompiledTerm {
 public:
  CompiledTerm(const FiniteAlgebra& algebra, const Term& term);

  Elem eval(std::span<const Elem> assignment) const;
  std::size_t variables() const noexcept { return variables_; }

 private:
  struct Step {
    std::uint32_t op;     // operation index, or kVariable
    std::uint32_t value;  // 0-based variable index when op == kVariable
  };
  static constexpr std::uint32_t kVariable = 0xffffffffu;

  const FiniteAlgebra* algebra_;
  std::vector<Step> program_;
  std::size_t variables_ = 0;
  std::size_t max_stack_ = 0;
};

Elem eval_term(const FiniteAlgebra& algebra, const Term& term,
               std::span<const Elem> assignment);

/// Calls `visit` on every tuple of `arity` carrier elements in lexicographic
/// order (first variable most significant). Stops early when `visit`
/// returns false; returns false in that case.
bool for_each_assignment(std::size_t carrier_size, std::size_t arity,
                         const std::function<bool(std::span<const Elem>)>& visit);

/// Partition of a subset of the carrier into disjoint blocks.
///
/// Blocks are kept sorted internally and ordered by their least member.
class EquivRelation {
 public:
  EquivRelation() = default;
  static EquivRelation from_blocks(std::size_t carrier_size,
                                   std::vector<ElementSet> blocks);
  static EquivRelation identity(std::size_t carrier_size,
                                const ElementSet& support);
  /// Partition of `support` by the equivalence classes of `related`.
  static EquivRelation from_predicate(
      std::size_t carrier_size, const ElementSet& support,
      const std::function<bool(Elem, Elem)>& related);

  std::size_t carrier_size() const noexcept { return block_of_.size(); }
  const ElementSet& support() const noexcept { return support_; }
  const std::vector<ElementSet>& blocks() const noexcept { return blocks_; }
  bool contains(Elem x) const { return block_of_.at(x) >= 0; }
  std::optional<std::size_t> block_of(Elem x) const;
  bool related(Elem x, Elem y) const;
  /// Pairs (x, y) with x related to y, as a row-major n*n relation.
  std::vector<bool> as_relation() const;

  friend bool operator==(const EquivRelation&, const EquivRelation&) = default;

 private:
  ElementSet support_;
  std::vector<ElementSet> blocks_;
  std::vector<std::int32_t> block_of_;
};

/// A quotient S/θ with its induced operation tables. The induced algebra's
/// carrier is the list of blocks, labelled "{a,b}".
class QuotientAlgebra {
 public:
  const std::vector<ElementSet>& blocks() const noexcept { return blocks_; }
  std::size_t size() const noexcept { return blocks_.size(); }
  std::optional<std::size_t> block_of(Elem x) const;
  const FiniteAlgebra& algebra() const noexcept { return algebra_; }

 private:
  friend QuotientAlgebra quotient(const FiniteAlgebra&, const ElementSet&,
                                  const EquivRelation&);
  QuotientAlgebra(std::vector<ElementSet> blocks,
                  std::vector<std::int32_t> block_of, FiniteAlgebra algebra)
      : blocks_(std::move(blocks)),
        block_of_(std::move(block_of)),
        algebra_(std::move(algebra)) {}

  std::vector<ElementSet> blocks_;
  std::vector<std::int32_t> block_of_;
  FiniteAlgebra algebra_;
};

enum class Side { Left, Right };

std::string_view to_string(Side side) noexcept;

bool is_subuniverse(const FiniteAlgebra& algebra, const ElementSet& subset);

/// Throws NotASubuniverse when `subset` is not closed.
bool is_congruence(const FiniteAlgebra& algebra, const ElementSet& subset,
                   const EquivRelation& theta);

/// Throws NotASubuniverse / NotACongruence when the quotient is undefined.
QuotientAlgebra quotient(const FiniteAlgebra& algebra, const ElementSet& subset,
                         const EquivRelation& theta);

/// Latin-square test on a binary operation; throws NotBinary otherwise.
bool is_quasigroup(const FiniteAlgebra& algebra, std::size_t op);
bool is_quasigroup(const FiniteAlgebra& algebra, std::string_view op);

/// Least assignment (lexicographic) on which u and v differ, if any.
std::optional<std::vector<Elem>> identity_counterexample(
    const FiniteAlgebra& algebra, const Term& u, const Term& v);
bool satisfies_identity(const FiniteAlgebra& algebra, const Term& u,
                        const Term& v);

/// All x with a·x = b (Side::Left) or all y with y·a = b (Side::Right).
ElementSet solve_in_table(const FiniteAlgebra& algebra, std::size_t op,
                          Side side, Elem a, Elem b);

bool is_associative(const FiniteAlgebra& algebra, std::size_t op);
/// `unit` is a two-sided identity for the binary operation `op`.
bool is_identity_element(const FiniteAlgebra& algebra, std::size_t op,
                         Elem unit);
/// Classical loop: quasigroup whose constant `unit_op` is an identity.
bool is_loop(const FiniteAlgebra& algebra, std::size_t mul, std::size_t unit_op);
/// Classical group in the signature (·, ⁻¹, e).
bool is_group(const FiniteAlgebra& algebra, std::size_t mul, std::size_t inv,
              std::size_t unit_op);

}  // namespace lqg
