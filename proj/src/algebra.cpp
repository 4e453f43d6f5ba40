#include "lqg/algebra.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <unordered_set>

#include "lqg/error.hpp"

namespace lqg {

// ---------------------------------------------------------------- Signature

Signature::Signature(std::vector<Operation> ops) : ops_(std::move(ops)) {
  std::unordered_set<std::string> seen;
  for (const auto& op : ops_) {
    if (op.name.empty()) {
      throw Error(ErrorKind::SyntaxError, "operation with an empty name");
    }
    if (op.arity < 0 || op.arity > 2) {
      throw Error(ErrorKind::ArityMismatch,
                  "operation '" + op.name + "' has unsupported arity " +
                      std::to_string(op.arity));
    }
    if (!seen.insert(op.name).second) {
      throw Error(ErrorKind::DuplicateName,
                  "duplicate operation '" + op.name + "'");
    }
  }
}

std::optional<std::size_t> Signature::find(std::string_view name) const {
  for (std::size_t i = 0; i < ops_.size(); ++i) {
    if (ops_[i].name == name) return i;
  }
  return std::nullopt;
}

std::optional<std::size_t> Signature::first_of_arity(int arity) const {
  for (std::size_t i = 0; i < ops_.size(); ++i) {
    if (ops_[i].arity == arity) return i;
  }
  return std::nullopt;
}

bool Signature::has_constants() const {
  return first_of_arity(0).has_value();
}

// ------------------------------------------------------------ FiniteAlgebra

FiniteAlgebra::FiniteAlgebra(std::vector<std::string> carrier,
                             Signature signature,
                             std::vector<std::vector<Elem>> tables)
    : carrier_(std::move(carrier)),
      signature_(std::move(signature)),
      tables_(std::move(tables)) {
  std::unordered_set<std::string> seen;
  for (const auto& name : carrier_) {
    if (!seen.insert(name).second) {
      throw Error(ErrorKind::DuplicateName,
                  "duplicate carrier element '" + name + "'");
    }
  }
  if (tables_.size() != signature_.size()) {
    throw Error(ErrorKind::DimensionMismatch,
                "expected one table per operation");
  }
  const std::size_t n = size();
  for (std::size_t op = 0; op < signature_.size(); ++op) {
    const int arity = signature_[op].arity;
    const std::size_t expected = arity == 0 ? 1 : arity == 1 ? n : n * n;
    if (arity == 0 && n == 0) {
      throw Error(ErrorKind::InvalidTable,
                  "constant '" + signature_[op].name + "' on an empty carrier");
    }
    if (tables_[op].size() != expected) {
      throw Error(ErrorKind::DimensionMismatch,
                  "table of '" + signature_[op].name + "' has " +
                      std::to_string(tables_[op].size()) + " entries, expected " +
                      std::to_string(expected));
    }
    for (Elem v : tables_[op]) {
      if (v >= n) {
        throw Error(ErrorKind::InvalidTable,
                    "table of '" + signature_[op].name +
                        "' has an entry outside the carrier");
      }
    }
  }
}

std::optional<Elem> FiniteAlgebra::find(std::string_view name) const {
  auto it = std::find(carrier_.begin(), carrier_.end(), name);
  if (it == carrier_.end()) return std::nullopt;
  return static_cast<Elem>(it - carrier_.begin());
}

Elem FiniteAlgebra::element(std::string_view name) const {
  if (auto x = find(name)) return *x;
  throw Error(ErrorKind::UnknownName,
              "unknown carrier element '" + std::string(name) + "'");
}

std::size_t FiniteAlgebra::op_index(std::string_view name) const {
  if (auto op = signature_.find(name)) return *op;
  throw Error(ErrorKind::UnknownOperation,
              "unknown operation '" + std::string(name) + "'");
}

Elem FiniteAlgebra::apply(std::size_t op, std::span<const Elem> args) const {
  const int a = arity(op);
  if (static_cast<std::size_t>(a) != args.size()) {
    throw Error(ErrorKind::ArityMismatch,
                "operation '" + signature_[op].name + "' expects " +
                    std::to_string(a) + " arguments");
  }
  switch (a) {
    case 0: return constant(op);
    case 1: return unary(op, args[0]);
    default: return binary(op, args[0], args[1]);
  }
}

FiniteAlgebra FiniteAlgebra::reduct(std::span<const std::size_t> ops) const {
  std::vector<Operation> sig;
  std::vector<std::vector<Elem>> tables;
  for (std::size_t op : ops) {
    sig.push_back(signature_[op]);
    tables.push_back(tables_[op]);
  }
  return FiniteAlgebra(carrier_, Signature(std::move(sig)), std::move(tables));
}

FiniteAlgebra FiniteAlgebra::with_operation(Operation op,
                                            std::vector<Elem> table) const {
  std::vector<Operation> sig(signature_.operations().begin(),
                             signature_.operations().end());
  sig.push_back(std::move(op));
  auto tables = tables_;
  tables.push_back(std::move(table));
  return FiniteAlgebra(carrier_, Signature(std::move(sig)), std::move(tables));
}

// --------------------------------------------------------------------- Term

Term Term::variable(std::size_t index) {
  if (index == 0) {
    throw Error(ErrorKind::ArityMismatch, "variables are numbered from x1");
  }
  Term t;
  t.variable_ = index;
  return t;
}

Term Term::apply(std::string op, std::vector<Term> args) {
  Term t;
  t.op_ = std::move(op);
  t.args_ = std::move(args);
  return t;
}

std::size_t Term::max_variable() const {
  if (is_variable()) return variable_;
  std::size_t m = 0;
  for (const auto& a : args_) m = std::max(m, a.max_variable());
  return m;
}

std::size_t Term::depth() const {
  std::size_t d = 0;
  for (const auto& a : args_) d = std::max(d, a.depth() + 1);
  return d;
}

std::string Term::to_string() const {
  if (is_variable()) return "x" + std::to_string(variable_);
  if (args_.empty()) return op_;
  std::string out = "(" + op_;
  for (const auto& a : args_) out += " " + a.to_string();
  return out + ")";
}

CompiledTerm::CompiledTerm(const FiniteAlgebra& algebra, const Term& term)
    : algebra_(&algebra) {
  std::size_t depth = 0;
  std::function<void(const Term&)> emit = [&](const Term& t) {
    if (t.is_variable()) {
      program_.push_back({kVariable, static_cast<std::uint32_t>(t.variable_index() - 1)});
      variables_ = std::max(variables_, t.variable_index());
      max_stack_ = std::max(max_stack_, ++depth);
      return;
    }
    const std::size_t op = algebra.op_index(t.op());
    if (static_cast<std::size_t>(algebra.arity(op)) != t.args().size()) {
      throw Error(ErrorKind::ArityMismatch,
                  "operation '" + t.op() + "' expects " +
                      std::to_string(algebra.arity(op)) + " arguments, got " +
                      std::to_string(t.args().size()));
    }
    for (const auto& a : t.args()) emit(a);
    program_.push_back({static_cast<std::uint32_t>(op), 0});
    depth -= t.args().size();
    max_stack_ = std::max(max_stack_, ++depth);
  };
  emit(term);
}

Elem CompiledTerm::eval(std::span<const Elem> assignment) const {
  if (assignment.size() < variables_) {
    throw Error(ErrorKind::ArityMismatch,
                "assignment covers " + std::to_string(assignment.size()) +
                    " variables, term uses " + std::to_string(variables_));
  }
  std::array<Elem, 64> small{};
  std::vector<Elem> large;
  Elem* stack = small.data();
  if (max_stack_ > small.size()) {
    large.resize(max_stack_);
    stack = large.data();
  }
  std::size_t top = 0;
  for (const Step& s : program_) {
    if (s.op == kVariable) {
      stack[top++] = assignment[s.value];
      continue;
    }
    switch (algebra_->arity(s.op)) {
      case 0:
        stack[top++] = algebra_->constant(s.op);
        break;
      case 1:
        stack[top - 1] = algebra_->unary(s.op, stack[top - 1]);
        break;
      default:
        stack[top - 2] = algebra_->binary(s.op, stack[top - 2], stack[top - 1]);
        --top;
        break;
    }
  }
  return stack[0];
}

Elem eval_term(const FiniteAlgebra& algebra, const Term& term,
               std::span<const Elem> assignment) {
  return CompiledTerm(algebra, term).eval(assignment);
}

bool for_each_assignment(
    std::size_t carrier_size, std::size_t arity,
    const std::function<bool(std::span<const Elem>)>& visit) {
  std::vector<Elem> tuple(arity, 0);
  if (arity > 0 && carrier_size == 0) return true;
  while (true) {
    if (!visit(tuple)) return false;
    std::size_t i = arity;
    while (i > 0) {
      --i;
      if (++tuple[i] < carrier_size) break;
      tuple[i] = 0;
      if (i == 0) return true;
    }
    if (arity == 0) return true;
  }
}

// ------------------------------------------------------------ EquivRelation

EquivRelation EquivRelation::from_blocks(std::size_t carrier_size,
                                         std::vector<ElementSet> blocks) {
  EquivRelation r;
  r.block_of_.assign(carrier_size, -1);
  for (auto& b : blocks) {
    if (b.empty()) {
      throw Error(ErrorKind::InvalidTable, "partition has an empty block");
    }
    std::sort(b.begin(), b.end());
  }
  std::sort(blocks.begin(), blocks.end(),
            [](const ElementSet& x, const ElementSet& y) { return x[0] < y[0]; });
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    for (Elem x : blocks[i]) {
      if (x >= carrier_size) {
        throw Error(ErrorKind::InvalidTable, "partition element outside carrier");
      }
      if (r.block_of_[x] != -1) {
        throw Error(ErrorKind::InvalidTable, "partition blocks overlap");
      }
      r.block_of_[x] = static_cast<std::int32_t>(i);
      r.support_.push_back(x);
    }
  }
  std::sort(r.support_.begin(), r.support_.end());
  r.blocks_ = std::move(blocks);
  return r;
}

EquivRelation EquivRelation::identity(std::size_t carrier_size,
                                      const ElementSet& support) {
  std::vector<ElementSet> blocks;
  for (Elem x : support) blocks.push_back({x});
  return from_blocks(carrier_size, std::move(blocks));
}

EquivRelation EquivRelation::from_predicate(
    std::size_t carrier_size, const ElementSet& support,
    const std::function<bool(Elem, Elem)>& related) {
  std::vector<ElementSet> blocks;
  for (Elem x : support) {
    bool placed = false;
    for (auto& b : blocks) {
      if (related(b[0], x)) {
        b.push_back(x);
        placed = true;
        break;
      }
    }
    if (!placed) blocks.push_back({x});
  }
  return from_blocks(carrier_size, std::move(blocks));
}

std::optional<std::size_t> EquivRelation::block_of(Elem x) const {
  if (x >= block_of_.size() || block_of_[x] < 0) return std::nullopt;
  return static_cast<std::size_t>(block_of_[x]);
}

bool EquivRelation::related(Elem x, Elem y) const {
  if (x >= block_of_.size() || y >= block_of_.size()) return false;
  return block_of_[x] >= 0 && block_of_[x] == block_of_[y];
}

std::vector<bool> EquivRelation::as_relation() const {
  const std::size_t n = carrier_size();
  std::vector<bool> rel(n * n, false);
  for (const auto& b : blocks_)
    for (Elem x : b)
      for (Elem y : b) rel[x * n + y] = true;
  return rel;
}

// --------------------------------------------------------- classical checks

std::string_view to_string(Side side) noexcept {
  return side == Side::Left ? "left" : "right";
}

bool is_subuniverse(const FiniteAlgebra& algebra, const ElementSet& subset) {
  std::vector<bool> in(algebra.size(), false);
  for (Elem x : subset) in.at(x) = true;
  for (std::size_t op = 0; op < algebra.signature().size(); ++op) {
    switch (algebra.arity(op)) {
      case 0:
        if (!in[algebra.constant(op)]) return false;
        break;
      case 1:
        for (Elem x : subset)
          if (!in[algebra.unary(op, x)]) return false;
        break;
      default:
        for (Elem x : subset)
          for (Elem y : subset)
            if (!in[algebra.binary(op, x, y)]) return false;
        break;
    }
  }
  return true;
}

bool is_congruence(const FiniteAlgebra& algebra, const ElementSet& subset,
                   const EquivRelation& theta) {
  if (!is_subuniverse(algebra, subset)) {
    throw Error(ErrorKind::NotASubuniverse,
                "congruence requested on a set that is not a subuniverse");
  }
  if (theta.support() != subset) {
    throw Error(ErrorKind::InvalidTable, "partition does not cover the subset");
  }
  for (std::size_t op = 0; op < algebra.signature().size(); ++op) {
    const int arity = algebra.arity(op);
    if (arity == 1) {
      for (const auto& b : theta.blocks())
        for (Elem x : b)
          for (Elem y : b)
            if (!theta.related(algebra.unary(op, x), algebra.unary(op, y)))
              return false;
    } else if (arity == 2) {
      for (const auto& b1 : theta.blocks())
        for (Elem x1 : b1)
          for (Elem y1 : b1)
            for (const auto& b2 : theta.blocks())
              for (Elem x2 : b2)
                for (Elem y2 : b2)
                  if (!theta.related(algebra.binary(op, x1, x2),
                                     algebra.binary(op, y1, y2)))
                    return false;
    }
  }
  return true;
}

QuotientAlgebra quotient(const FiniteAlgebra& algebra, const ElementSet& subset,
                         const EquivRelation& theta) {
  if (!is_congruence(algebra, subset, theta)) {
    throw Error(ErrorKind::NotACongruence,
                "partition is not a congruence on the subuniverse");
  }
  const auto& blocks = theta.blocks();
  const std::size_t m = blocks.size();
  std::vector<std::int32_t> block_of(algebra.size(), -1);
  for (std::size_t i = 0; i < m; ++i)
    for (Elem x : blocks[i]) block_of[x] = static_cast<std::int32_t>(i);

  std::vector<std::string> labels;
  labels.reserve(m);
  for (const auto& b : blocks) {
    std::string label = "{";
    for (std::size_t k = 0; k < b.size(); ++k) {
      if (k) label += ",";
      label += algebra.name(b[k]);
    }
    labels.push_back(label + "}");
  }

  // Induced tables from representatives; every representative choice is
  // re-checked to agree.
  std::vector<std::vector<Elem>> tables;
  for (std::size_t op = 0; op < algebra.signature().size(); ++op) {
    const int arity = algebra.arity(op);
    std::vector<Elem> table;
    if (arity == 0) {
      table.push_back(static_cast<Elem>(block_of[algebra.constant(op)]));
    } else if (arity == 1) {
      for (std::size_t i = 0; i < m; ++i) {
        const auto v = block_of[algebra.unary(op, blocks[i][0])];
        for (Elem x : blocks[i])
          if (block_of[algebra.unary(op, x)] != v)
            throw Error(ErrorKind::NotACongruence, "induced table ill-defined");
        table.push_back(static_cast<Elem>(v));
      }
    } else {
      for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
          const auto v = block_of[algebra.binary(op, blocks[i][0], blocks[j][0])];
          for (Elem x : blocks[i])
            for (Elem y : blocks[j])
              if (block_of[algebra.binary(op, x, y)] != v)
                throw Error(ErrorKind::NotACongruence,
                            "induced table ill-defined");
          table.push_back(static_cast<Elem>(v));
        }
      }
    }
    tables.push_back(std::move(table));
  }
  FiniteAlgebra induced(std::move(labels), algebra.signature(), std::move(tables));
  return QuotientAlgebra(blocks, std::move(block_of), std::move(induced));
}

std::optional<std::size_t> QuotientAlgebra::block_of(Elem x) const {
  if (x >= block_of_.size() || block_of_[x] < 0) return std::nullopt;
  return static_cast<std::size_t>(block_of_[x]);
}

bool is_quasigroup(const FiniteAlgebra& algebra, std::size_t op) {
  if (algebra.arity(op) != 2) {
    throw Error(ErrorKind::NotBinary, "operation '" +
                                          algebra.signature()[op].name +
                                          "' is not binary");
  }
  const std::size_t n = algebra.size();
  std::vector<std::uint8_t> row_seen(n);
  std::vector<std::uint8_t> col_seen(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::fill(row_seen.begin(), row_seen.end(), 0);
    std::fill(col_seen.begin(), col_seen.end(), 0);
    for (std::size_t j = 0; j < n; ++j) {
      const Elem r = algebra.binary(op, static_cast<Elem>(i), static_cast<Elem>(j));
      const Elem c = algebra.binary(op, static_cast<Elem>(j), static_cast<Elem>(i));
      if (row_seen[r]++ || col_seen[c]++) return false;
    }
  }
  return true;
}

bool is_quasigroup(const FiniteAlgebra& algebra, std::string_view op) {
  return is_quasigroup(algebra, algebra.op_index(op));
}

std::optional<std::vector<Elem>> identity_counterexample(
    const FiniteAlgebra& algebra, const Term& u, const Term& v) {
  const CompiledTerm cu(algebra, u);
  const CompiledTerm cv(algebra, v);
  const std::size_t vars = std::max(u.max_variable(), v.max_variable());
  std::optional<std::vector<Elem>> witness;
  for_each_assignment(algebra.size(), vars, [&](std::span<const Elem> a) {
    if (cu.eval(a) != cv.eval(a)) {
      witness.emplace(a.begin(), a.end());
      return false;
    }
    return true;
  });
  return witness;
}

bool satisfies_identity(const FiniteAlgebra& algebra, const Term& u,
                        const Term& v) {
  return !identity_counterexample(algebra, u, v).has_value();
}

ElementSet solve_in_table(const FiniteAlgebra& algebra, std::size_t op,
                          Side side, Elem a, Elem b) {
  if (algebra.arity(op) != 2) {
    throw Error(ErrorKind::NotBinary, "operation '" +
                                          algebra.signature()[op].name +
                                          "' is not binary");
  }
  ElementSet out;
  for (Elem x = 0; x < algebra.size(); ++x) {
    const Elem r = side == Side::Left ? algebra.binary(op, a, x)
                                      : algebra.binary(op, x, a);
    if (r == b) out.push_back(x);
  }
  return out;
}

bool is_associative(const FiniteAlgebra& algebra, std::size_t op) {
  const auto n = static_cast<Elem>(algebra.size());
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y)
      for (Elem z = 0; z < n; ++z)
        if (algebra.binary(op, algebra.binary(op, x, y), z) !=
            algebra.binary(op, x, algebra.binary(op, y, z)))
          return false;
  return true;
}

bool is_identity_element(const FiniteAlgebra& algebra, std::size_t op,
                         Elem unit) {
  for (Elem x = 0; x < algebra.size(); ++x) {
    if (algebra.binary(op, unit, x) != x || algebra.binary(op, x, unit) != x)
      return false;
  }
  return true;
}

bool is_loop(const FiniteAlgebra& algebra, std::size_t mul,
             std::size_t unit_op) {
  return is_quasigroup(algebra, mul) &&
         is_identity_element(algebra, mul, algebra.constant(unit_op));
}

bool is_group(const FiniteAlgebra& algebra, std::size_t mul, std::size_t inv,
              std::size_t unit_op) {
  const Elem e = algebra.constant(unit_op);
  if (!is_associative(algebra, mul) || !is_identity_element(algebra, mul, e))
    return false;
  for (Elem x = 0; x < algebra.size(); ++x) {
    const Elem y = algebra.unary(inv, x);
    if (algebra.binary(mul, x, y) != e || algebra.binary(mul, y, x) != e)
      return false;
  }
  return true;
}

}  // namespace lqg
