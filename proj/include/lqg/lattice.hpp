#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace lqg {

class FiniteLattice;

/// Handle to an element of one particular FiniteLattice.
///
/// The handle remembers which lattice produced it; passing it to a different
/// lattice raises ErrorKind::LatticeMismatch.
class LatticeElt {
 public:
  LatticeElt() = default;

  std::size_t index() const noexcept { return index_; }
  std::uint32_t lattice_id() const noexcept { return lattice_id_; }

  friend bool operator==(LatticeElt, LatticeElt) = default;

 private:
  friend class FiniteLattice;
  LatticeElt(std::uint32_t lattice_id, std::uint32_t index)
      : lattice_id_(lattice_id), index_(index) {}

  std::uint32_t lattice_id_ = 0;
  std::uint32_t index_ = 0;
};

enum class RelationKind { Order, Cover };

/// A finite (hence complete) lattice stored as order, meet and join tables.
///
/// Tables are computed once at construction by exhaustive bound search, so
/// every query afterwards is a lookup. Instances are immutable.
class FiniteLattice {
 public:
  using NamePair = std::pair<std::string, std::string>;

  /// Builds a lattice from named elements and either the full order relation
  /// or its cover (Hasse) relation. Pairs read "first <= second".
  static FiniteLattice build(std::vector<std::string> names,
                             std::span<const NamePair> relation,
                             RelationKind kind);

  /// Index-level variant of build(); `leq` is row-major, size n*n, and must
  /// already be a partial order.
  static FiniteLattice from_order(std::vector<std::string> names,
                                  const std::vector<bool>& leq);

  std::size_t size() const noexcept { return names_.size(); }
  std::uint32_t id() const noexcept { return id_; }

  LatticeElt element(std::size_t index) const;
  LatticeElt element(std::string_view name) const;
  std::optional<LatticeElt> find(std::string_view name) const;
  const std::string& name(LatticeElt x) const;
  std::span<const std::string> names() const noexcept { return names_; }
  std::vector<LatticeElt> elements() const;

  LatticeElt top() const { return LatticeElt(id_, top_); }
  LatticeElt bottom() const { return LatticeElt(id_, bottom_); }

  bool leq(LatticeElt x, LatticeElt y) const;
  LatticeElt meet(LatticeElt x, LatticeElt y) const;
  LatticeElt join(LatticeElt x, LatticeElt y) const;

  /// Principal filter { x | p <= x }, in element order.
  std::vector<LatticeElt> up_set(LatticeElt p) const;

  /// Cover pairs (lower, upper) sorted by index.
  std::vector<std::pair<std::size_t, std::size_t>> covers() const;

  // Unchecked index-level access for table-driven loops.
  bool leq_at(std::size_t x, std::size_t y) const noexcept {
    return leq_[x * size() + y] != 0;
  }
  std::size_t meet_at(std::size_t x, std::size_t y) const noexcept {
    return meet_[x * size() + y];
  }
  std::size_t join_at(std::size_t x, std::size_t y) const noexcept {
    return join_[x * size() + y];
  }
  std::size_t top_index() const noexcept { return top_; }
  std::size_t bottom_index() const noexcept { return bottom_; }

 private:
  FiniteLattice() = default;
  void check(LatticeElt x) const;

  std::uint32_t id_ = 0;
  std::vector<std::string> names_;
  std::vector<std::uint8_t> leq_;
  std::vector<std::uint32_t> meet_;
  std::vector<std::uint32_t> join_;
  std::uint32_t top_ = 0;
  std::uint32_t bottom_ = 0;
};

}  // namespace lqg
