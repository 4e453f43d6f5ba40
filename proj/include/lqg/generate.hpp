#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <random>
#include <vector>

#include "lqg/lalgebra.hpp"
#include "lqg/solver.hpp"

namespace lqg::gen {

using Rng = std::mt19937_64;

/// Every lattice with at most `max_size` elements, one per isomorphism class,
/// ordered by size.
std::vector<std::shared_ptr<const FiniteLattice>> all_lattices(
    std::size_t max_size);

/// Random lattice with at most `max_size` (>= 1) elements, built as an
/// intersection-closed family of subsets.
std::shared_ptr<const FiniteLattice> random_lattice(Rng& rng,
                                                    std::size_t max_size);

/// The chain 0 < 1 < ... with `size` elements.
std::shared_ptr<const FiniteLattice> chain_lattice(std::size_t size);

/// Carrier names a, b, c, ... (c<i> beyond 26).
std::vector<std::string> carrier_names(std::size_t n);

FiniteAlgebra random_algebra(Rng& rng, std::size_t n, const Signature& signature);

/// A valid L-valued equality on `algebra`: the pointwise meet of up to three
/// chain-valued equalities, each read off a nested family of subuniverses
/// and congruences. Returns nullopt when μ came out constantly bottom or
/// when the lattice is trivial and the carrier is not.
std::optional<LRelation> random_equality(
    Rng& rng, std::shared_ptr<const FiniteLattice> lattice,
    std::shared_ptr<const FiniteAlgebra> algebra);

/// Random term over `signature` using variables x1..x<variables>.
Term random_term(Rng& rng, const Signature& signature, std::size_t max_depth,
                 std::size_t variables);

/// Random L-groupoid with carrier in [1, max_carrier] over `lattice`. Mixes
/// unstructured tables with inflated quasigroups so that both L-quasigroups
/// and non-L-quasigroups occur.
LGroupoid random_lgroupoid(Rng& rng, std::shared_ptr<const FiniteLattice> lattice,
                           std::size_t max_carrier);

/// Random L-algebra with one binary, one unary operation and one constant.
LEquality random_lalgebra(Rng& rng, std::shared_ptr<const FiniteLattice> lattice,
                          std::size_t max_carrier);

/// All loops on {0..order-1} with identity 0 (normalized Latin squares),
/// as row-major tables.
std::vector<std::vector<Elem>> all_loops(std::size_t order);

/// Crisp loop with the given table: operations "*" and constant "e" = 0.
LEquality crisp_loop(std::shared_ptr<const FiniteLattice> lattice,
                     const std::vector<Elem>& table, std::size_t order);

/// Random fuzzy L-loop with at most `max_carrier` elements, obtained by
/// inflating a loop of order <= `max_loop_order` over a chain of `lattice`.
LEquality random_fuzzy_loop(Rng& rng, std::shared_ptr<const FiniteLattice> lattice,
                            std::size_t max_carrier, std::size_t max_loop_order);

struct EnumerationStats {
  std::size_t equalities = 0;  // canonical L-valued equalities (as relations)
  std::size_t candidates = 0;  // (table, equality) pairs after pruning
  std::size_t lgroupoids = 0;  // compatible pairs handed to the visitor
};

/// Every L-groupoid on an n-element carrier over `lattice`, one per orbit
/// under relabelling of the carrier.
EnumerationStats for_each_lgroupoid(
    std::shared_ptr<const FiniteLattice> lattice, std::size_t n,
    const std::function<void(const LGroupoid&)>& visit);

/// Every L-algebra (·, e) on an n-element carrier over `lattice`, one per
/// orbit under relabelling.
EnumerationStats for_each_lgroupoid_with_unit(
    std::shared_ptr<const FiniteLattice> lattice, std::size_t n,
    const std::function<void(const LEquality&)>& visit);

}  // namespace lqg::gen
