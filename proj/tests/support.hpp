#pragma once

#include <algorithm>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lqg/bundle.hpp"
#include "lqg/generate.hpp"
#include "lqg/lalgebra.hpp"
#include "lqg/solver.hpp"

namespace lqg::test {

inline std::string data_path(const std::string& file) {
  return std::string(LQG_DATA_DIR) + "/" + file;
}

inline std::string fixture_path(const std::string& file) {
  return std::string(LQG_FIXTURE_DIR) + "/" + file;
}

// The eight-element lattice 0 < w, v; w < r; v < u; r < q, p; u < p; q, p < 1.
inline std::shared_ptr<const FiniteLattice> example_lattice() {
  const std::vector<FiniteLattice::NamePair> covers = {
      {"0", "w"}, {"0", "v"}, {"w", "r"}, {"v", "u"}, {"r", "q"},
      {"r", "p"}, {"u", "p"}, {"q", "1"}, {"p", "1"}};
  return std::make_shared<const FiniteLattice>(FiniteLattice::build(
      {"0", "w", "v", "r", "u", "q", "p", "1"}, covers, RelationKind::Cover));
}

inline Bundle example_bundle() { return load_bundle(data_path("example_paper.bundle")); }

inline LEquality example_equality() {
  return require_lequality(example_bundle().equality);
}

inline LGroupoid example_groupoid() { return LGroupoid(example_equality()); }

inline std::shared_ptr<const FiniteAlgebra> groupoid(
    std::vector<std::string> carrier, std::vector<Elem> table,
    const std::string& op = "*") {
  return std::make_shared<const FiniteAlgebra>(
      std::move(carrier), Signature({{op, 2}}),
      std::vector<std::vector<Elem>>{std::move(table)});
}

// Cyclic group of order n as (*, inv, e).
inline std::shared_ptr<const FiniteAlgebra> cyclic_group(std::size_t n) {
  std::vector<Elem> mul(n * n), inv(n);
  for (Elem x = 0; x < n; ++x) {
    inv[x] = static_cast<Elem>((n - x) % n);
    for (Elem y = 0; y < n; ++y) mul[x * n + y] = static_cast<Elem>((x + y) % n);
  }
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back(std::to_string(i));
  return std::make_shared<const FiniteAlgebra>(
      names, Signature({{"*", 2}, {"inv", 1}, {"e", 0}}),
      std::vector<std::vector<Elem>>{mul, inv, {0}});
}

inline std::vector<Elem> set_of(const FiniteAlgebra& A,
                                std::initializer_list<const char*> names) {
  std::vector<Elem> out;
  for (auto n : names) out.push_back(A.element(n));
  std::sort(out.begin(), out.end());
  return out;
}

// Kind of the lqg::Error thrown by `fn`, or nullopt if nothing was thrown.
template <typename Fn>
std::optional<ErrorKind> error_kind(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  return std::nullopt;
}

inline LatticeElt elt(const FiniteLattice& L, const char* name) {
  return L.element(name);
}

}  // namespace lqg::test
