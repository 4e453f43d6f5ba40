#include "lqg/lattice.hpp"

#include <algorithm>
#include <atomic>
#include <unordered_map>

#include "lqg/error.hpp"

namespace lqg {

namespace {

std::uint32_t next_lattice_id() {
  static std::atomic<std::uint32_t> counter{1};
  return counter.fetch_add(1, std::memory_order_relaxed);
}

std::unordered_map<std::string, std::size_t> index_names(
    const std::vector<std::string>& names) {
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (!index.emplace(names[i], i).second) {
      throw Error(ErrorKind::DuplicateName,
                  "duplicate lattice element '" + names[i] + "'");
    }
  }
  return index;
}

// Warshall closure on a row-major boolean matrix.
void close_transitively(std::vector<bool>& rel, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!rel[i * n + k]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (rel[k * n + j]) rel[i * n + j] = true;
      }
    }
  }
}

}  // namespace

FiniteLattice FiniteLattice::build(std::vector<std::string> names,
                                   std::span<const NamePair> relation,
                                   RelationKind kind) {
  const auto index = index_names(names);
  const std::size_t n = names.size();
  std::vector<bool> leq(n * n, false);
  for (std::size_t i = 0; i < n; ++i) leq[i * n + i] = true;

  for (const auto& [lo, hi] : relation) {
    auto a = index.find(lo);
    auto b = index.find(hi);
    if (a == index.end() || b == index.end()) {
      const auto& missing = a == index.end() ? lo : hi;
      throw Error(ErrorKind::UnknownElement,
                  "relation refers to undeclared element '" + missing + "'");
    }
    leq[a->second * n + b->second] = true;
  }

  if (kind == RelationKind::Cover) {
    close_transitively(leq, n);
  } else {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
          if (leq[i * n + j] && leq[j * n + k] && !leq[i * n + k]) {
            throw Error(ErrorKind::NotAPoset,
                        "order relation is not transitive: " + names[i] +
                            " <= " + names[j] + " <= " + names[k]);
          }
  }
  return from_order(std::move(names), leq);
}

FiniteLattice FiniteLattice::from_order(std::vector<std::string> names,
                                        const std::vector<bool>& leq) {
  const std::size_t n = names.size();
  if (n == 0) {
    throw Error(ErrorKind::NoTopOrBottom, "empty lattice has no top or bottom");
  }
  if (leq.size() != n * n) {
    throw Error(ErrorKind::DimensionMismatch, "order table has wrong size");
  }
  index_names(names);

  for (std::size_t i = 0; i < n; ++i) {
    if (!leq[i * n + i]) {
      throw Error(ErrorKind::NotAPoset, "order is not reflexive at " + names[i]);
    }
    for (std::size_t j = i + 1; j < n; ++j) {
      if (leq[i * n + j] && leq[j * n + i]) {
        throw Error(ErrorKind::NotAPoset, "cycle between " + names[i] +
                                              " and " + names[j]);
      }
    }
  }

  FiniteLattice lat;
  lat.id_ = next_lattice_id();
  lat.names_ = std::move(names);
  lat.leq_.resize(n * n);
  for (std::size_t k = 0; k < n * n; ++k) lat.leq_[k] = leq[k] ? 1 : 0;
  lat.meet_.resize(n * n);
  lat.join_.resize(n * n);

  // The glb is the unique common lower bound that lies above all others.
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = x; y < n; ++y) {
      std::optional<std::size_t> glb;
      std::optional<std::size_t> lub;
      for (std::size_t z = 0; z < n; ++z) {
        if (leq[z * n + x] && leq[z * n + y]) {
          bool greatest = true;
          for (std::size_t w = 0; w < n && greatest; ++w) {
            if (leq[w * n + x] && leq[w * n + y] && !leq[w * n + z]) {
              greatest = false;
            }
          }
          if (greatest) glb = z;
        }
        if (leq[x * n + z] && leq[y * n + z]) {
          bool least = true;
          for (std::size_t w = 0; w < n && least; ++w) {
            if (leq[x * n + w] && leq[y * n + w] && !leq[z * n + w]) {
              least = false;
            }
          }
          if (least) lub = z;
        }
      }
      if (!glb || !lub) {
        throw Error(ErrorKind::NotALattice,
                    "pair (" + lat.names_[x] + ", " + lat.names_[y] +
                        ") has no " + (glb ? "least upper" : "greatest lower") +
                        " bound");
      }
      lat.meet_[x * n + y] = lat.meet_[y * n + x] =
          static_cast<std::uint32_t>(*glb);
      lat.join_[x * n + y] = lat.join_[y * n + x] =
          static_cast<std::uint32_t>(*lub);
    }
  }

  // With every pairwise bound present, folding meets/joins over all elements
  // yields the bottom/top.
  std::uint32_t bottom = 0;
  std::uint32_t top = 0;
  for (std::size_t x = 1; x < n; ++x) {
    bottom = lat.meet_[bottom * n + x];
    top = lat.join_[top * n + x];
  }
  lat.bottom_ = bottom;
  lat.top_ = top;
  return lat;
}

void FiniteLattice::check(LatticeElt x) const {
  if (x.lattice_id() != id_ || x.index() >= size()) {
    throw Error(ErrorKind::LatticeMismatch,
                "lattice element used with a lattice that did not produce it");
  }
}

LatticeElt FiniteLattice::element(std::size_t index) const {
  if (index >= size()) {
    throw Error(ErrorKind::UnknownElement,
                "lattice index " + std::to_string(index) + " out of range");
  }
  return LatticeElt(id_, static_cast<std::uint32_t>(index));
}

LatticeElt FiniteLattice::element(std::string_view name) const {
  if (auto x = find(name)) return *x;
  throw Error(ErrorKind::UnknownElement,
              "unknown lattice element '" + std::string(name) + "'");
}

std::optional<LatticeElt> FiniteLattice::find(std::string_view name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) return std::nullopt;
  return LatticeElt(id_, static_cast<std::uint32_t>(it - names_.begin()));
}

const std::string& FiniteLattice::name(LatticeElt x) const {
  check(x);
  return names_[x.index()];
}

std::vector<LatticeElt> FiniteLattice::elements() const {
  std::vector<LatticeElt> out;
  out.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) {
    out.push_back(LatticeElt(id_, static_cast<std::uint32_t>(i)));
  }
  return out;
}

bool FiniteLattice::leq(LatticeElt x, LatticeElt y) const {
  check(x);
  check(y);
  return leq_at(x.index(), y.index());
}

LatticeElt FiniteLattice::meet(LatticeElt x, LatticeElt y) const {
  check(x);
  check(y);
  return LatticeElt(id_, meet_[x.index() * size() + y.index()]);
}

LatticeElt FiniteLattice::join(LatticeElt x, LatticeElt y) const {
  check(x);
  check(y);
  return LatticeElt(id_, join_[x.index() * size() + y.index()]);
}

std::vector<LatticeElt> FiniteLattice::up_set(LatticeElt p) const {
  check(p);
  std::vector<LatticeElt> out;
  for (std::size_t x = 0; x < size(); ++x) {
    if (leq_at(p.index(), x)) {
      out.push_back(LatticeElt(id_, static_cast<std::uint32_t>(x)));
    }
  }
  return out;
}

std::vector<std::pair<std::size_t, std::size_t>> FiniteLattice::covers() const {
  const std::size_t n = size();
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (x == y || !leq_at(x, y)) continue;
      bool cover = true;
      for (std::size_t z = 0; z < n && cover; ++z) {
        if (z != x && z != y && leq_at(x, z) && leq_at(z, y)) cover = false;
      }
      if (cover) out.emplace_back(x, y);
    }
  }
  return out;
}

}  // namespace lqg
