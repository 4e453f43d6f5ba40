#include "lqg/generate.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <set>

#include "lqg/error.hpp"

namespace lqg::gen {

namespace {

std::size_t uniform(Rng& rng, std::size_t bound) {
  return std::uniform_int_distribution<std::size_t>(0, bound - 1)(rng);
}

bool coin(Rng& rng, double p = 0.5) {
  return std::bernoulli_distribution(p)(rng);
}

std::vector<std::string> lattice_names(std::size_t n) {
  if (n == 1) return {"1"};
  std::vector<std::string> names{"0"};
  for (std::size_t i = 1; i + 1 < n; ++i) {
    names.push_back(i <= 26 ? std::string(1, static_cast<char>('a' + i - 1))
                            : "m" + std::to_string(i));
  }
  names.push_back("1");
  return names;
}

std::vector<std::vector<std::size_t>> permutations(std::size_t n) {
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<std::size_t>> out;
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

// Closure of `seed` under every operation.
std::vector<bool> generate_subuniverse(const FiniteAlgebra& A,
                                       std::vector<bool> in) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t op = 0; op < A.signature().size(); ++op) {
      auto add = [&](Elem v) {
        if (!in[v]) in[v] = changed = true;
      };
      switch (A.arity(op)) {
        case 0: add(A.constant(op)); break;
        case 1:
          for (Elem x = 0; x < A.size(); ++x)
            if (in[x]) add(A.unary(op, x));
          break;
        default:
          for (Elem x = 0; x < A.size(); ++x)
            for (Elem y = 0; y < A.size(); ++y)
              if (in[x] && in[y]) add(A.binary(op, x, y));
          break;
      }
    }
  }
  return in;
}

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  bool merge(std::size_t x, std::size_t y) {
    x = find(x);
    y = find(y);
    if (x == y) return false;
    parent_[std::max(x, y)] = std::min(x, y);
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

// Congruence on the subuniverse `in` generated by the classes in `uf`.
void close_congruence(const FiniteAlgebra& A, const std::vector<bool>& in,
                      UnionFind& uf) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t op = 0; op < A.signature().size(); ++op) {
      const int arity = A.arity(op);
      if (arity == 0) continue;
      for (Elem x = 0; x < A.size(); ++x) {
        if (!in[x]) continue;
        for (Elem x2 = 0; x2 < A.size(); ++x2) {
          if (!in[x2] || x == x2 || uf.find(x) != uf.find(x2)) continue;
          if (arity == 1) {
            changed |= uf.merge(A.unary(op, x), A.unary(op, x2));
            continue;
          }
          for (Elem y = 0; y < A.size(); ++y) {
            if (!in[y]) continue;
            changed |= uf.merge(A.binary(op, x, y), A.binary(op, x2, y));
            changed |= uf.merge(A.binary(op, y, x), A.binary(op, y, x2));
          }
        }
      }
    }
  }
}

// Descending chain top = c0 > c1 > ... drawn by random steps downwards.
std::vector<std::size_t> random_chain(Rng& rng, const FiniteLattice& L) {
  std::vector<std::size_t> chain{L.top_index()};
  while (chain.back() != L.bottom_index() && (chain.size() < 2 || coin(rng, 0.6))) {
    std::vector<std::size_t> below;
    for (std::size_t x = 0; x < L.size(); ++x) {
      if (x != chain.back() && L.leq_at(x, chain.back())) below.push_back(x);
    }
    chain.push_back(below[uniform(rng, below.size())]);
  }
  return chain;
}

// One chain-valued equality as lattice indices.
std::vector<std::uint32_t> chain_equality(Rng& rng, const FiniteLattice& L,
                                          const FiniteAlgebra& A) {
  const std::size_t n = A.size();
  const auto chain = random_chain(rng, L);
  std::vector<std::uint32_t> values(n * n,
                                    static_cast<std::uint32_t>(L.bottom_index()));
  std::vector<bool> in(n, false);
  for (std::size_t x = 0; x < n; ++x) in[x] = coin(rng, 0.3);
  in = generate_subuniverse(A, std::move(in));
  UnionFind uf(n);
  std::vector<bool> assigned(n * n, false);
  for (std::size_t level = 0; level < chain.size(); ++level) {
    if (level > 0) {
      std::vector<bool> grow = in;
      for (std::size_t x = 0; x < n; ++x)
        if (coin(rng, 0.35)) grow[x] = true;
      in = generate_subuniverse(A, std::move(grow));
      std::vector<Elem> members;
      for (Elem x = 0; x < n; ++x)
        if (in[x]) members.push_back(x);
      const std::size_t extra = members.empty() ? 0 : uniform(rng, 3);
      for (std::size_t k = 0; k < extra; ++k) {
        uf.merge(members[uniform(rng, members.size())],
                 members[uniform(rng, members.size())]);
      }
      close_congruence(A, in, uf);
    }
    for (Elem x = 0; x < n; ++x) {
      for (Elem y = 0; y < n; ++y) {
        if (in[x] && in[y] && !assigned[x * n + y] && uf.find(x) == uf.find(y)) {
          assigned[x * n + y] = true;
          values[x * n + y] = static_cast<std::uint32_t>(chain[level]);
        }
      }
    }
  }
  return values;
}

std::vector<Elem> random_quasigroup(Rng& rng, std::size_t m) {
  std::vector<std::size_t> alpha(m), beta(m), sigma(m);
  std::iota(alpha.begin(), alpha.end(), 0);
  beta = sigma = alpha;
  std::shuffle(alpha.begin(), alpha.end(), rng);
  std::shuffle(beta.begin(), beta.end(), rng);
  std::shuffle(sigma.begin(), sigma.end(), rng);
  std::vector<Elem> table(m * m);
  for (std::size_t g = 0; g < m; ++g)
    for (std::size_t h = 0; h < m; ++h)
      table[g * m + h] = static_cast<Elem>(sigma[(alpha[g] + beta[h]) % m]);
  return table;
}

// Inflation of a quasigroup `base` of order m: carrier elements 0..m-1 form
// a section of the projection, the rest are assigned to random fibres.
struct Inflation {
  std::vector<std::size_t> fibre_of;
  std::vector<std::vector<Elem>> fibres;
  std::vector<Elem> table;
};

Inflation inflate(Rng& rng, const std::vector<Elem>& base, std::size_t m,
                  std::size_t n) {
  Inflation inf;
  inf.fibres.resize(m);
  for (std::size_t x = 0; x < n; ++x) {
    const std::size_t g = x < m ? x : uniform(rng, m);
    inf.fibre_of.push_back(g);
    inf.fibres[g].push_back(static_cast<Elem>(x));
  }
  inf.table.resize(n * n);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      const Elem g = base[inf.fibre_of[x] * m + inf.fibre_of[y]];
      inf.table[x * n + y] =
          x < m && y < m ? g : inf.fibres[g][uniform(rng, inf.fibres[g].size())];
    }
  }
  return inf;
}

// E = top on `top_set` diagonal, `fibre_level` within a fibre, `coarse_level`
// elsewhere.
std::vector<std::uint32_t> inflation_equality(const FiniteLattice& L,
                                              const Inflation& inf,
                                              const std::vector<bool>& top_set,
                                              std::size_t fibre_level,
                                              std::size_t coarse_level) {
  const std::size_t n = inf.fibre_of.size();
  std::vector<std::uint32_t> values(n * n);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      std::size_t v = coarse_level;
      if (x == y && top_set[x]) {
        v = L.top_index();
      } else if (inf.fibre_of[x] == inf.fibre_of[y]) {
        v = fibre_level;
      }
      values[x * n + y] = static_cast<std::uint32_t>(v);
    }
  }
  return values;
}

std::size_t random_below(Rng& rng, const FiniteLattice& L, std::size_t p) {
  std::vector<std::size_t> below;
  for (std::size_t x = 0; x < L.size(); ++x)
    if (x != p && L.leq_at(x, p)) below.push_back(x);
  return below.empty() ? p : below[uniform(rng, below.size())];
}

}  // namespace

// ----------------------------------------------------------------- lattices

std::vector<std::shared_ptr<const FiniteLattice>> all_lattices(
    std::size_t max_size) {
  std::vector<std::shared_ptr<const FiniteLattice>> out;
  for (std::size_t n = 1; n <= max_size; ++n) {
    if (n == 1) {
      out.push_back(std::make_shared<const FiniteLattice>(
          FiniteLattice::from_order(lattice_names(1), {true})));
      continue;
    }
    // Index 0 is the bottom, n-1 the top; relations among the middle
    // elements only go upwards in index order (some linear extension).
    const std::size_t mid = n - 2;
    std::vector<std::pair<std::size_t, std::size_t>> slots;
    for (std::size_t i = 1; i <= mid; ++i)
      for (std::size_t j = i + 1; j <= mid; ++j) slots.emplace_back(i, j);
    const auto perms = permutations(mid);
    std::set<std::vector<bool>> seen;
    for (std::size_t mask = 0; mask < (std::size_t{1} << slots.size()); ++mask) {
      std::vector<bool> leq(n * n, false);
      for (std::size_t x = 0; x < n; ++x) {
        leq[x * n + x] = true;
        leq[0 * n + x] = true;
        leq[x * n + (n - 1)] = true;
      }
      for (std::size_t s = 0; s < slots.size(); ++s)
        if (mask >> s & 1) leq[slots[s].first * n + slots[s].second] = true;
      bool transitive = true;
      for (std::size_t a = 0; a < n && transitive; ++a)
        for (std::size_t b = 0; b < n && transitive; ++b)
          for (std::size_t c = 0; c < n && transitive; ++c)
            if (leq[a * n + b] && leq[b * n + c] && !leq[a * n + c])
              transitive = false;
      if (!transitive) continue;

      // Canonical form: least encoding over relabellings of the middle.
      std::vector<bool> best;
      for (const auto& p : perms) {
        auto image = [&](std::size_t x) {
          return x == 0 || x == n - 1 ? x : 1 + p[x - 1];
        };
        std::vector<bool> enc(n * n, false);
        for (std::size_t a = 0; a < n; ++a)
          for (std::size_t b = 0; b < n; ++b)
            if (leq[a * n + b]) enc[image(a) * n + image(b)] = true;
        if (best.empty() || enc < best) best = enc;
      }
      if (!seen.insert(best).second) continue;
      try {
        out.push_back(std::make_shared<const FiniteLattice>(
            FiniteLattice::from_order(lattice_names(n), leq)));
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::NotALattice) throw;
      }
    }
  }
  return out;
}

std::shared_ptr<const FiniteLattice> chain_lattice(std::size_t size) {
  std::vector<bool> leq(size * size, false);
  for (std::size_t a = 0; a < size; ++a)
    for (std::size_t b = a; b < size; ++b) leq[a * size + b] = true;
  return std::make_shared<const FiniteLattice>(
      FiniteLattice::from_order(lattice_names(size), leq));
}

std::shared_ptr<const FiniteLattice> random_lattice(Rng& rng,
                                                    std::size_t max_size) {
  if (max_size <= 1) return chain_lattice(1);
  while (true) {
    const std::size_t bits = 2 + uniform(rng, 3);
    const unsigned full = (1u << bits) - 1;
    std::set<unsigned> family{full};
    const std::size_t picks = uniform(rng, 6);
    for (std::size_t k = 0; k < picks; ++k) {
      family.insert(static_cast<unsigned>(uniform(rng, full + 1)));
    }
    bool changed = true;
    while (changed) {
      changed = false;
      for (unsigned a : std::vector<unsigned>(family.begin(), family.end()))
        for (unsigned b : std::vector<unsigned>(family.begin(), family.end()))
          changed |= family.insert(a & b).second;
    }
    if (family.size() > max_size) continue;
    std::vector<unsigned> sets(family.begin(), family.end());
    std::stable_sort(sets.begin(), sets.end(), [](unsigned a, unsigned b) {
      return std::popcount(a) < std::popcount(b);
    });
    const std::size_t n = sets.size();
    std::vector<bool> leq(n * n, false);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        leq[a * n + b] = (sets[a] & sets[b]) == sets[a];
    return std::make_shared<const FiniteLattice>(
        FiniteLattice::from_order(lattice_names(n), leq));
  }
}

// --------------------------------------------------------------- instances

std::vector<std::string> carrier_names(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(n <= 26 ? std::string(1, static_cast<char>('a' + i))
                          : "c" + std::to_string(i));
  }
  return out;
}

FiniteAlgebra random_algebra(Rng& rng, std::size_t n, const Signature& signature) {
  std::vector<std::vector<Elem>> tables;
  for (const auto& op : signature.operations()) {
    const std::size_t size = op.arity == 0 ? 1 : op.arity == 1 ? n : n * n;
    std::vector<Elem> t(size);
    for (auto& v : t) v = static_cast<Elem>(uniform(rng, n));
    tables.push_back(std::move(t));
  }
  return FiniteAlgebra(carrier_names(n), signature, std::move(tables));
}

std::optional<LRelation> random_equality(
    Rng& rng, std::shared_ptr<const FiniteLattice> lattice,
    std::shared_ptr<const FiniteAlgebra> algebra) {
  const auto& L = *lattice;
  const std::size_t n = algebra->size();
  // In the one-element lattice every pair would be equal to degree 1.
  if (L.size() == 1 && n > 1) return std::nullopt;
  std::vector<std::uint32_t> values(n * n,
                                    static_cast<std::uint32_t>(L.top_index()));
  const std::size_t parts = 1 + uniform(rng, 3);
  for (std::size_t k = 0; k < parts; ++k) {
    const auto part = chain_equality(rng, L, *algebra);
    for (std::size_t i = 0; i < values.size(); ++i) {
      values[i] = static_cast<std::uint32_t>(L.meet_at(values[i], part[i]));
    }
  }
  if (L.size() > 1) {
    bool all_bottom = true;
    for (std::size_t x = 0; x < n; ++x)
      all_bottom = all_bottom && values[x * n + x] == L.bottom_index();
    if (all_bottom) return std::nullopt;
  }
  return LRelation::from_indices(std::move(lattice), std::move(algebra),
                                 std::move(values));
}

Term random_term(Rng& rng, const Signature& signature, std::size_t max_depth,
                 std::size_t variables) {
  std::vector<std::size_t> constants;
  std::vector<std::size_t> functions;
  for (std::size_t op = 0; op < signature.size(); ++op) {
    (signature[op].arity == 0 ? constants : functions).push_back(op);
  }
  if (max_depth == 0 || functions.empty() || coin(rng, 0.3)) {
    if (!constants.empty() && (variables == 0 || coin(rng, 0.15))) {
      return Term::apply(signature[constants[uniform(rng, constants.size())]].name);
    }
    return Term::variable(1 + uniform(rng, std::max<std::size_t>(variables, 1)));
  }
  const auto& op = signature[functions[uniform(rng, functions.size())]];
  std::vector<Term> args;
  for (int i = 0; i < op.arity; ++i) {
    args.push_back(random_term(rng, signature, max_depth - 1, variables));
  }
  return Term::apply(op.name, std::move(args));
}

LGroupoid random_lgroupoid(Rng& rng, std::shared_ptr<const FiniteLattice> lattice,
                           std::size_t max_carrier) {
  const Signature sig({{"*", 2}});
  const auto& L = *lattice;
  while (true) {
    const std::size_t n = 1 + uniform(rng, max_carrier);
    const std::size_t mode = uniform(rng, 3);
    std::shared_ptr<const FiniteAlgebra> algebra;
    std::optional<LRelation> relation;
    if (mode == 0 || L.size() == 1) {
      algebra = std::make_shared<const FiniteAlgebra>(random_algebra(rng, n, sig));
      relation = random_equality(rng, lattice, algebra);
    } else {
      const std::size_t m = 1 + uniform(rng, n);
      auto inf = inflate(rng, random_quasigroup(rng, m), m, n);
      if (mode == 2) {
        inf.table[uniform(rng, n * n)] = static_cast<Elem>(uniform(rng, n));
      }
      std::vector<bool> top_set(n, false);
      if (coin(rng)) {
        std::vector<bool> seed(n, false);
        seed[uniform(rng, n)] = true;
        top_set = seed;
      }
      algebra = std::make_shared<const FiniteAlgebra>(
          carrier_names(n), sig, std::vector<std::vector<Elem>>{inf.table});
      top_set = generate_subuniverse(*algebra, top_set);
      const std::size_t fibre = random_below(rng, L, L.top_index());
      const std::size_t coarse =
          coin(rng) ? L.bottom_index() : random_below(rng, L, fibre);
      relation = LRelation::from_indices(
          lattice, algebra, inflation_equality(L, inf, top_set, fibre, coarse));
    }
    if (!relation) continue;
    auto validated = validate_lequality(*relation);
    if (validated.equality) return LGroupoid(std::move(*validated.equality));
  }
}

LEquality random_lalgebra(Rng& rng, std::shared_ptr<const FiniteLattice> lattice,
                          std::size_t max_carrier) {
  const Signature sig({{"*", 2}, {"inv", 1}, {"e", 0}});
  while (true) {
    const std::size_t n = 1 + uniform(rng, max_carrier);
    auto algebra = std::make_shared<const FiniteAlgebra>(random_algebra(rng, n, sig));
    auto relation = random_equality(rng, lattice, algebra);
    if (!relation) continue;
    auto validated = validate_lequality(*relation);
    if (!validated.equality) {
      throw Error(ErrorKind::InternalInvariant,
                  "generated equality failed validation");
    }
    return std::move(*validated.equality);
  }
}

// -------------------------------------------------------------------- loops

std::vector<std::vector<Elem>> all_loops(std::size_t order) {
  std::vector<std::vector<Elem>> out;
  if (order == 0) return out;
  std::vector<Elem> t(order * order, 0);
  for (Elem i = 0; i < order; ++i) {
    t[i] = i;
    t[i * order] = i;
  }
  // Fill cells (r, c) with r, c >= 1 in row-major order.
  std::function<void(std::size_t)> fill = [&](std::size_t cell) {
    const std::size_t inner = (order - 1) * (order - 1);
    if (cell == inner) {
      out.push_back(t);
      return;
    }
    const std::size_t r = 1 + cell / (order - 1);
    const std::size_t c = 1 + cell % (order - 1);
    for (Elem v = 0; v < order; ++v) {
      bool ok = true;
      for (std::size_t k = 0; k < c && ok; ++k) ok = t[r * order + k] != v;
      for (std::size_t k = 0; k < r && ok; ++k) ok = t[k * order + c] != v;
      if (!ok) continue;
      t[r * order + c] = v;
      fill(cell + 1);
    }
  };
  if (order == 1) {
    out.push_back(t);
  } else {
    fill(0);
  }
  return out;
}

LEquality crisp_loop(std::shared_ptr<const FiniteLattice> lattice,
                     const std::vector<Elem>& table, std::size_t order) {
  auto algebra = std::make_shared<const FiniteAlgebra>(
      carrier_names(order), Signature({{"*", 2}, {"e", 0}}),
      std::vector<std::vector<Elem>>{table, {0}});
  return require_lequality(LRelation::crisp(std::move(lattice), std::move(algebra)));
}

LEquality random_fuzzy_loop(Rng& rng, std::shared_ptr<const FiniteLattice> lattice,
                            std::size_t max_carrier, std::size_t max_loop_order) {
  static std::map<std::size_t, std::vector<std::vector<Elem>>> cache;
  const auto& L = *lattice;
  const std::size_t limit = L.size() == 1 ? 1 : std::min(max_loop_order, max_carrier);
  const std::size_t m = 1 + uniform(rng, limit);
  const std::size_t n = L.size() == 1 ? m : m + uniform(rng, max_carrier - m + 1);
  auto& loops = cache[m];
  if (loops.empty()) loops = all_loops(m);
  const auto& base = loops[uniform(rng, loops.size())];

  auto inf = inflate(rng, base, m, n);
  std::vector<bool> top_set(n, false);
  if (coin(rng)) {
    for (std::size_t x = 0; x < m; ++x) top_set[x] = true;
  } else {
    top_set[0] = true;
  }
  const std::size_t fibre = random_below(rng, L, L.top_index());
  const std::size_t coarse = coin(rng) ? L.bottom_index() : random_below(rng, L, fibre);
  auto algebra = std::make_shared<const FiniteAlgebra>(
      carrier_names(n), Signature({{"*", 2}, {"e", 0}}),
      std::vector<std::vector<Elem>>{inf.table, {0}});
  return require_lequality(LRelation::from_indices(
      lattice, algebra, inflation_equality(L, inf, top_set, fibre, coarse)));
}

// ------------------------------------------------------ exhaustive sweeps

namespace {

struct EqualityOrbit {
  std::vector<std::uint32_t> values;
  std::vector<std::vector<std::size_t>> stabilizer;
};

std::vector<EqualityOrbit> canonical_equalities(const FiniteLattice& L,
                                                std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> slots;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) slots.emplace_back(i, j);
  const auto perms = permutations(n);
  const std::size_t top = L.top_index();
  std::vector<EqualityOrbit> out;
  std::vector<std::size_t> digits(slots.size(), 0);
  std::vector<std::uint32_t> E(n * n), image(n * n);
  while (true) {
    for (std::size_t s = 0; s < slots.size(); ++s) {
      const auto [i, j] = slots[s];
      E[i * n + j] = E[j * n + i] = static_cast<std::uint32_t>(digits[s]);
    }
    bool ok = true;
    for (std::size_t x = 0; x < n && ok; ++x)
      for (std::size_t y = 0; y < n && ok; ++y)
        if (x != y && E[x * n + y] == top) ok = false;
    for (std::size_t x = 0; x < n && ok; ++x)
      for (std::size_t y = 0; y < n && ok; ++y)
        for (std::size_t z = 0; z < n && ok; ++z)
          if (!L.leq_at(L.meet_at(E[x * n + z], E[z * n + y]), E[x * n + y]))
            ok = false;
    if (ok && L.size() > 1) {
      bool all_bottom = true;
      for (std::size_t x = 0; x < n; ++x)
        all_bottom = all_bottom && E[x * n + x] == L.bottom_index();
      ok = !all_bottom;
    }
    if (ok) {
      EqualityOrbit orbit;
      for (const auto& p : perms) {
        for (std::size_t x = 0; x < n; ++x)
          for (std::size_t y = 0; y < n; ++y)
            image[p[x] * n + p[y]] = E[x * n + y];
        if (image < E) {
          ok = false;
          break;
        }
        if (image == E) orbit.stabilizer.push_back(p);
      }
      if (ok) {
        orbit.values = E;
        out.push_back(std::move(orbit));
      }
    }
    std::size_t s = 0;
    while (s < digits.size() && ++digits[s] == L.size()) digits[s++] = 0;
    if (s == digits.size()) break;
  }
  return out;
}

bool compatible_binary(const FiniteLattice& L, const std::vector<std::uint32_t>& E,
                       const std::vector<Elem>& T, std::size_t n) {
  for (std::size_t a1 = 0; a1 < n; ++a1)
    for (std::size_t b1 = 0; b1 < n; ++b1) {
      const std::size_t e1 = E[a1 * n + b1];
      for (std::size_t a2 = 0; a2 < n; ++a2)
        for (std::size_t b2 = 0; b2 < n; ++b2)
          if (!L.leq_at(L.meet_at(e1, E[a2 * n + b2]),
                        E[T[a1 * n + a2] * n + T[b1 * n + b2]]))
            return false;
    }
  return true;
}

// Visits every table on n elements that is lexicographically least in its
// orbit under `group` (acting by relabelling); `extra` is an additional
// carrier-valued coordinate appended to the encoding (or n for none).
template <typename Visit>
void for_each_canonical_table(std::size_t n,
                              const std::vector<std::vector<std::size_t>>& group,
                              bool with_unit, Visit&& visit) {
  const std::size_t cells = n * n;
  std::vector<Elem> T(cells + (with_unit ? 1 : 0), 0);
  std::vector<Elem> image(T.size());
  while (true) {
    bool canonical = true;
    for (const auto& p : group) {
      for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
          image[p[x] * n + p[y]] = static_cast<Elem>(p[T[x * n + y]]);
      if (with_unit) image[cells] = static_cast<Elem>(p[T[cells]]);
      // Compare with the unit first so that the canonical choice is stable.
      if (with_unit && image[cells] != T[cells]) {
        if (image[cells] < T[cells]) {
          canonical = false;
          break;
        }
        continue;
      }
      if (std::lexicographical_compare(image.begin(), image.begin() + cells,
                                       T.begin(), T.begin() + cells)) {
        canonical = false;
        break;
      }
    }
    if (canonical) visit(T);
    std::size_t s = 0;
    while (s < T.size() && ++T[s] == n) T[s++] = 0;
    if (s == T.size()) break;
  }
}

}  // namespace

EnumerationStats for_each_lgroupoid(
    std::shared_ptr<const FiniteLattice> lattice, std::size_t n,
    const std::function<void(const LGroupoid&)>& visit) {
  EnumerationStats stats;
  const auto& L = *lattice;
  const auto names = carrier_names(n);
  const Signature sig({{"*", 2}});
  for (const auto& orbit : canonical_equalities(L, n)) {
    ++stats.equalities;
    for_each_canonical_table(n, orbit.stabilizer, false, [&](const std::vector<Elem>& T) {
      ++stats.candidates;
      if (!compatible_binary(L, orbit.values, T, n)) return;
      auto algebra = std::make_shared<const FiniteAlgebra>(
          names, sig, std::vector<std::vector<Elem>>{T});
      auto validated = validate_lequality(
          LRelation::from_indices(lattice, std::move(algebra), orbit.values));
      if (!validated.equality) {
        throw Error(ErrorKind::InternalInvariant,
                    "enumeration prefilter accepted an invalid equality");
      }
      ++stats.lgroupoids;
      visit(LGroupoid(std::move(*validated.equality)));
    });
  }
  return stats;
}

EnumerationStats for_each_lgroupoid_with_unit(
    std::shared_ptr<const FiniteLattice> lattice, std::size_t n,
    const std::function<void(const LEquality&)>& visit) {
  EnumerationStats stats;
  const auto& L = *lattice;
  const auto names = carrier_names(n);
  const Signature sig({{"*", 2}, {"e", 0}});
  for (const auto& orbit : canonical_equalities(L, n)) {
    ++stats.equalities;
    for_each_canonical_table(n, orbit.stabilizer, true, [&](const std::vector<Elem>& T) {
      ++stats.candidates;
      const Elem unit = T[n * n];
      if (orbit.values[unit * n + unit] != L.top_index()) return;
      const std::vector<Elem> table(T.begin(), T.begin() + n * n);
      if (!compatible_binary(L, orbit.values, table, n)) return;
      auto algebra = std::make_shared<const FiniteAlgebra>(
          names, sig, std::vector<std::vector<Elem>>{table, {unit}});
      auto validated = validate_lequality(
          LRelation::from_indices(lattice, std::move(algebra), orbit.values));
      if (!validated.equality) {
        throw Error(ErrorKind::InternalInvariant,
                    "enumeration prefilter accepted an invalid equality");
      }
      ++stats.lgroupoids;
      visit(*validated.equality);
    });
  }
  return stats;
}

}  // namespace lqg::gen
