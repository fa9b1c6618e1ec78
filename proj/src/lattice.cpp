#include "qlat/lattice.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <queue>
#include <random>
#include <set>
#include <string>

#include "qlat/error.hpp"

namespace qlat {

namespace {

// Rows of a square boolean matrix packed into 64-bit words.
class BitMatrix {
 public:
  explicit BitMatrix(std::size_t n) : n_(n), words_((n + 63) / 64), bits_(n * words_, 0) {}

  void set(std::size_t i, std::size_t j) { bits_[i * words_ + j / 64] |= std::uint64_t{1} << (j % 64); }
  bool get(std::size_t i, std::size_t j) const {
    return (bits_[i * words_ + j / 64] >> (j % 64)) & 1U;
  }
  std::uint64_t* row(std::size_t i) { return bits_.data() + i * words_; }
  const std::uint64_t* row(std::size_t i) const { return bits_.data() + i * words_; }
  std::size_t words() const { return words_; }

  // Warshall over packed rows.
  void transitive_closure() {
    for (std::size_t k = 0; k < n_; ++k) {
      const std::uint64_t* rk = row(k);
      for (std::size_t i = 0; i < n_; ++i) {
        if (!get(i, k)) continue;
        std::uint64_t* ri = row(i);
        for (std::size_t w = 0; w < words_; ++w) ri[w] |= rk[w];
      }
    }
  }

 private:
  std::size_t n_;
  std::size_t words_;
  std::vector<std::uint64_t> bits_;
};

void check_size(std::size_t n) {
  if (n > kMaxElements) {
    throw Error(ErrorKind::TooLarge, std::to_string(n) + " elements exceeds the cap of " +
                                         std::to_string(kMaxElements));
  }
}

// Smallest-index-first topological sort of a validated order.
std::vector<std::size_t> min_linear_extension(std::size_t n, const std::vector<std::uint8_t>& leq) {
  std::vector<std::size_t> indegree(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && leq[i * n + j]) ++indegree[j];
  std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> ready;
  for (std::size_t i = 0; i < n; ++i)
    if (indegree[i] == 0) ready.push(i);
  std::vector<std::size_t> order;
  order.reserve(n);
  while (!ready.empty()) {
    std::size_t i = ready.top();
    ready.pop();
    order.push_back(i);
    for (std::size_t j = 0; j < n; ++j)
      if (j != i && leq[i * n + j] && --indegree[j] == 0) ready.push(j);
  }
  return order;
}

// Closes `rel` reflexively and transitively, rejects cycles, and relabels
// into a linear extension.
Poset canonical_poset(std::size_t n, const BitMatrix& rel) {
  BitMatrix closed = rel;
  for (std::size_t i = 0; i < n; ++i) closed.set(i, i);
  closed.transitive_closure();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (closed.get(i, j) && closed.get(j, i)) {
        throw Error(ErrorKind::CycleDetected,
                    "elements " + std::to_string(i) + " and " + std::to_string(j) + " lie on a cycle");
      }
  std::vector<std::uint8_t> leq(n * n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) leq[i * n + j] = closed.get(i, j) ? 1 : 0;
  std::vector<std::size_t> order = min_linear_extension(n, leq);
  std::vector<std::uint8_t> relabelled(n * n, 0);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) relabelled[a * n + b] = leq[order[a] * n + order[b]];
  return detail::make_poset(n, std::move(relabelled), std::move(order));
}

std::vector<std::vector<Elem>> hasse_upper_covers(const Poset& p) {
  const std::size_t n = p.size();
  BitMatrix strict_up(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && p.leq(i, j)) strict_up.set(i, j);
  std::vector<std::vector<Elem>> covers(n);
  std::vector<std::uint64_t> above(strict_up.words());
  for (std::size_t i = 0; i < n; ++i) {
    std::fill(above.begin(), above.end(), 0);
    for (std::size_t z = 0; z < n; ++z) {
      if (!strict_up.get(i, z)) continue;
      const std::uint64_t* rz = strict_up.row(z);
      for (std::size_t w = 0; w < above.size(); ++w) above[w] |= rz[w];
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (strict_up.get(i, j) && !((above[j / 64] >> (j % 64)) & 1U)) covers[i].push_back(static_cast<Elem>(j));
    }
  }
  return covers;
}

std::string pair_text(std::size_t a, std::size_t b) {
  return "(" + std::to_string(a) + "," + std::to_string(b) + ")";
}

}  // namespace

namespace detail {

Poset make_poset(std::size_t n, std::vector<std::uint8_t> leq, std::vector<std::size_t> labels) {
  return Poset(n, std::move(leq), std::move(labels));
}

Lattice assemble_lattice(Poset p, std::vector<std::uint16_t> join, std::vector<std::uint16_t> meet,
                         std::string name) {
  Lattice::Data d;
  d.n = p.size();
  d.name = std::move(name);
  d.join = std::move(join);
  d.meet = std::move(meet);
  const std::size_t n = d.n;
  for (std::size_t x = 0; x < n; ++x) {
    bool is_bottom = true;
    bool is_top = true;
    for (std::size_t y = 0; y < n && (is_bottom || is_top); ++y) {
      is_bottom = is_bottom && p.leq(x, y);
      is_top = is_top && p.leq(y, x);
    }
    if (is_bottom) d.bottom = static_cast<Elem>(x);
    if (is_top) d.top = static_cast<Elem>(x);
  }
  for (std::size_t x : min_linear_extension(n, p.leq_)) d.linear_extension.push_back(static_cast<Elem>(x));
  d.upper_covers = hasse_upper_covers(p);
  std::vector<std::size_t> lower_count(n, 0);
  for (std::size_t x = 0; x < n; ++x)
    for (Elem y : d.upper_covers[x]) ++lower_count[y];
  for (Elem x : d.linear_extension)
    if (lower_count[x] == 1) d.join_irreducibles.push_back(x);
  d.poset = std::move(p);
  return Lattice(std::make_shared<const Lattice::Data>(std::move(d)));
}

}  // namespace detail

// Poset ----------------------------------------------------------------------

Poset Poset::from_covers(std::size_t n, std::span<const Cover> covers) {
  check_size(n);
  BitMatrix rel(n);
  for (const auto& [a, b] : covers) {
    if (a >= n || b >= n) {
      throw Error(ErrorKind::IndexOutOfRange, "cover " + pair_text(a, b) + " with n=" + std::to_string(n));
    }
    if (a == b) throw Error(ErrorKind::CycleDetected, "self-cover at " + std::to_string(a));
    rel.set(a, b);
  }
  return canonical_poset(n, rel);
}

Poset Poset::from_relation(std::size_t n, std::vector<std::uint8_t> leq) {
  check_size(n);
  if (leq.size() != n * n) {
    throw Error(ErrorKind::IndexOutOfRange, "relation matrix has " + std::to_string(leq.size()) +
                                                " entries, expected " + std::to_string(n * n));
  }
  BitMatrix rel(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (leq[i * n + j]) rel.set(i, j);
  return canonical_poset(n, rel);
}

std::vector<Cover> Poset::covers() const {
  std::vector<Cover> out;
  auto up = hasse_upper_covers(*this);
  for (std::size_t i = 0; i < n_; ++i)
    for (Elem j : up[i]) out.emplace_back(i, j);
  std::sort(out.begin(), out.end());
  return out;
}

Poset build_poset(std::size_t n, std::span<const Cover> covers) { return Poset::from_covers(n, covers); }

// Lattice --------------------------------------------------------------------

Lattice Lattice::from_poset(const Poset& p, std::string name) {
  const std::size_t n = p.size();
  if (n == 0) throw Error(ErrorKind::NotALattice, "the empty poset has no bottom element");
  check_size(n);

  BitMatrix up(n);
  BitMatrix down(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (p.leq(i, j)) {
        up.set(i, j);
        down.set(j, i);
      }

  std::vector<std::size_t> order = min_linear_extension(n, p.leq_);
  std::vector<std::size_t> pos(n);
  for (std::size_t k = 0; k < n; ++k) pos[order[k]] = k;
  const bool identity_order = std::is_sorted(order.begin(), order.end());

  const std::size_t words = up.words();
  std::vector<std::uint64_t> common(words);

  // The least element of the set `common`, if it exists.
  auto least_of = [&](const BitMatrix& above, bool lowest_first) -> std::optional<std::size_t> {
    std::optional<std::size_t> best;
    for (std::size_t w = 0; w < words; ++w) {
      std::uint64_t bits = common[w];
      while (bits) {
        std::size_t j = w * 64 + static_cast<std::size_t>(std::countr_zero(bits));
        bits &= bits - 1;
        bool better = !best || (lowest_first ? pos[j] < pos[*best] : pos[j] > pos[*best]);
        if (better) best = j;
        if (identity_order && lowest_first) break;
      }
      if (best && identity_order && lowest_first) break;
    }
    if (!best) return std::nullopt;
    const std::uint64_t* rb = above.row(*best);
    for (std::size_t w = 0; w < words; ++w)
      if ((common[w] & ~rb[w]) != 0) return std::nullopt;
    return best;
  };

  std::vector<std::uint16_t> join(n * n);
  std::vector<std::uint16_t> meet(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a; b < n; ++b) {
      for (std::size_t w = 0; w < words; ++w) common[w] = up.row(a)[w] & up.row(b)[w];
      auto lub = least_of(up, true);
      if (!lub) throw Error(ErrorKind::NotALattice, "no least upper bound for " + pair_text(a, b));
      for (std::size_t w = 0; w < words; ++w) common[w] = down.row(a)[w] & down.row(b)[w];
      auto glb = least_of(down, false);
      if (!glb) throw Error(ErrorKind::NotALattice, "no greatest lower bound for " + pair_text(a, b));
      join[a * n + b] = join[b * n + a] = static_cast<std::uint16_t>(*lub);
      meet[a * n + b] = meet[b * n + a] = static_cast<std::uint16_t>(*glb);
    }
  }
  return detail::assemble_lattice(p, std::move(join), std::move(meet), std::move(name));
}

Lattice Lattice::renamed(std::string name) const {
  auto d = std::make_shared<Data>(*d_);
  d->name = std::move(name);
  return Lattice(std::move(d));
}

Lattice build_lattice(const Poset& p, std::string name) { return Lattice::from_poset(p, std::move(name)); }

Lattice dual(const Lattice& L) {
  const std::size_t n = L.size();
  std::vector<std::uint8_t> leq(n * n);
  std::vector<std::uint16_t> join(n * n);
  std::vector<std::uint16_t> meet(n * n);
  for (Elem a : L.elements())
    for (Elem b : L.elements()) {
      leq[a * n + b] = L.leq(b, a) ? 1 : 0;
      join[a * n + b] = static_cast<std::uint16_t>(L.meet(a, b));
      meet[a * n + b] = static_cast<std::uint16_t>(L.join(a, b));
    }
  std::vector<std::size_t> labels(n);
  std::iota(labels.begin(), labels.end(), std::size_t{0});
  std::string name = L.name().starts_with("dual-") ? L.name().substr(5) : "dual-" + L.name();
  return detail::assemble_lattice(detail::make_poset(n, std::move(leq), std::move(labels)), std::move(join),
                                  std::move(meet), std::move(name));
}

Lattice downset_lattice(const Poset& p, std::string name) {
  const std::size_t m = p.size();
  if (m > kMaxDownsetPoset) {
    throw Error(ErrorKind::TooLarge, "downsets of a " + std::to_string(m) + "-element poset (cap " +
                                         std::to_string(kMaxDownsetPoset) + ")");
  }
  std::vector<std::uint32_t> below(m, 0);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      if (p.leq(j, i)) below[i] |= std::uint32_t{1} << j;

  const std::uint32_t limit = std::uint32_t{1} << m;
  std::vector<std::uint32_t> sets;
  std::vector<std::int32_t> index_of(limit, -1);
  for (std::uint32_t s = 0; s < limit; ++s) {
    bool closed = true;
    for (std::size_t i = 0; i < m && closed; ++i)
      if ((s >> i) & 1U) closed = (below[i] & ~s) == 0;
    if (closed) {
      index_of[s] = static_cast<std::int32_t>(sets.size());
      sets.push_back(s);
    }
  }
  const std::size_t n = sets.size();
  check_size(n);
  std::vector<std::uint8_t> leq(n * n);
  std::vector<std::uint16_t> join(n * n);
  std::vector<std::uint16_t> meet(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      leq[a * n + b] = (sets[a] & ~sets[b]) == 0 ? 1 : 0;
      join[a * n + b] = static_cast<std::uint16_t>(index_of[sets[a] | sets[b]]);
      meet[a * n + b] = static_cast<std::uint16_t>(index_of[sets[a] & sets[b]]);
    }
  std::vector<std::size_t> labels(n);
  std::iota(labels.begin(), labels.end(), std::size_t{0});
  if (name.empty()) name = "downsets";
  return detail::assemble_lattice(detail::make_poset(n, std::move(leq), std::move(labels)), std::move(join),
                                  std::move(meet), std::move(name));
}

Lattice product(const Lattice& L, const Lattice& M, std::string name) {
  const std::size_t ln = L.size();
  const std::size_t mn = M.size();
  const std::size_t n = ln * mn;
  check_size(n);
  std::vector<std::uint8_t> leq(n * n);
  std::vector<std::uint16_t> join(n * n);
  std::vector<std::uint16_t> meet(n * n);
  for (Elem a1 : L.elements())
    for (Elem a2 : M.elements())
      for (Elem b1 : L.elements())
        for (Elem b2 : M.elements()) {
          std::size_t a = a1 * mn + a2;
          std::size_t b = b1 * mn + b2;
          leq[a * n + b] = L.leq(a1, b1) && M.leq(a2, b2) ? 1 : 0;
          join[a * n + b] = static_cast<std::uint16_t>(L.join(a1, b1) * mn + M.join(a2, b2));
          meet[a * n + b] = static_cast<std::uint16_t>(L.meet(a1, b1) * mn + M.meet(a2, b2));
        }
  std::vector<std::size_t> labels(n);
  std::iota(labels.begin(), labels.end(), std::size_t{0});
  if (name.empty()) name = L.name() + "x" + M.name();
  return detail::assemble_lattice(detail::make_poset(n, std::move(leq), std::move(labels)), std::move(join),
                                  std::move(meet), std::move(name));
}

// Generators -----------------------------------------------------------------

namespace {

Lattice chain(std::size_t n) {
  if (n == 0) throw Error(ErrorKind::NotALattice, "chain(0) has no elements");
  if (n > kMaxChain) throw Error(ErrorKind::TooLarge, "chain(" + std::to_string(n) + ")");
  std::vector<Cover> covers;
  for (std::size_t i = 0; i + 1 < n; ++i) covers.emplace_back(i, i + 1);
  return build_lattice(build_poset(n, covers), "c" + std::to_string(n));
}

Lattice boolean(std::size_t k) {
  if (k > kMaxBooleanRank) throw Error(ErrorKind::TooLarge, "boolean(" + std::to_string(k) + ")");
  const std::size_t n = std::size_t{1} << k;
  std::vector<std::uint8_t> leq(n * n);
  std::vector<std::uint16_t> join(n * n);
  std::vector<std::uint16_t> meet(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      leq[a * n + b] = (a & ~b) == 0 ? 1 : 0;
      join[a * n + b] = static_cast<std::uint16_t>(a | b);
      meet[a * n + b] = static_cast<std::uint16_t>(a & b);
    }
  std::vector<std::size_t> labels(n);
  std::iota(labels.begin(), labels.end(), std::size_t{0});
  return detail::assemble_lattice(detail::make_poset(n, std::move(leq), std::move(labels)), std::move(join),
                                  std::move(meet), "b" + std::to_string(k));
}

// A random intersection-closed family of subsets of a (n-1)-set that
// contains the full set, ordered by inclusion.
Lattice random_closure_system(std::uint64_t seed, std::size_t n) {
  if (n == 0) throw Error(ErrorKind::NotALattice, "random lattice with 0 elements");
  if (n > kMaxRandom) throw Error(ErrorKind::TooLarge, "random(" + std::to_string(n) + ")");
  std::string name = "random-s" + std::to_string(seed) + "-n" + std::to_string(n);
  const std::size_t k = std::max<std::size_t>(n - 1, 1);
  const std::uint32_t full = (std::uint32_t{1} << k) - 1;
  std::mt19937_64 rng(seed);
  std::set<std::uint32_t> family{full};
  for (int attempt = 0; attempt < 512 && family.size() < n; ++attempt) {
    const auto s = static_cast<std::uint32_t>(rng()) & full;
    std::set<std::uint32_t> candidate = family;
    candidate.insert(s);
    for (std::uint32_t f : family) candidate.insert(f & s);
    if (candidate.size() <= n) family = std::move(candidate);
  }
  std::vector<std::uint32_t> sets(family.begin(), family.end());
  std::sort(sets.begin(), sets.end(), [](std::uint32_t a, std::uint32_t b) {
    int pa = std::popcount(a);
    int pb = std::popcount(b);
    return pa != pb ? pa < pb : a < b;
  });
  const std::size_t m = sets.size();
  std::vector<std::uint8_t> leq(m * m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) leq[a * m + b] = (sets[a] & ~sets[b]) == 0 ? 1 : 0;
  return build_lattice(Poset::from_relation(m, std::move(leq)), std::move(name));
}

}  // namespace

Lattice generate(const GeneratorSpec& spec) {
  struct Visitor {
    Lattice operator()(const gen::Chain& c) const { return chain(c.n); }
    Lattice operator()(const gen::Boolean& b) const { return boolean(b.k); }
    Lattice operator()(const gen::M3&) const {
      const std::vector<Cover> covers{{0, 1}, {0, 2}, {0, 3}, {1, 4}, {2, 4}, {3, 4}};
      return build_lattice(build_poset(5, covers), "m3");
    }
    Lattice operator()(const gen::N5&) const {
      // bottom 0, a = 1, b = 2 < c = 3, top 4
      const std::vector<Cover> covers{{0, 1}, {0, 2}, {1, 4}, {2, 3}, {3, 4}};
      return build_lattice(build_poset(5, covers), "n5");
    }
    Lattice operator()(const gen::Product& p) const {
      if (p.a == 0 || p.b == 0) throw Error(ErrorKind::NotALattice, "product with an empty factor");
      if (p.a * p.b > kMaxChain) {
        throw Error(ErrorKind::TooLarge, "product(" + std::to_string(p.a) + "," + std::to_string(p.b) + ")");
      }
      Lattice a = chain(p.a);
      Lattice b = chain(p.b);
      return product(a, b, a.name() + "x" + b.name());
    }
    Lattice operator()(const gen::Downsets& d) const { return downset_lattice(d.poset); }
    Lattice operator()(const gen::Random& r) const { return random_closure_system(r.seed, r.n); }
  };
  return std::visit(Visitor{}, spec);
}

// Predicates -----------------------------------------------------------------

bool is_chain(const Lattice& L) {
  for (Elem a : L.elements())
    for (Elem b : L.elements())
      if (!L.leq(a, b) && !L.leq(b, a)) return false;
  return true;
}

std::vector<Elem> completely_join_primes_by_definition(const Lattice& L) {
  const std::size_t n = L.size();
  if (n > 20) throw Error(ErrorKind::TooLarge, "subset enumeration over " + std::to_string(n) + " elements");
  const std::size_t subsets = std::size_t{1} << n;
  std::vector<Elem> sup(subsets);
  sup[0] = L.bottom();
  for (std::size_t s = 1; s < subsets; ++s) {
    auto low = static_cast<Elem>(std::countr_zero(s));
    sup[s] = L.join(sup[s & (s - 1)], low);
  }
  std::vector<Elem> primes;
  for (Elem x : L.elements()) {
    std::size_t up_mask = 0;
    for (Elem y : L.elements())
      if (L.leq(x, y)) up_mask |= std::size_t{1} << y;
    bool prime = true;
    for (std::size_t s = 0; s < subsets && prime; ++s)
      if (L.leq(x, sup[s]) && (s & up_mask) == 0) prime = false;
    if (prime) primes.push_back(x);
  }
  return primes;
}

bool is_smooth(const Lattice& L) { return completely_join_primes(L).empty(); }

bool is_spatial(const Lattice& L) {
  const std::vector<Elem> primes = completely_join_primes(L);
  for (Elem x : L.elements()) {
    Elem acc = L.bottom();
    for (Elem p : primes)
      if (L.leq(p, x)) acc = L.join(acc, p);
    if (acc != x) return false;
  }
  return true;
}

std::vector<Poset> all_posets_up_to_iso(std::size_t max_n) {
  if (max_n > 6) throw Error(ErrorKind::TooLarge, "poset enumeration beyond 6 elements");
  std::vector<Poset> out;
  for (std::size_t n = 0; n <= max_n; ++n) {
    std::vector<Cover> slots;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) slots.emplace_back(i, j);
    std::vector<std::size_t> perm(n);
    std::set<std::uint64_t> seen;
    for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << slots.size()); ++mask) {
      std::vector<std::uint8_t> rel(n * n, 0);
      for (std::size_t i = 0; i < n; ++i) rel[i * n + i] = 1;
      for (std::size_t s = 0; s < slots.size(); ++s)
        if ((mask >> s) & 1U) rel[slots[s].first * n + slots[s].second] = 1;
      bool transitive = true;
      for (std::size_t a = 0; a < n && transitive; ++a)
        for (std::size_t b = 0; b < n && transitive; ++b)
          for (std::size_t c = 0; c < n && transitive; ++c)
            if (rel[a * n + b] && rel[b * n + c] && !rel[a * n + c]) transitive = false;
      if (!transitive) continue;
      // Canonical code: the smallest encoding over all relabellings.
      std::iota(perm.begin(), perm.end(), std::size_t{0});
      std::uint64_t best = ~std::uint64_t{0};
      do {
        std::uint64_t code = 0;
        for (std::size_t a = 0; a < n; ++a)
          for (std::size_t b = 0; b < n; ++b)
            if (a != b && rel[perm[a] * n + perm[b]]) code |= std::uint64_t{1} << (a * n + b);
        best = std::min(best, code);
      } while (std::next_permutation(perm.begin(), perm.end()));
      if (seen.insert(best).second) out.push_back(Poset::from_relation(n, rel));
    }
  }
  return out;
}

}  // namespace qlat
