#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <ranges>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace qlat {

// Element index. Lattices are finite and small; tables store 16-bit entries.
using Elem = std::uint32_t;
inline constexpr std::size_t kMaxElements = std::size_t{1} << 16;

using Cover = std::pair<std::size_t, std::size_t>;

class Lattice;
class Poset;

namespace detail {
Poset make_poset(std::size_t n, std::vector<std::uint8_t> leq, std::vector<std::size_t> labels);
// Trusted construction from an order and matching tables (no lattice check).
Lattice assemble_lattice(Poset p, std::vector<std::uint16_t> join, std::vector<std::uint16_t> meet,
                         std::string name);
}  // namespace detail

/// A finite partial order on 0..n-1.
///
/// Posets built from covers or from a relation are relabelled into a
/// linear-extension order, so that `leq(i, j)` implies `i <= j`.
/// `labels()[i]` is the caller's index of canonical element `i`.
class Poset {
 public:
  Poset() = default;

  static Poset from_covers(std::size_t n, std::span<const Cover> covers);
  static Poset from_relation(std::size_t n, std::vector<std::uint8_t> leq);

  std::size_t size() const { return n_; }
  bool leq(std::size_t i, std::size_t j) const { return leq_[i * n_ + j] != 0; }
  std::span<const std::size_t> labels() const { return labels_; }

  // Hasse diagram, lexicographically sorted.
  std::vector<Cover> covers() const;

  friend bool operator==(const Poset& a, const Poset& b) {
    return a.n_ == b.n_ && a.leq_ == b.leq_;
  }

 private:
  friend class Lattice;
  friend Poset detail::make_poset(std::size_t, std::vector<std::uint8_t>, std::vector<std::size_t>);
  friend Lattice detail::assemble_lattice(Poset, std::vector<std::uint16_t>, std::vector<std::uint16_t>,
                                          std::string);
  Poset(std::size_t n, std::vector<std::uint8_t> leq, std::vector<std::size_t> labels)
      : n_(n), leq_(std::move(leq)), labels_(std::move(labels)) {}

  std::size_t n_ = 0;
  std::vector<std::uint8_t> leq_;
  std::vector<std::size_t> labels_;
};

/// A finite (hence complete) lattice with precomputed join and meet tables.
///
/// Cheap to copy: the tables live behind a shared immutable block.
class Lattice {
 public:
  static Lattice from_poset(const Poset& p, std::string name = {});

  std::size_t size() const { return d_->n; }
  const std::string& name() const { return d_->name; }
  const Poset& poset() const { return d_->poset; }

  bool leq(Elem a, Elem b) const { return d_->poset.leq_[a * d_->n + b] != 0; }
  Elem join(Elem a, Elem b) const { return d_->join[a * d_->n + b]; }
  Elem meet(Elem a, Elem b) const { return d_->meet[a * d_->n + b]; }
  Elem bottom() const { return d_->bottom; }
  Elem top() const { return d_->top; }

  auto elements() const { return std::views::iota(Elem{0}, static_cast<Elem>(d_->n)); }

  // Bottom-to-top order compatible with leq; identity for canonical lattices.
  std::span<const Elem> linear_extension() const { return d_->linear_extension; }
  std::span<const Elem> join_irreducibles() const { return d_->join_irreducibles; }
  std::span<const Elem> upper_covers(Elem x) const { return d_->upper_covers[x]; }

  // Sup and inf of {x : pred(x)}; the empty case yields bottom and top.
  template <class Pred>
  Elem join_if(Pred pred) const {
    Elem acc = bottom();
    for (Elem x : elements()) {
      if (pred(x)) acc = join(acc, x);
    }
    return acc;
  }
  template <class Pred>
  Elem meet_if(Pred pred) const {
    Elem acc = top();
    for (Elem x : elements()) {
      if (pred(x)) acc = meet(acc, x);
    }
    return acc;
  }

  Lattice renamed(std::string name) const;

  // Same carrier and order; names are ignored.
  friend bool operator==(const Lattice& a, const Lattice& b) {
    return a.d_ == b.d_ || a.d_->poset == b.d_->poset;
  }

 private:
  friend Lattice detail::assemble_lattice(Poset, std::vector<std::uint16_t>, std::vector<std::uint16_t>,
                                          std::string);

  struct Data {
    std::size_t n = 0;
    std::string name;
    Poset poset;
    std::vector<std::uint16_t> join;
    std::vector<std::uint16_t> meet;
    Elem bottom = 0;
    Elem top = 0;
    std::vector<Elem> linear_extension;
    std::vector<Elem> join_irreducibles;
    std::vector<std::vector<Elem>> upper_covers;
  };

  explicit Lattice(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
  std::shared_ptr<const Data> d_;
};

// Generators ---------------------------------------------------------------

namespace gen {
struct Chain { std::size_t n; };
struct Boolean { std::size_t k; };
struct M3 {};
struct N5 {};
struct Product { std::size_t a; std::size_t b; };  // chain(a) x chain(b)
struct Downsets { Poset poset; };
struct Random { std::uint64_t seed; std::size_t n; };
}  // namespace gen

using GeneratorSpec =
    std::variant<gen::Chain, gen::Boolean, gen::M3, gen::N5, gen::Product, gen::Downsets, gen::Random>;

inline constexpr std::size_t kMaxChain = 20;
inline constexpr std::size_t kMaxBooleanRank = 4;
inline constexpr std::size_t kMaxRandom = 12;
inline constexpr std::size_t kMaxDownsetPoset = 12;

// Operations ---------------------------------------------------------------

Poset build_poset(std::size_t n, std::span<const Cover> covers);
Lattice build_lattice(const Poset& p, std::string name = {});
Lattice dual(const Lattice& L);
Lattice downset_lattice(const Poset& p, std::string name = {});
Lattice product(const Lattice& L, const Lattice& M, std::string name = {});
Lattice generate(const GeneratorSpec& spec);

bool is_chain(const Lattice& L);

// x is completely join-prime iff x is not below o_L(x).
std::vector<Elem> completely_join_primes(const Lattice& L);
// The same set from the subset-quantified definition; exponential, |L| <= 20.
std::vector<Elem> completely_join_primes_by_definition(const Lattice& L);
bool is_smooth(const Lattice& L);
bool is_spatial(const Lattice& L);

// All posets on at most `max_n` (<= 6) elements, one per isomorphism class.
std::vector<Poset> all_posets_up_to_iso(std::size_t max_n);

}  // namespace qlat
