#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "qlat/check_result.hpp"
#include "qlat/latmap.hpp"

namespace qlat {

inline constexpr std::size_t kDefaultHomsetCap = std::size_t{1} << 20;

// All join-continuous maps dom -> cod, sorted lexicographically by values
// (so the constant-bottom map comes first).
class HomsetEnumeration {
 public:
  const Lattice& dom() const { return dom_; }
  const Lattice& cod() const { return cod_; }
  bool is_endo() const { return dom_ == cod_; }

  std::size_t size() const { return maps_.size(); }
  const LatMap& operator[](std::size_t i) const { return maps_[i]; }
  std::span<const LatMap> maps() const { return maps_; }
  auto begin() const { return maps_.begin(); }
  auto end() const { return maps_.end(); }

  std::optional<std::size_t> index_of(std::span<const Elem> values) const;
  std::optional<std::size_t> index_of(const LatMap& f) const { return index_of(f.values()); }

 private:
  friend HomsetEnumeration enumerate_homset(const Lattice&, const Lattice&, std::size_t);
  HomsetEnumeration(Lattice dom, Lattice cod, std::vector<LatMap> maps)
      : dom_(std::move(dom)), cod_(std::move(cod)), maps_(std::move(maps)) {}

  Lattice dom_;
  Lattice cod_;
  std::vector<LatMap> maps_;
};

// Backtracks over the join-irreducibles of L in linear-extension order,
// extends each assignment by joins and keeps the join-continuous ones.
HomsetEnumeration enumerate_homset(const Lattice& L, const Lattice& M, std::size_t cap = kDefaultHomsetCap);

struct UnitPair {
  LatMap one;   // id_L
  LatMap zero;  // o_L
};
UnitPair units(const Lattice& L);

// g\h for g: M->N, h: L->N; result L->M.
LatMap residual_left(const LatMap& g, const LatMap& h);
// h/f for f: L->M, h: L->N; result M->N.
LatMap residual_right(const LatMap& h, const LatMap& f);

// f* = ∨(ρ(f)) for f: L->M; result M->L. Involutive only on CD lattices.
LatMap star(const LatMap& f);
// g ⊕ f = (f* ∘ g*)* for f: L->M, g: M->N.
LatMap dual_tensor(const LatMap& g, const LatMap& f);
// The same operation as ∨(∧g ∘ ∧f).
LatMap dual_tensor_raney(const LatMap& g, const LatMap& f);

CheckResult is_cyclic(const LatMap& alpha, const HomsetEnumeration& Q);
CheckResult is_dualizing(const LatMap& alpha, const HomsetEnumeration& Q);
CheckResult is_central(const LatMap& beta, const HomsetEnumeration& Q);
CheckResult is_codualizing(const LatMap& beta, const HomsetEnumeration& Q);

// Full filters over Q, in homset order.
std::vector<LatMap> cyclic_elements(const HomsetEnumeration& Q);
std::vector<LatMap> central_elements(const HomsetEnumeration& Q);
std::vector<LatMap> cyclic_dualizing_elements(const HomsetEnumeration& Q);

namespace axiom {
inline constexpr unsigned kInvolution = 1U << 0;    // (f*)* = f
inline constexpr unsigned kNegation = 1U << 1;      // f <= g  <=>  f∘g* <= o  <=>  g*∘f <= o
inline constexpr unsigned kResiduals = 1U << 2;     // g\h = (h*∘g)*, h/f = (f∘h*)*
inline constexpr unsigned kTriangle = 1U << 3;      // g∘f <= h  <=>  h*∘g <= f*  <=>  f∘h* <= g*
inline constexpr unsigned kAll = kInvolution | kNegation | kResiduals | kTriangle;
}  // namespace axiom

struct AxiomOptions {
  unsigned parts = axiom::kAll;
  // Quantified tuples are enumerated exhaustively while their count stays
  // within the budget; otherwise `samples` seeded draws are checked.
  std::size_t tuple_budget = std::size_t{1} << 18;
  std::size_t samples = 4096;
  std::uint64_t seed = 1;
  std::size_t cap = kDefaultHomsetCap;
};

// The involutive-quantaloid axioms on every homset between objects {L, M}.
CheckResult check_involutive_axioms(const Lattice& L, const Lattice& M, const AxiomOptions& options = {});

// Q as a lattice under the pointwise order.
Lattice homset_lattice(const HomsetEnumeration& Q);

}  // namespace qlat
