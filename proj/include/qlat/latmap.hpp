#pragma once

#include <atomic>
#include <cstdint>
#include <span>
#include <vector>

#include "qlat/lattice.hpp"

namespace qlat {

struct MapClass {
  bool monotone = false;
  bool join_continuous = false;
  bool meet_continuous = false;

  friend bool operator==(const MapClass&, const MapClass&) = default;
};

// A function between finite lattices stored as its value array.
class LatMap {
 public:
  LatMap(Lattice dom, Lattice cod, std::vector<Elem> values);
  static LatMap identity(const Lattice& L);

  LatMap(const LatMap& other);
  LatMap(LatMap&& other) noexcept;
  LatMap& operator=(const LatMap& other);
  LatMap& operator=(LatMap&& other) noexcept;

  const Lattice& dom() const { return dom_; }
  const Lattice& cod() const { return cod_; }
  std::span<const Elem> values() const { return values_; }
  Elem operator()(Elem x) const { return values_[x]; }

  // Computed on first use and cached; concurrent readers may race to fill
  // the cache, but every writer stores the same bits.
  MapClass classify() const;

  friend bool operator==(const LatMap& a, const LatMap& b) {
    return a.values_ == b.values_ && a.dom_ == b.dom_ && a.cod_ == b.cod_;
  }

 private:
  Lattice dom_;
  Lattice cod_;
  std::vector<Elem> values_;
  mutable std::atomic<std::uint8_t> class_cache_{0};
};

inline MapClass classify(const LatMap& f) { return f.classify(); }

// Pointwise order f <= g; throws DomainMismatch on differing types.
bool pointwise_leq(const LatMap& f, const LatMap& g);

LatMap compose(const LatMap& g, const LatMap& f);  // g after f
LatMap pointwise_join(std::span<const LatMap> fs);
LatMap pointwise_meet(std::span<const LatMap> fs);
LatMap pointwise_join(const LatMap& f, const LatMap& g);
LatMap pointwise_meet(const LatMap& f, const LatMap& g);

LatMap right_adjoint(const LatMap& f);  // requires join-continuity
LatMap left_adjoint(const LatMap& g);   // requires meet-continuity

// Greatest join-continuous map below f.
LatMap interior(const LatMap& f);

// (∨f)(x) = ⋁{f(t) : x ≰ t},  (∧f)(x) = ⋀{f(t) : t ≰ x}.
LatMap raney_join(const LatMap& f);
LatMap raney_meet(const LatMap& f);

enum class SpecialKind { Const, Annihilator, Alpha, O, Omega, Nu };

// c_x, a_x, α_x, o_L, ω_L and ν_x. `x` is ignored for O and Omega.
LatMap special(const Lattice& L, SpecialKind kind, Elem x = 0);

// x ↦ ⋁_{x≰t} ⋀_i f_i(ω(t)); all f_i join-continuous with a shared type.
LatMap big_meet(std::span<const LatMap> fs);

}  // namespace qlat
