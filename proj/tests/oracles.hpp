#pragma once

// Brute-force reference implementations. They use only the order relation
// and subset enumeration, never the library's join/meet tables or transforms.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "qlat/lattice.hpp"
#include "qlat/latmap.hpp"

namespace oracle {

using qlat::Elem;
using qlat::Lattice;
using Values = std::vector<Elem>;

// Least upper bound of the subset `mask`, found by scanning the order.
inline Elem sup(const Lattice& L, std::uint64_t mask) {
  const Elem n = static_cast<Elem>(L.size());
  for (Elem u = 0; u < n; ++u) {
    bool upper = true;
    for (Elem s = 0; s < n && upper; ++s)
      if ((mask >> s) & 1U) upper = L.leq(s, u);
    if (!upper) continue;
    bool least = true;
    for (Elem v = 0; v < n && least; ++v) {
      bool v_upper = true;
      for (Elem s = 0; s < n && v_upper; ++s)
        if ((mask >> s) & 1U) v_upper = L.leq(s, v);
      if (v_upper) least = L.leq(u, v);
    }
    if (least) return u;
  }
  return n;  // unreachable on lattices
}

// Greatest lower bound of the subset `mask`.
inline Elem inf(const Lattice& L, std::uint64_t mask) {
  const Elem n = static_cast<Elem>(L.size());
  for (Elem u = 0; u < n; ++u) {
    bool lower = true;
    for (Elem s = 0; s < n && lower; ++s)
      if ((mask >> s) & 1U) lower = L.leq(u, s);
    if (!lower) continue;
    bool greatest = true;
    for (Elem v = 0; v < n && greatest; ++v) {
      bool v_lower = true;
      for (Elem s = 0; s < n && v_lower; ++s)
        if ((mask >> s) & 1U) v_lower = L.leq(v, s);
      if (v_lower) greatest = L.leq(v, u);
    }
    if (greatest) return u;
  }
  return n;
}

// Subset-image table: sups[mask] for every subset of L.
inline std::vector<Elem> all_sups(const Lattice& L) {
  std::vector<Elem> out(std::size_t{1} << L.size());
  for (std::uint64_t m = 0; m < out.size(); ++m) out[m] = sup(L, m);
  return out;
}

// f(⋁S) = ⋁f(S) for every S ⊆ L, including S = ∅.
inline bool join_continuous(const Lattice& L, const Lattice& M, const Values& f, const std::vector<Elem>& sups_L) {
  for (std::uint64_t m = 0; m < sups_L.size(); ++m) {
    std::uint64_t image = 0;
    for (Elem s = 0; s < L.size(); ++s)
      if ((m >> s) & 1U) image |= std::uint64_t{1} << f[s];
    if (f[sups_L[m]] != sup(M, image)) return false;
  }
  return true;
}

inline bool pointwise_leq(const Lattice& M, const Values& f, const Values& g) {
  for (std::size_t i = 0; i < f.size(); ++i)
    if (!M.leq(f[i], g[i])) return false;
  return true;
}

// Every function L -> M, in lexicographic order of value arrays.
template <class Visit>
void for_each_function(const Lattice& L, const Lattice& M, Visit visit) {
  Values f(L.size(), 0);
  while (true) {
    visit(f);
    std::size_t d = f.size();
    while (d > 0) {
      --d;
      if (++f[d] < M.size()) break;
      f[d] = 0;
      if (d == 0) return;
    }
    if (f.empty()) return;
  }
}

// The join-continuous maps by the all-subsets definition, lexicographic.
inline std::vector<Values> homset(const Lattice& L, const Lattice& M) {
  const auto sups_L = all_sups(L);
  std::vector<Values> out;
  for_each_function(L, M, [&](const Values& f) {
    if (join_continuous(L, M, f, sups_L)) out.push_back(f);
  });
  return out;
}

inline Values compose(const Values& g, const Values& f) {
  Values r(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) r[i] = g[f[i]];
  return r;
}

// Pointwise join of all candidates; asserts-by-return that it is a member.
inline std::optional<Values> greatest(const Lattice& M, const std::vector<Values>& candidates,
                                      std::size_t width) {
  Values best(width);
  for (std::size_t i = 0; i < width; ++i) {
    std::uint64_t mask = 0;
    for (const Values& c : candidates) mask |= std::uint64_t{1} << c[i];
    best[i] = sup(M, mask);
  }
  if (std::find(candidates.begin(), candidates.end(), best) == candidates.end()) return std::nullopt;
  return best;
}

// Greatest join-continuous map below f, by filtering the homset.
inline std::optional<Values> interior(const Lattice& L, const Lattice& M, const std::vector<Values>& Q,
                                      const Values& f) {
  std::vector<Values> below;
  for (const Values& k : Q)
    if (pointwise_leq(M, k, f)) below.push_back(k);
  return greatest(M, below, L.size());
}

// g\h: greatest k in Q(L,M) with g∘k <= h (h: L->N, g: M->N).
inline std::optional<Values> residual_left(const Lattice& L, const Lattice& M, const Lattice& N,
                                           const std::vector<Values>& Q_LM, const Values& g, const Values& h) {
  std::vector<Values> ok;
  for (const Values& k : Q_LM)
    if (pointwise_leq(N, compose(g, k), h)) ok.push_back(k);
  return greatest(M, ok, L.size());
}

// h/f: greatest k in Q(M,N) with k∘f <= h (f: L->M, h: L->N).
inline std::optional<Values> residual_right(const Lattice& M, const Lattice& N, const std::vector<Values>& Q_MN,
                                            const Values& h, const Values& f) {
  std::vector<Values> ok;
  for (const Values& k : Q_MN)
    if (pointwise_leq(N, compose(k, f), h)) ok.push_back(k);
  return greatest(N, ok, M.size());
}

// x with: x <= ⋁Y implies x <= y for some y in Y, over every Y ⊆ L.
inline std::vector<Elem> join_primes(const Lattice& L) {
  const auto sups = all_sups(L);
  std::vector<Elem> out;
  for (Elem x = 0; x < L.size(); ++x) {
    bool prime = true;
    for (std::uint64_t m = 0; m < sups.size() && prime; ++m) {
      if (!L.leq(x, sups[m])) continue;
      bool hit = false;
      for (Elem y = 0; y < L.size() && !hit; ++y) hit = ((m >> y) & 1U) && L.leq(x, y);
      prime = hit;
    }
    if (prime) out.push_back(x);
  }
  return out;
}

// Complete distributivity by choice functions over every family with rows
// drawn from the nonempty subsets of L: ⋀_i ⋁ S_i = ⋁_ψ ⋀_i ψ(i). Two rows
// suffice to detect non-distributivity on finite lattices.
inline bool two_row_cd(const Lattice& L) {
  const std::uint64_t subsets = std::uint64_t{1} << L.size();
  const std::uint64_t full = subsets - 1;
  for (std::uint64_t a = 0; a < subsets; ++a)
    for (std::uint64_t b = 0; b < subsets; ++b) {
      Elem lhs = inf(L, (std::uint64_t{1} << sup(L, a)) | (std::uint64_t{1} << sup(L, b)));
      std::uint64_t picks = 0;
      for (Elem x = 0; x < L.size(); ++x)
        for (Elem y = 0; y < L.size(); ++y)
          if (((a >> x) & 1U) && ((b >> y) & 1U)) picks |= std::uint64_t{1} << inf(L, (1ULL << x) | (1ULL << y));
      if (lhs != sup(L, picks & full)) return false;
    }
  return true;
}

}  // namespace oracle
