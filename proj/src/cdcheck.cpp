#include "qlat/cdcheck.hpp"

#include <string>

#include "qlat/error.hpp"
#include "qlat/latmap.hpp"

namespace qlat {

CheckResult raney_join_criterion(const Lattice& L) {
  return timed([&] {
    const LatMap omega = special(L, SpecialKind::Omega);
    for (Elem x : L.elements()) {
      Elem acc = L.bottom();
      for (Elem t : L.elements())
        if (!L.leq(x, t)) acc = L.join(acc, omega(t));
      if (acc != x) {
        return CheckResult::fail("raney-join", Witness{{x, acc}, {}, "join of ω(t) over x≰t differs from x"});
      }
    }
    return CheckResult::pass("raney-join");
  });
}

CheckResult raney_meet_criterion(const Lattice& L) {
  return timed([&] {
    const LatMap o = special(L, SpecialKind::O);
    for (Elem y : L.elements()) {
      Elem acc = L.top();
      for (Elem t : L.elements())
        if (!L.leq(t, y)) acc = L.meet(acc, o(t));
      if (acc != y) {
        return CheckResult::fail("raney-meet", Witness{{y, acc}, {}, "meet of o(t) over t≰y differs from y"});
      }
    }
    return CheckResult::pass("raney-meet");
  });
}

CheckResult distributive_oracle(const Lattice& L) {
  return timed([&] {
    for (Elem x : L.elements())
      for (Elem y : L.elements())
        for (Elem z : L.elements()) {
          if (L.meet(x, L.join(y, z)) != L.join(L.meet(x, y), L.meet(x, z))) {
            return CheckResult::fail("distributive", Witness{{x, y, z}, {}, "x∧(y∨z) != (x∧y)∨(x∧z)"});
          }
        }
    return CheckResult::pass("distributive");
  });
}

CheckResult bounded_family_cd_check(const Lattice& L, std::size_t max_i, std::size_t max_j,
                                    std::size_t work_cap) {
  const std::size_t n = L.size();
  const std::size_t cells = max_i * max_j;
  // matrices * choice functions, saturating at the cap
  std::size_t work = 1;
  auto grow = [&](std::size_t factor) {
    if (factor != 0 && work > work_cap / factor) {
      throw Error(ErrorKind::CapExceeded, "family check " + std::to_string(max_i) + "x" + std::to_string(max_j) +
                                              " on " + std::to_string(n) + " elements exceeds the work cap");
    }
    work *= factor;
  };
  for (std::size_t c = 0; c < cells; ++c) grow(n);
  for (std::size_t i = 0; i < max_i; ++i) grow(max_j);

  const std::string name = "bounded-family-" + std::to_string(max_i) + "x" + std::to_string(max_j);
  return timed([&] {
    if (cells == 0) return CheckResult::pass(name);
    std::vector<Elem> x(cells, 0);
    std::vector<std::size_t> psi(max_i, 0);
    while (true) {
      Elem lhs = L.top();
      for (std::size_t i = 0; i < max_i; ++i) {
        Elem row = L.bottom();
        for (std::size_t j = 0; j < max_j; ++j) row = L.join(row, x[i * max_j + j]);
        lhs = L.meet(lhs, row);
      }
      Elem rhs = L.bottom();
      std::fill(psi.begin(), psi.end(), 0);
      while (true) {
        Elem pick = L.top();
        for (std::size_t i = 0; i < max_i; ++i) pick = L.meet(pick, x[i * max_j + psi[i]]);
        rhs = L.join(rhs, pick);
        std::size_t d = 0;
        while (d < max_i && ++psi[d] == max_j) psi[d++] = 0;
        if (d == max_i) break;
      }
      if (lhs != rhs) {
        return CheckResult::fail(name, Witness{x, {}, "row-major family where meet-of-joins != join-of-meets"});
      }
      std::size_t c = 0;
      while (c < cells && ++x[c] == n) x[c++] = 0;
      if (c == cells) break;
    }
    return CheckResult::pass(name);
  });
}

LatticeProfile classify_lattice(const Lattice& L) {
  LatticeProfile p;
  p.chain = is_chain(L);
  p.distributive = distributive_oracle(L).holds;
  p.completely_distributive = raney_join_criterion(L).holds;
  p.join_primes = completely_join_primes(L);
  p.smooth = p.join_primes.empty();
  p.spatial = is_spatial(L);
  return p;
}

}  // namespace qlat
