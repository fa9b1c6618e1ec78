#pragma once

#include <cstddef>
#include <vector>

#include "qlat/check_result.hpp"
#include "qlat/lattice.hpp"

namespace qlat {

struct LatticeProfile {
  bool chain = false;
  bool distributive = false;
  bool completely_distributive = false;
  bool smooth = false;
  bool spatial = false;
  std::vector<Elem> join_primes;
};

// ⋁{ω(t) : x ≰ t} = x for every x; witness is the first failing x.
CheckResult raney_join_criterion(const Lattice& L);
// ⋀{o(t) : t ≰ y} = y for every y.
CheckResult raney_meet_criterion(const Lattice& L);
// x∧(y∨z) = (x∧y)∨(x∧z) over all triples; shares no code with the above.
CheckResult distributive_oracle(const Lattice& L);

inline constexpr std::size_t kDefaultFamilyWork = std::size_t{1} << 26;

// ⋀_i ⋁_j x_ij = ⋁_ψ ⋀_i x_iψ(i) over every max_i × max_j matrix with
// entries in L (repeated entries cover the smaller families).
CheckResult bounded_family_cd_check(const Lattice& L, std::size_t max_i = 2, std::size_t max_j = 2,
                                    std::size_t work_cap = kDefaultFamilyWork);

LatticeProfile classify_lattice(const Lattice& L);

}  // namespace qlat
