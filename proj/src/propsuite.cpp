#include "qlat/propsuite.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <map>
#include <mutex>
#include <optional>
#include <random>
#include <set>
#include <thread>

#include "qlat/cdcheck.hpp"
#include "qlat/error.hpp"
#include "qlat/latmap.hpp"
#include "qlat/quantaloid.hpp"

namespace qlat {

std::string_view to_string(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Skip: return "skip";
  }
  return "unknown";
}

// Per-lattice state shared by the checks, built on first use.
class LatticeContext {
 public:
  LatticeContext(Lattice L, const SuiteOptions& opt, std::size_t index)
      : L(std::move(L)), opt(opt), index(index) {}

  const Lattice L;
  const SuiteOptions& opt;
  const std::size_t index;

  bool cd() {
    if (!cd_) cd_ = distributive_oracle(L).holds;
    return *cd_;
  }
  const LatMap& o() { return cached(o_, [&] { return special(L, SpecialKind::O); }); }
  const LatMap& omega() { return cached(omega_, [&] { return special(L, SpecialKind::Omega); }); }
  const LatMap& id() { return cached(id_, [&] { return LatMap::identity(L); }); }
  const LatMap& c_top() { return cached(c_top_, [&] { return special(L, SpecialKind::Const, L.top()); }); }
  const LatMap& c_bottom() { return cached(c_bottom_, [&] { return special(L, SpecialKind::Const, L.bottom()); }); }

  // nullptr when the homset exceeds the cap; see q_error().
  const HomsetEnumeration* Q() {
    if (!q_tried_) {
      q_tried_ = true;
      try {
        q_.emplace(enumerate_homset(L, L, opt.homset_cap));
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::CapExceeded) throw;
        q_error_ = e.what();
      }
    }
    return q_ ? &*q_ : nullptr;
  }
  const std::string& q_error() const { return q_error_; }

  const std::vector<LatMap>& cyclic() {
    if (!cyclic_) cyclic_ = cyclic_elements(*Q());
    return *cyclic_;
  }

  const CheckResult& negation_axioms() {
    if (!axioms_) {
      AxiomOptions a;
      a.parts = axiom::kInvolution | axiom::kNegation;
      a.tuple_budget = opt.pair_budget;
      a.seed = seed_for(0xA1);
      a.cap = opt.homset_cap;
      axioms_ = check_involutive_axioms(L, L, a);
    }
    return *axioms_;
  }

  const std::vector<LatMap>& monotone_samples() {
    if (!samples_) {
      samples_.emplace();
      for (auto& v : random_monotone_maps(L, opt.random_maps, seed_for(0x5A)))
        samples_->emplace_back(L, L, std::move(v));
    }
    return *samples_;
  }

  std::uint64_t seed_for(std::uint64_t salt) const {
    std::seed_seq seq{static_cast<std::uint32_t>(opt.seed), static_cast<std::uint32_t>(opt.seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(salt)};
    std::uint64_t out[1];
    seq.generate(reinterpret_cast<std::uint32_t*>(out), reinterpret_cast<std::uint32_t*>(out) + 2);
    return out[0];
  }

 private:
  template <class F>
  const LatMap& cached(std::optional<LatMap>& slot, F make) {
    if (!slot) slot.emplace(make());
    return *slot;
  }

  std::optional<bool> cd_;
  std::optional<LatMap> o_, omega_, id_, c_top_, c_bottom_;
  bool q_tried_ = false;
  std::optional<HomsetEnumeration> q_;
  std::string q_error_;
  std::optional<std::vector<LatMap>> cyclic_;
  std::optional<CheckResult> axioms_;
  std::optional<std::vector<LatMap>> samples_;
};

namespace {

constexpr std::size_t kPairSamples = 4096;
constexpr std::size_t kGlbCheckLimit = 64;
constexpr std::size_t kHomsetLatticeLimit = 3;

std::vector<Elem> vals(const LatMap& f) { return {f.values().begin(), f.values().end()}; }

CellResult skip(std::string reason) {
  CellResult c;
  c.status = Status::Skip;
  c.reason = std::move(reason);
  return c;
}

CellResult unexpected_skip(std::string reason) {
  CellResult c = skip(std::move(reason));
  c.unexpected = true;
  return c;
}

CellResult from(CheckResult r) {
  CellResult c;
  c.status = r.holds ? Status::Pass : Status::Fail;
  c.result = std::move(r);
  return c;
}

CellResult pass(std::string name, std::string detail = {}) { return from(CheckResult::pass(std::move(name), std::move(detail))); }

CellResult fail(std::string name, Witness w) { return from(CheckResult::fail(std::move(name), std::move(w))); }

CellResult vacuous_pass(std::string name, std::string why) {
  CellResult c = pass(std::move(name), why);
  c.vacuous = true;
  return c;
}

// Pairs from [0,a) x [0,b): all of them within the budget, else seeded samples.
template <class F>
std::optional<Witness> over_pairs(std::size_t a, std::size_t b, std::size_t budget, std::uint64_t seed,
                                  std::string& coverage, F visit) {
  if (a == 0 || b == 0) return std::nullopt;
  if (a <= budget / b) {
    coverage = "exhaustive over " + std::to_string(a * b) + " pairs";
    for (std::size_t i = 0; i < a; ++i)
      for (std::size_t j = 0; j < b; ++j)
        if (auto w = visit(i, j)) return w;
    return std::nullopt;
  }
  coverage = "sampled " + std::to_string(kPairSamples) + " pairs";
  std::mt19937_64 rng(seed);
  for (std::size_t t = 0; t < kPairSamples; ++t) {
    std::size_t i = static_cast<std::size_t>(rng() % a);
    std::size_t j = static_cast<std::size_t>(rng() % b);
    if (auto w = visit(i, j)) return w;
  }
  return std::nullopt;
}

std::set<std::vector<Elem>> value_set(const std::vector<LatMap>& maps) {
  std::set<std::vector<Elem>> s;
  for (const LatMap& m : maps) s.insert(vals(m));
  return s;
}

std::vector<LatMap> homset_and_samples(LatticeContext& c) {
  std::vector<LatMap> pool(c.Q()->begin(), c.Q()->end());
  for (const LatMap& m : c.monotone_samples()) pool.push_back(m);
  return pool;
}

// T1 -------------------------------------------------------------------------
CellResult t1(LatticeContext& c) {
  std::vector<LatMap> parts;
  for (Elem t : c.L.elements())
    parts.push_back(compose(special(c.L, SpecialKind::Const, t), special(c.L, SpecialKind::Annihilator, t)));
  LatMap joined = pointwise_join(parts);
  if (joined == c.o()) return pass("T1");
  return fail("T1", Witness{{}, {vals(c.o()), vals(joined)}, "o differs from the join of c_t∘a_t"});
}

// T2 -------------------------------------------------------------------------
CellResult t2(LatticeContext& c) {
  for (Elem x : c.L.elements()) {
    LatMap lhs = interior(special(c.L, SpecialKind::Alpha, x));
    LatMap rhs = special(c.L, SpecialKind::Annihilator, c.o()(x));
    if (!(lhs == rhs)) return fail("T2", Witness{{x}, {vals(lhs), vals(rhs)}, "int(α_x) != a_o(x)"});
  }
  return pass("T2");
}

// T3 -------------------------------------------------------------------------
CellResult t3(LatticeContext& c) {
  const auto& cyc = c.cyclic();
  for (const LatMap& a : cyc) {
    if (!(a == c.c_top()) && !(a == c.o())) {
      return fail("T3", Witness{{}, {vals(a)}, "cyclic element other than c_⊤ and o"});
    }
  }
  return pass("T3", std::to_string(cyc.size()) + " cyclic elements");
}

// T4 -------------------------------------------------------------------------
CellResult t4(LatticeContext& c) {
  if (c.L.size() == 1) return skip("applies to nontrivial lattices");
  CheckResult r = is_dualizing(c.c_top(), *c.Q());
  if (!r.holds) return pass("T4", "c_⊤ refuted as dualizing");
  return fail("T4", Witness{{}, {vals(c.c_top())}, "c_⊤ is dualizing"});
}

// T5 -------------------------------------------------------------------------
CellResult t5(LatticeContext& c) {
  if (c.o() == c.c_top()) return vacuous_pass("T5", "o equals c_⊤");
  if (!is_cyclic(c.o(), *c.Q()).holds) return vacuous_pass("T5", "o is not cyclic");
  CheckResult meet = raney_meet_criterion(c.L);
  if (!meet.holds) return fail("T5", Witness{meet.witness->elements, {}, "o cyclic but the Raney meet form fails"});
  CheckResult dist = distributive_oracle(c.L);
  if (!dist.holds) return fail("T5", Witness{dist.witness->elements, {}, "o cyclic but the lattice is not distributive"});
  return pass("T5", "premise held; conclusion verified");
}

// T6 / T6n -------------------------------------------------------------------
CellResult t6(LatticeContext& c) {
  if (!c.cd()) return skip("applies to completely distributive lattices");
  CellResult r = from(c.negation_axioms());
  r.result.name = "T6";
  return r;
}

CellResult t6n(LatticeContext& c) {
  if (c.cd()) return skip("applies to lattices that are not completely distributive");
  const CheckResult& r = c.negation_axioms();
  if (!r.holds) {
    CellResult out = pass("T6n", "counterexample: " + r.witness->note);
    out.result.witness = r.witness;
    return out;
  }
  return fail("T6n", Witness{{}, {}, "no axiom counterexample found off the CD class"});
}

// T7 -------------------------------------------------------------------------
CellResult t7(LatticeContext& c) {
  std::vector<LatMap> central = central_elements(*c.Q());
  std::set<std::vector<Elem>> expected{vals(c.id()), vals(c.c_bottom())};
  if (value_set(central) == expected) return pass("T7");
  Witness w{{}, {}, "central elements differ from {id, c_⊥}"};
  for (const LatMap& m : central) w.maps.push_back(vals(m));
  return fail("T7", std::move(w));
}

// T8 / T8n -------------------------------------------------------------------
std::optional<LatMap> first_raney_inverse_failure(const HomsetEnumeration& Q) {
  for (const LatMap& f : Q)
    if (!(raney_join(raney_meet(f)) == f)) return f;
  return std::nullopt;
}

CellResult t8(LatticeContext& c) {
  if (!c.cd()) return skip("applies to completely distributive lattices");
  if (auto f = first_raney_inverse_failure(*c.Q())) {
    return fail("T8", Witness{{}, {vals(*f), vals(raney_join(raney_meet(*f)))}, "∨(∧f) != f"});
  }
  return pass("T8", "exhaustive over " + std::to_string(c.Q()->size()) + " maps");
}

CellResult t8n(LatticeContext& c) {
  if (c.cd()) return skip("applies to lattices that are not completely distributive");
  if (auto f = first_raney_inverse_failure(*c.Q())) {
    CellResult out = pass("T8n", "counterexample found");
    out.result.witness = Witness{{}, {vals(*f), vals(raney_join(raney_meet(*f)))}, "∨(∧f) != f"};
    return out;
  }
  return fail("T8n", Witness{{}, {}, "∨(∧f) = f for every f"});
}

// T9 / T9n -------------------------------------------------------------------
std::optional<Witness> interior_formula_failure(LatticeContext& c, const LatMap& f) {
  LatMap a = interior(f);
  LatMap b = raney_join(compose(f, c.omega()));
  if (!(a == b)) return Witness{{}, {vals(f), vals(a), vals(b)}, "int(f) != ∨(f∘ω)"};
  LatMap d = raney_join(f);
  LatMap e = interior(compose(f, c.o()));
  if (!(d == e)) return Witness{{}, {vals(f), vals(d), vals(e)}, "∨f != int(f∘o)"};
  return std::nullopt;
}

CellResult t9(LatticeContext& c) {
  if (!c.cd()) return skip("applies to completely distributive lattices");
  const std::vector<LatMap> pool = homset_and_samples(c);
  for (const LatMap& f : pool)
    if (auto w = interior_formula_failure(c, f)) return fail("T9", std::move(*w));
  return pass("T9", std::to_string(pool.size()) + " monotone maps");
}

CellResult t9n(LatticeContext& c) {
  if (c.cd()) return skip("applies to lattices that are not completely distributive");
  std::vector<LatMap> pool{c.id()};
  for (const LatMap& f : homset_and_samples(c)) pool.push_back(f);
  for (const LatMap& f : pool) {
    if (auto w = interior_formula_failure(c, f)) {
      CellResult out = pass("T9n", "counterexample found");
      out.result.witness = std::move(*w);
      return out;
    }
  }
  return fail("T9n", Witness{{}, {}, "interior formulas held for every tried map"});
}

// T10 ------------------------------------------------------------------------
CellResult t10(LatticeContext& c) {
  const Lattice& L = c.L;
  const std::vector<LatMap> mono = homset_and_samples(c);
  std::vector<LatMap> any = mono;
  std::mt19937_64 rng(c.seed_for(0x10));
  for (int i = 0; i < 64; ++i) {
    std::vector<Elem> v(L.size());
    for (Elem& e : v) e = static_cast<Elem>(rng() % L.size());
    any.emplace_back(L, L, std::move(v));
  }
  std::vector<LatMap> joins;
  joins.reserve(any.size());
  for (const LatMap& g : any) joins.push_back(raney_join(g));

  std::string cov1;
  auto w = over_pairs(any.size(), any.size(), c.opt.pair_budget, c.seed_for(0x11), cov1,
                      [&](std::size_t i, std::size_t j) -> std::optional<Witness> {
                        if (pointwise_leq(any[i], any[j]) && !pointwise_leq(joins[i], joins[j]))
                          return Witness{{}, {vals(any[i]), vals(any[j])}, "f<=g but ∨f !<= ∨g"};
                        return std::nullopt;
                      });
  if (w) return fail("T10", std::move(*w));

  std::string cov2;
  w = over_pairs(mono.size(), any.size(), c.opt.pair_budget, c.seed_for(0x12), cov2,
                 [&](std::size_t i, std::size_t j) -> std::optional<Witness> {
                   const LatMap& f = mono[i];
                   LatMap lhs = raney_join(compose(f, any[j]));
                   LatMap rhs = compose(f, joins[j]);
                   if (!pointwise_leq(lhs, rhs)) return Witness{{}, {vals(f), vals(any[j])}, "∨(f∘g) !<= f∘∨g"};
                   if (f.classify().join_continuous && !(lhs == rhs))
                     return Witness{{}, {vals(f), vals(any[j])}, "∨(f∘g) != f∘∨g for join-continuous f"};
                   return std::nullopt;
                 });
  if (w) return fail("T10", std::move(*w));

  for (const LatMap& f : *c.Q()) {
    LatMap lhs = left_adjoint(raney_meet(f));
    LatMap rhs = raney_join(right_adjoint(f));
    if (!(lhs == rhs)) return fail("T10", Witness{{}, {vals(f), vals(lhs), vals(rhs)}, "ℓ(∧f) != ∨(ρf)"});
  }
  return pass("T10", "monotonicity " + cov1 + "; composition " + cov2);
}

// T11 ------------------------------------------------------------------------
CellResult t11(LatticeContext& c) {
  const bool mix = pointwise_leq(c.o(), c.id());
  const bool comix = pointwise_leq(c.id(), c.o());
  const bool chain = is_chain(c.L);
  const bool smooth = completely_join_primes_by_definition(c.L).empty();
  if (mix != chain) return fail("T11", Witness{{}, {vals(c.o())}, mix ? "o <= id on a non-chain" : "o !<= id on a chain"});
  if (comix != smooth) {
    return fail("T11", Witness{{}, {vals(c.o())}, comix ? "id <= o with a join-prime" : "id !<= o without join-primes"});
  }
  return pass("T11", std::string("mix ") + (mix ? "holds" : "fails") + ", comix " + (comix ? "holds" : "fails"));
}

// T12 / T12n -----------------------------------------------------------------
std::optional<Witness> big_meet_failure(const LatMap& f, const LatMap& g) {
  const LatMap fs[] = {f, g};
  LatMap bm = big_meet(fs);
  LatMap ref = interior(pointwise_meet(f, g));
  if (!(bm == ref)) return Witness{{}, {vals(f), vals(g), vals(bm), vals(ref)}, "big meet != int(f∧g)"};
  return std::nullopt;
}

CellResult t12(LatticeContext& c) {
  if (!c.cd()) return skip("applies to completely distributive lattices");
  const HomsetEnumeration& Q = *c.Q();
  std::string cov;
  auto w = over_pairs(Q.size(), Q.size(), c.opt.pair_budget, c.seed_for(0x12C), cov,
                      [&](std::size_t i, std::size_t j) -> std::optional<Witness> {
                        if (auto bad = big_meet_failure(Q[i], Q[j])) return bad;
                        if (Q.size() > kGlbCheckLimit) return std::nullopt;
                        const LatMap fs[] = {Q[i], Q[j]};
                        LatMap bm = big_meet(fs);
                        for (const LatMap& k : Q)
                          if (pointwise_leq(k, Q[i]) && pointwise_leq(k, Q[j]) && !pointwise_leq(k, bm))
                            return Witness{{}, {vals(Q[i]), vals(Q[j]), vals(k)}, "lower bound not below big meet"};
                        return std::nullopt;
                      });
  if (w) return fail("T12", std::move(*w));
  return pass("T12", cov);
}

CellResult t12n(LatticeContext& c) {
  if (c.cd()) return skip("applies to lattices that are not completely distributive");
  std::optional<Witness> w = big_meet_failure(c.id(), c.id());
  const HomsetEnumeration& Q = *c.Q();
  for (std::size_t i = 0; !w && i < Q.size(); ++i)
    for (std::size_t j = 0; !w && j < Q.size(); ++j) w = big_meet_failure(Q[i], Q[j]);
  if (!w) return fail("T12n", Witness{{}, {}, "big meet agreed with int(f∧g) on every pair"});
  CellResult out = pass("T12n", "counterexample found");
  out.result.witness = std::move(w);
  return out;
}

// T13 ------------------------------------------------------------------------
CellResult t13(LatticeContext& c) {
  const bool cd = c.cd();
  const bool axioms = c.negation_axioms().holds;
  const std::vector<LatMap> found = cyclic_dualizing_elements(*c.Q());
  const bool exists = !found.empty();
  if (cd != axioms || cd != exists) {
    return fail("T13", Witness{{}, {}, std::string("CD=") + (cd ? "T" : "F") + " axioms=" + (axioms ? "T" : "F") +
                                           " cyclic-dualizing=" + (exists ? "T" : "F")});
  }
  if (exists && (found.size() != 1 || !(found[0] == c.o()))) {
    Witness w{{}, {}, "cyclic-dualizing elements other than o"};
    for (const LatMap& m : found) w.maps.push_back(vals(m));
    return fail("T13", std::move(w));
  }
  return pass("T13", cd ? "all three sides hold; o is the unique cyclic-dualizing element" : "all three sides fail");
}

// T14 ------------------------------------------------------------------------
CellResult t14(LatticeContext& c) {
  if (!c.cd()) return skip("applies to completely distributive lattices");
  AxiomOptions a;
  a.parts = axiom::kResiduals | axiom::kTriangle;
  a.tuple_budget = c.opt.pair_budget;
  a.seed = c.seed_for(0x14);
  a.cap = c.opt.homset_cap;
  CellResult r = from(check_involutive_axioms(c.L, c.L, a));
  r.result.name = "T14";
  return r;
}

// T15 ------------------------------------------------------------------------
CellResult t15(LatticeContext& c) {
  if (!c.cd()) return skip("applies to completely distributive lattices");
  if (c.L.size() > kHomsetLatticeLimit) return skip("homset lattice checked only for |L| <= 3");
  CheckResult r = distributive_oracle(homset_lattice(*c.Q()));
  r.name = "T15";
  return from(std::move(r));
}

CellResult timed_cell(const TheoremCheck& check, LatticeContext& ctx) {
  const auto start = std::chrono::steady_clock::now();
  CellResult cell = check.run(ctx);
  cell.result.elapsed = std::chrono::steady_clock::now() - start;
  return cell;
}

bool needs_homset(const std::string& id) { return id != "T1" && id != "T2" && id != "T11"; }

}  // namespace

const std::vector<TheoremCheck>& check_registry() {
  static const std::vector<TheoremCheck> registry = {
      {"T1", "o_L is the pointwise join of c_t∘a_t over all t", "all lattices", t1},
      {"T2", "the interior of α_x is a_{o(x)}", "all lattices", t2},
      {"T3", "every cyclic element of Q(L) is c_⊤ or o_L", "all lattices", t3},
      {"T4", "c_⊤ is not dualizing", "nontrivial lattices", t4},
      {"T5", "if o_L is cyclic and differs from c_⊤ then L is completely distributive", "all lattices", t5},
      {"T6", "Q(L) with f ↦ ∨(ρf) satisfies the involution and negation axioms", "CD lattices", t6},
      {"T6n", "the involution or negation axioms fail", "non-CD lattices", t6n},
      {"T7", "the central elements of Q(L) are exactly id and c_⊥", "all lattices", t7},
      {"T8", "∨(∧f) = f for every join-continuous f", "CD lattices", t8},
      {"T8n", "some join-continuous f has ∨(∧f) != f", "non-CD lattices", t8n},
      {"T9", "int(f) = ∨(f∘ω) and ∨f = int(f∘o) for monotone f", "CD lattices", t9},
      {"T9n", "some monotone f breaks int(f) = ∨(f∘ω) or ∨f = int(f∘o)", "non-CD lattices", t9n},
      {"T10", "∨ is monotone, ∨(f∘g) <= f∘∨g with equality for join-continuous f, and ℓ(∧f) = ∨(ρf)",
       "all lattices", t10},
      {"T11", "o <= id iff L is a chain; id <= o iff L has no completely join-prime element", "all lattices", t11},
      {"T12", "the big-meet formula gives int(f∧g), the infimum in Q(L)", "CD lattices", t12},
      {"T12n", "the big-meet formula differs from int(f∧g) for some family", "non-CD lattices", t12n},
      {"T13", "CD iff the axioms hold iff Q(L) has a cyclic dualizing element, which is then o_L", "all lattices",
       t13},
      {"T14", "g\\h = (h*∘g)*, h/f = (f∘h*)*, and the triangle rotation", "CD lattices", t14},
      {"T15", "the homset lattice Q(L) is distributive", "CD lattices with |L| <= 3", t15},
  };
  return registry;
}

// Corpus -----------------------------------------------------------------------

std::vector<Lattice> random_corpus(std::uint64_t first_seed, std::size_t count) {
  std::vector<Lattice> out;
  for (std::uint64_t s = first_seed; s < first_seed + count; ++s)
    out.push_back(generate(gen::Random{s, static_cast<std::size_t>(2 + s % 6)}));
  return out;
}

std::vector<Lattice> builtin_corpus() {
  std::vector<Lattice> out;
  for (std::size_t n = 1; n <= 6; ++n) out.push_back(generate(gen::Chain{n}));
  for (std::size_t k = 1; k <= 3; ++k) out.push_back(generate(gen::Boolean{k}));
  out.push_back(generate(gen::M3{}));
  out.push_back(generate(gen::N5{}));
  std::map<std::size_t, std::size_t> per_size;
  for (const Poset& p : all_posets_up_to_iso(4)) {
    std::size_t idx = per_size[p.size()]++;
    out.push_back(downset_lattice(p, "down-p" + std::to_string(p.size()) + "-" + std::to_string(idx)));
  }
  out.push_back(generate(gen::Product{2, 3}));
  for (Lattice& L : random_corpus(1, 50)) out.push_back(std::move(L));
  return out;
}

std::vector<std::vector<Elem>> random_monotone_maps(const Lattice& L, std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::vector<Elem>> out;
  const std::size_t n = L.size();
  std::vector<Elem> r(n);
  for (std::size_t i = 0; i < count; ++i) {
    for (Elem& e : r) e = static_cast<Elem>(rng() % n);
    const bool by_join = (rng() & 1U) != 0;
    std::vector<Elem> f(n);
    for (Elem x : L.elements()) {
      f[x] = by_join ? L.bottom() : L.top();
      for (Elem t : L.elements()) {
        if (by_join && L.leq(t, x)) f[x] = L.join(f[x], r[t]);
        if (!by_join && L.leq(x, t)) f[x] = L.meet(f[x], r[t]);
      }
    }
    out.push_back(std::move(f));
  }
  return out;
}

// Runner -----------------------------------------------------------------------

SuiteReport run_suite(std::span<const Lattice> corpus, const SuiteOptions& options) {
  const auto& registry = check_registry();
  std::vector<const TheoremCheck*> selected;
  if (options.checks.empty()) {
    for (const auto& c : registry) selected.push_back(&c);
  } else {
    for (const std::string& id : options.checks) {
      auto it = std::find_if(registry.begin(), registry.end(), [&](const TheoremCheck& c) { return c.id == id; });
      if (it == registry.end()) throw Error(ErrorKind::ParseError, "unknown check id '" + id + "'");
      selected.push_back(&*it);
    }
  }

  SuiteReport report;
  report.seed = options.seed;
  for (const Lattice& L : corpus) report.corpus.push_back(L.name());
  for (const TheoremCheck* c : selected) report.checks.push_back(c->id);
  report.results.assign(selected.size(), std::vector<CellResult>(corpus.size()));

  auto run_lattice = [&](std::size_t li) {
    LatticeContext ctx(corpus[li], options, li);
    for (std::size_t ci = 0; ci < selected.size(); ++ci) {
      const TheoremCheck& check = *selected[ci];
      CellResult cell;
      try {
        if (needs_homset(check.id) && ctx.Q() == nullptr) {
          cell = unexpected_skip(ctx.q_error());
        } else {
          cell = timed_cell(check, ctx);
        }
      } catch (const Error& e) {
        cell = e.kind() == ErrorKind::CapExceeded ? unexpected_skip(e.what())
                                                  : fail(check.id, Witness{{}, {}, std::string("error: ") + e.what()});
      }
      if (cell.result.name.empty()) cell.result.name = check.id;
      report.results[ci][li] = std::move(cell);
    }
  };

  unsigned threads = options.threads != 0 ? options.threads : std::max(1U, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, corpus.size()));
  if (threads <= 1) {
    for (std::size_t li = 0; li < corpus.size(); ++li) run_lattice(li);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr first_error;
    std::mutex error_mutex;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t li; (li = next.fetch_add(1)) < corpus.size();) {
          try {
            run_lattice(li);
          } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!first_error) first_error = std::current_exception();
          }
        }
      });
    }
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
  }

  SuiteSummary& s = report.summary;
  for (std::size_t ci = 0; ci < selected.size(); ++ci) {
    for (const CellResult& cell : report.results[ci]) {
      switch (cell.status) {
        case Status::Pass: ++s.pass; break;
        case Status::Fail: ++s.fail; break;
        case Status::Skip: ++s.skip; break;
      }
      if (cell.unexpected) ++s.unexpected_skip;
      if (cell.vacuous) ++s.vacuous;
      if (selected[ci]->id == "T5" && cell.status != Status::Skip) {
        ++s.t5_premise_evaluated;
        if (!cell.vacuous) ++s.t5_premise_triggered;
      }
    }
  }
  return report;
}

}  // namespace qlat
