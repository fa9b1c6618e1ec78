#include "qlat/quantaloid.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <string>

#include "qlat/error.hpp"

namespace qlat {

namespace {

bool lex_less(std::span<const Elem> a, std::span<const Elem> b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

std::vector<Elem> values_of(const LatMap& f) { return {f.values().begin(), f.values().end()}; }

void require_endo(const HomsetEnumeration& Q, const char* op) {
  if (!Q.is_endo()) {
    throw Error(ErrorKind::NotEndoHomset, std::string(op) + " on hom(" + Q.dom().name() + ", " +
                                              Q.cod().name() + ")");
  }
}

void require_member(const LatMap& f, const HomsetEnumeration& Q) {
  if (!(f.dom() == Q.dom()) || !(f.cod() == Q.cod())) {
    throw Error(ErrorKind::DomainMismatch, "map does not belong to the homset");
  }
  if (!f.classify().join_continuous) throw Error(ErrorKind::NotContinuous, "element of Q must be join-continuous");
}

void require_join_continuous(const LatMap& f, const char* op) {
  if (!f.classify().join_continuous) {
    throw Error(ErrorKind::NotContinuous, std::string(op) + " needs join-continuous arguments");
  }
}

// c_x and a_x for every x, as positions in Q; cheap necessary tests for the
// element filters before the full quantification.
std::vector<std::size_t> probe_indices(const HomsetEnumeration& Q) {
  std::vector<std::size_t> out;
  for (Elem x : Q.dom().elements()) {
    for (SpecialKind k : {SpecialKind::Const, SpecialKind::Annihilator}) {
      if (auto i = Q.index_of(special(Q.dom(), k, x))) out.push_back(*i);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool cyclic_at(const LatMap& alpha, const LatMap& f) { return residual_left(f, alpha) == residual_right(alpha, f); }

bool dualizing_at(const LatMap& alpha, const LatMap& f) {
  return residual_left(residual_right(alpha, f), alpha) == f && residual_right(alpha, residual_left(f, alpha)) == f;
}

bool central_at(const LatMap& beta, const LatMap& x) { return compose(beta, x) == compose(x, beta); }

bool codualizing_at(const LatMap& beta, const LatMap& x) { return residual_left(beta, compose(beta, x)) == x; }

using Pointwise = bool (*)(const LatMap&, const LatMap&);

CheckResult quantify(const char* name, const LatMap& subject, const HomsetEnumeration& Q, Pointwise test) {
  require_endo(Q, name);
  require_member(subject, Q);
  return timed([&] {
    for (const LatMap& f : Q) {
      if (!test(subject, f)) {
        return CheckResult::fail(name, Witness{{}, {values_of(subject), values_of(f)}, "fails at the second map"});
      }
    }
    return CheckResult::pass(name, "exhaustive over " + std::to_string(Q.size()) + " maps");
  });
}

std::vector<LatMap> filter(const HomsetEnumeration& Q, Pointwise test) {
  const std::vector<std::size_t> probes = probe_indices(Q);
  std::vector<LatMap> out;
  for (const LatMap& candidate : Q) {
    bool ok = std::all_of(probes.begin(), probes.end(), [&](std::size_t p) { return test(candidate, Q[p]); });
    if (ok) ok = std::all_of(Q.begin(), Q.end(), [&](const LatMap& f) { return test(candidate, f); });
    if (ok) out.push_back(candidate);
  }
  return out;
}

}  // namespace

// Enumeration ----------------------------------------------------------------

std::optional<std::size_t> HomsetEnumeration::index_of(std::span<const Elem> values) const {
  auto it = std::lower_bound(maps_.begin(), maps_.end(), values,
                             [](const LatMap& m, std::span<const Elem> v) { return lex_less(m.values(), v); });
  if (it == maps_.end() || !std::equal(values.begin(), values.end(), it->values().begin(), it->values().end())) {
    return std::nullopt;
  }
  return static_cast<std::size_t>(it - maps_.begin());
}

HomsetEnumeration enumerate_homset(const Lattice& L, const Lattice& M, std::size_t cap) {
  const auto ji = L.join_irreducibles();
  const std::size_t k = ji.size();
  const std::size_t n = L.size();

  // earlier[p]: positions q < p with ji[q] < ji[p]; below[x]: positions with ji[q] <= x.
  std::vector<std::vector<std::size_t>> earlier(k);
  std::vector<std::vector<std::size_t>> below(n);
  for (std::size_t p = 0; p < k; ++p) {
    for (std::size_t q = 0; q < p; ++q)
      if (L.leq(ji[q], ji[p])) earlier[p].push_back(q);
    for (Elem x : L.elements())
      if (L.leq(ji[p], x)) below[x].push_back(p);
  }

  std::vector<LatMap> maps;
  std::vector<Elem> assigned(k);
  std::vector<Elem> values(n);
  std::size_t leaves = 0;
  const std::size_t leaf_cap = cap > (SIZE_MAX / 64) ? SIZE_MAX : cap * 64;

  std::function<void(std::size_t)> extend = [&](std::size_t p) {
    if (p == k) {
      if (++leaves > leaf_cap) {
        throw Error(ErrorKind::CapExceeded, "search over hom(" + L.name() + ", " + M.name() + ") exceeds " +
                                                std::to_string(leaf_cap) + " candidates");
      }
      for (Elem x : L.elements()) {
        Elem acc = M.bottom();
        for (std::size_t q : below[x]) acc = M.join(acc, assigned[q]);
        values[x] = acc;
      }
      for (Elem x : L.elements())
        for (Elem y = x + 1; y < n; ++y)
          if (values[L.join(x, y)] != M.join(values[x], values[y])) return;
      if (maps.size() == cap) {
        throw Error(ErrorKind::CapExceeded, "hom(" + L.name() + ", " + M.name() + ") has more than " +
                                                std::to_string(cap) + " maps");
      }
      maps.emplace_back(L, M, values);
      return;
    }
    for (Elem m : M.elements()) {
      bool monotone = std::all_of(earlier[p].begin(), earlier[p].end(),
                                  [&](std::size_t q) { return M.leq(assigned[q], m); });
      if (!monotone) continue;
      assigned[p] = m;
      extend(p + 1);
    }
  };
  extend(0);

  std::sort(maps.begin(), maps.end(), [](const LatMap& a, const LatMap& b) { return lex_less(a.values(), b.values()); });
  return HomsetEnumeration(L, M, std::move(maps));
}

UnitPair units(const Lattice& L) { return UnitPair{LatMap::identity(L), special(L, SpecialKind::O)}; }

// Residuals, star, dual tensor -------------------------------------------------

LatMap residual_left(const LatMap& g, const LatMap& h) {
  if (!(g.cod() == h.cod())) throw Error(ErrorKind::DomainMismatch, "g\\h needs a shared codomain");
  require_join_continuous(g, "residual_left");
  require_join_continuous(h, "residual_left");
  return interior(compose(right_adjoint(g), h));
}

LatMap residual_right(const LatMap& h, const LatMap& f) {
  if (!(h.dom() == f.dom())) throw Error(ErrorKind::DomainMismatch, "h/f needs a shared domain");
  require_join_continuous(h, "residual_right");
  require_join_continuous(f, "residual_right");
  const Lattice& L = f.dom();
  const Lattice& M = f.cod();
  const Lattice& N = h.cod();
  std::vector<Elem> bound(M.size());
  for (Elem y : M.elements()) {
    Elem acc = N.top();
    for (Elem x : L.elements())
      if (M.leq(y, f(x))) acc = N.meet(acc, h(x));
    bound[y] = acc;
  }
  return interior(LatMap(M, N, std::move(bound)));
}

LatMap star(const LatMap& f) { return raney_join(right_adjoint(f)); }

LatMap dual_tensor(const LatMap& g, const LatMap& f) {
  if (!(f.cod() == g.dom())) throw Error(ErrorKind::DomainMismatch, "g ⊕ f needs cod f = dom g");
  return star(compose(star(f), star(g)));
}

LatMap dual_tensor_raney(const LatMap& g, const LatMap& f) {
  if (!(f.cod() == g.dom())) throw Error(ErrorKind::DomainMismatch, "g ⊕ f needs cod f = dom g");
  return raney_join(compose(raney_meet(g), raney_meet(f)));
}

// Detectors --------------------------------------------------------------------

CheckResult is_cyclic(const LatMap& alpha, const HomsetEnumeration& Q) {
  return quantify("cyclic", alpha, Q, cyclic_at);
}

CheckResult is_dualizing(const LatMap& alpha, const HomsetEnumeration& Q) {
  return quantify("dualizing", alpha, Q, dualizing_at);
}

CheckResult is_central(const LatMap& beta, const HomsetEnumeration& Q) {
  return quantify("central", beta, Q, central_at);
}

CheckResult is_codualizing(const LatMap& beta, const HomsetEnumeration& Q) {
  return quantify("codualizing", beta, Q, codualizing_at);
}

std::vector<LatMap> cyclic_elements(const HomsetEnumeration& Q) {
  require_endo(Q, "cyclic_elements");
  return filter(Q, cyclic_at);
}

std::vector<LatMap> central_elements(const HomsetEnumeration& Q) {
  require_endo(Q, "central_elements");
  return filter(Q, central_at);
}

std::vector<LatMap> cyclic_dualizing_elements(const HomsetEnumeration& Q) {
  std::vector<LatMap> out;
  for (LatMap& a : cyclic_elements(Q)) {
    if (std::all_of(Q.begin(), Q.end(), [&](const LatMap& f) { return dualizing_at(a, f); })) out.push_back(std::move(a));
  }
  return out;
}

// Involutive axioms ------------------------------------------------------------

namespace {

struct Hom {
  std::size_t from;
  std::size_t to;
  HomsetEnumeration maps;
  std::vector<LatMap> stars;
};

// Visits index tuples over the given sizes: all of them when the product fits
// the budget, otherwise `samples` seeded draws. Returns the first witness.
class TupleRunner {
 public:
  TupleRunner(const AxiomOptions& opt, std::mt19937_64& rng) : opt_(opt), rng_(rng) {}

  template <class Visit>
  std::optional<Witness> run(std::span<const std::size_t> sizes, Visit visit) {
    std::size_t total = 1;
    bool overflow = false;
    for (std::size_t s : sizes) {
      if (s == 0) return std::nullopt;
      if (total > opt_.tuple_budget / s + 1) overflow = true;
      total = overflow ? total : total * s;
    }
    std::vector<std::size_t> idx(sizes.size(), 0);
    if (!overflow && total <= opt_.tuple_budget) {
      exhaustive_ += total;
      for (std::size_t t = 0; t < total; ++t) {
        std::size_t rest = t;
        for (std::size_t d = sizes.size(); d-- > 0;) {
          idx[d] = rest % sizes[d];
          rest /= sizes[d];
        }
        if (auto w = visit(std::span<const std::size_t>(idx))) return w;
      }
      return std::nullopt;
    }
    sampled_ += opt_.samples;
    for (std::size_t t = 0; t < opt_.samples; ++t) {
      for (std::size_t d = 0; d < sizes.size(); ++d) idx[d] = static_cast<std::size_t>(rng_() % sizes[d]);
      if (auto w = visit(std::span<const std::size_t>(idx))) return w;
    }
    return std::nullopt;
  }

  std::string coverage() const {
    if (sampled_ == 0) return "exhaustive over " + std::to_string(exhaustive_) + " tuples";
    return "exhaustive over " + std::to_string(exhaustive_) + " tuples, sampled " + std::to_string(sampled_);
  }

 private:
  const AxiomOptions& opt_;
  std::mt19937_64& rng_;
  std::size_t exhaustive_ = 0;
  std::size_t sampled_ = 0;
};

Witness make_witness(std::string note, std::initializer_list<const LatMap*> maps) {
  Witness w;
  w.note = std::move(note);
  for (const LatMap* m : maps) w.maps.push_back(values_of(*m));
  return w;
}

}  // namespace

CheckResult check_involutive_axioms(const Lattice& L, const Lattice& M, const AxiomOptions& opt) {
  return timed([&]() -> CheckResult {
    const std::string name = "involutive-axioms";
    std::vector<Lattice> objects{L};
    if (!(L == M)) objects.push_back(M);
    const std::size_t k = objects.size();

    std::vector<LatMap> zero;
    for (const Lattice& X : objects) zero.push_back(special(X, SpecialKind::O));

    std::vector<Hom> homs;
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = 0; b < k; ++b) {
        Hom h{a, b, enumerate_homset(objects[a], objects[b], opt.cap), {}};
        h.stars.reserve(h.maps.size());
        for (const LatMap& f : h.maps) h.stars.push_back(star(f));
        homs.push_back(std::move(h));
      }
    auto hom = [&](std::size_t a, std::size_t b) -> const Hom& { return homs[a * k + b]; };
    auto label = [&](const Hom& h) {
      return "hom(" + objects[h.from].name() + "," + objects[h.to].name() + ")";
    };

    std::mt19937_64 rng(opt.seed);
    TupleRunner runner(opt, rng);
    std::size_t linear = 0;

    if (opt.parts & axiom::kInvolution) {
      for (const Hom& h : homs)
        for (std::size_t i = 0; i < h.maps.size(); ++i) {
          ++linear;
          LatMap back = star(h.stars[i]);
          if (!(back == h.maps[i])) {
            return CheckResult::fail(name, make_witness("(f*)* != f in " + label(h), {&h.maps[i], &back}));
          }
        }
    }

    if (opt.parts & axiom::kNegation) {
      for (const Hom& h : homs) {
        const LatMap& zero_x = zero[h.from];
        const LatMap& zero_y = zero[h.to];
        // {f : f∘g* <= o_Y} is the principal downset of o_Y/g*, and
        // {f : g*∘f <= o_X} that of g*\o_X; both must equal the downset of g.
        for (std::size_t i = 0; i < h.maps.size(); ++i) {
          ++linear;
          const LatMap& g = h.maps[i];
          LatMap via_right = residual_right(zero_y, h.stars[i]);
          if (!(via_right == g)) {
            return CheckResult::fail(name, make_witness("o/g* != g in " + label(h), {&g, &via_right}));
          }
          LatMap via_left = residual_left(h.stars[i], zero_x);
          if (!(via_left == g)) {
            return CheckResult::fail(name, make_witness("g*\\o != g in " + label(h), {&g, &via_left}));
          }
        }
        const std::size_t sizes[] = {h.maps.size(), h.maps.size()};
        auto w = runner.run(sizes, [&](std::span<const std::size_t> ix) -> std::optional<Witness> {
          const LatMap& f = h.maps[ix[0]];
          const LatMap& g = h.maps[ix[1]];
          const LatMap& gs = h.stars[ix[1]];
          const bool le = pointwise_leq(f, g);
          const bool right = pointwise_leq(compose(f, gs), zero_y);
          const bool left = pointwise_leq(compose(gs, f), zero_x);
          if (le == right && le == left) return std::nullopt;
          return make_witness("f<=g, f∘g*<=o, g*∘f<=o disagree in " + label(h), {&f, &g});
        });
        if (w) return CheckResult::fail(name, std::move(*w));
      }
    }

    if (opt.parts & axiom::kResiduals) {
      for (std::size_t x = 0; x < k; ++x)
        for (std::size_t y = 0; y < k; ++y)
          for (std::size_t z = 0; z < k; ++z) {
            // g\h with g: Y->Z, h: X->Z.
            const Hom& hg = hom(y, z);
            const Hom& hh = hom(x, z);
            const std::size_t s1[] = {hg.maps.size(), hh.maps.size()};
            auto w = runner.run(s1, [&](std::span<const std::size_t> ix) -> std::optional<Witness> {
              const LatMap& g = hg.maps[ix[0]];
              const LatMap& h = hh.maps[ix[1]];
              LatMap lhs = residual_left(g, h);
              LatMap rhs = star(compose(hh.stars[ix[1]], g));
              if (lhs == rhs) return std::nullopt;
              return make_witness("g\\h != (h*∘g)*", {&g, &h, &lhs, &rhs});
            });
            if (w) return CheckResult::fail(name, std::move(*w));
            // h/f with f: X->Y, h: X->Z.
            const Hom& hf = hom(x, y);
            const std::size_t s2[] = {hh.maps.size(), hf.maps.size()};
            w = runner.run(s2, [&](std::span<const std::size_t> ix) -> std::optional<Witness> {
              const LatMap& h = hh.maps[ix[0]];
              const LatMap& f = hf.maps[ix[1]];
              LatMap lhs = residual_right(h, f);
              LatMap rhs = star(compose(f, hh.stars[ix[0]]));
              if (lhs == rhs) return std::nullopt;
              return make_witness("h/f != (f∘h*)*", {&h, &f, &lhs, &rhs});
            });
            if (w) return CheckResult::fail(name, std::move(*w));
          }
    }

    if (opt.parts & axiom::kTriangle) {
      for (std::size_t x = 0; x < k; ++x)
        for (std::size_t y = 0; y < k; ++y)
          for (std::size_t z = 0; z < k; ++z) {
            const Hom& hf = hom(x, y);
            const Hom& hg = hom(y, z);
            const Hom& hh = hom(x, z);
            const std::size_t sizes[] = {hf.maps.size(), hg.maps.size(), hh.maps.size()};
            auto w = runner.run(sizes, [&](std::span<const std::size_t> ix) -> std::optional<Witness> {
              const LatMap& f = hf.maps[ix[0]];
              const LatMap& g = hg.maps[ix[1]];
              const LatMap& h = hh.maps[ix[2]];
              const LatMap& fs = hf.stars[ix[0]];
              const LatMap& gs = hg.stars[ix[1]];
              const LatMap& hs = hh.stars[ix[2]];
              const bool a = pointwise_leq(compose(g, f), h);
              const bool b = pointwise_leq(compose(hs, g), fs);
              const bool c = pointwise_leq(compose(f, hs), gs);
              if (a == b && a == c) return std::nullopt;
              return make_witness("g∘f<=h, h*∘g<=f*, f∘h*<=g* disagree", {&f, &g, &h});
            });
            if (w) return CheckResult::fail(name, std::move(*w));
          }
    }

    return CheckResult::pass(name, std::to_string(linear) + " linear checks; " + runner.coverage());
  });
}

Lattice homset_lattice(const HomsetEnumeration& Q) {
  const std::size_t n = Q.size();
  if (n > 4096) throw Error(ErrorKind::TooLarge, "homset lattice with " + std::to_string(n) + " maps");
  std::vector<std::uint8_t> leq(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) leq[a * n + b] = pointwise_leq(Q[a], Q[b]) ? 1 : 0;
  return build_lattice(Poset::from_relation(n, std::move(leq)), "Q(" + Q.dom().name() + ")");
}

}  // namespace qlat
