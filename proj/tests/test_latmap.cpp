#include <doctest.h>

#include <random>
#include <thread>

#include "oracles.hpp"
#include "qlat/cdcheck.hpp"
#include "qlat/error.hpp"
#include "qlat/latmap.hpp"
#include "qlat/propsuite.hpp"
#include "qlat/quantaloid.hpp"

using namespace qlat;
using V = std::vector<Elem>;

namespace {

V vals(const LatMap& f) { return V(f.values().begin(), f.values().end()); }

const std::vector<Lattice>& corpus() {
  static const std::vector<Lattice> c = builtin_corpus();
  return c;
}

Lattice C(std::size_t n) { return generate(gen::Chain{n}); }

LatMap sp(const Lattice& L, SpecialKind k, Elem x = 0) { return special(L, k, x); }

// Oracle versions of the named maps, straight from their definitions.
V oracle_o(const Lattice& L) {
  V r(L.size());
  for (Elem x : L.elements()) {
    std::uint64_t m = 0;
    for (Elem t : L.elements())
      if (!L.leq(x, t)) m |= 1ULL << t;
    r[x] = oracle::sup(L, m);
  }
  return r;
}
V oracle_omega(const Lattice& L) {
  V r(L.size());
  for (Elem y : L.elements()) {
    std::uint64_t m = 0;
    for (Elem t : L.elements())
      if (!L.leq(t, y)) m |= 1ULL << t;
    r[y] = oracle::inf(L, m);
  }
  return r;
}
V oracle_raney_join(const Lattice& L, const Lattice& M, const V& f) {
  V r(L.size());
  for (Elem x : L.elements()) {
    std::uint64_t m = 0;
    for (Elem t : L.elements())
      if (!L.leq(x, t)) m |= 1ULL << f[t];
    r[x] = oracle::sup(M, m);
  }
  return r;
}
V oracle_raney_meet(const Lattice& L, const Lattice& M, const V& f) {
  V r(L.size());
  for (Elem x : L.elements()) {
    std::uint64_t m = 0;
    for (Elem t : L.elements())
      if (!L.leq(t, x)) m |= 1ULL << f[t];
    r[x] = oracle::inf(M, m);
  }
  return r;
}
bool oracle_monotone(const Lattice& L, const Lattice& M, const V& f) {
  for (Elem a : L.elements())
    for (Elem b : L.elements())
      if (L.leq(a, b) && !M.leq(f[a], f[b])) return false;
  return true;
}
bool oracle_meet_continuous(const Lattice& L, const Lattice& M, const V& f) {
  for (std::uint64_t m = 0; m < (1ULL << L.size()); ++m) {
    std::uint64_t image = 0;
    for (Elem s : L.elements())
      if ((m >> s) & 1U) image |= 1ULL << f[s];
    if (f[oracle::inf(L, m)] != oracle::inf(M, image)) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("classify examples") {
  Lattice b2 = generate(gen::Boolean{2});
  CHECK(classify(LatMap::identity(b2)) == MapClass{true, true, true});
  LatMap alpha_top(b2, b2, {0, 0, 0, 3});
  CHECK(alpha_top == sp(b2, SpecialKind::Alpha, 3));
  CHECK(classify(alpha_top) == MapClass{true, false, true});
  LatMap c1(C(3), C(3), {0, 1, 1});
  CHECK(c1 == sp(C(3), SpecialKind::Const, 1));
  CHECK(classify(c1).join_continuous);
}

TEST_CASE("classify agrees with the all-subsets definitions on every function, |L| <= 4") {
  for (const Lattice& L : corpus()) {
    if (L.size() > 4) continue;
    CAPTURE(L.name());
    const auto sups = oracle::all_sups(L);
    oracle::for_each_function(L, L, [&](const V& f) {
      MapClass c = classify(LatMap(L, L, f));
      REQUIRE(c.monotone == oracle_monotone(L, L, f));
      REQUIRE(c.join_continuous == oracle::join_continuous(L, L, f, sups));
      REQUIRE(c.meet_continuous == oracle_meet_continuous(L, L, f));
    });
  }
}

TEST_CASE("LatMap validation and the shared-type checks") {
  Lattice c3 = C(3);
  CHECK_THROWS_AS(LatMap(c3, c3, {0, 1}), Error);
  CHECK_THROWS_AS(LatMap(c3, c3, {0, 1, 3}), Error);
  LatMap f(c3, C(2), {0, 1, 1});
  CHECK_THROWS_AS(compose(f, f), Error);
  CHECK_THROWS_AS(pointwise_leq(f, LatMap::identity(c3)), Error);
  CHECK_THROWS_AS(special(c3, SpecialKind::Alpha, 3), Error);
}

TEST_CASE("compose and pointwise examples on C3") {
  Lattice c3 = C(3);
  LatMap o = sp(c3, SpecialKind::O);
  LatMap ctop = sp(c3, SpecialKind::Const, 2);
  LatMap c1 = sp(c3, SpecialKind::Const, 1);
  LatMap id = LatMap::identity(c3);
  CHECK(compose(id, o) == o);
  CHECK(vals(compose(ctop, o)) == V{0, 0, 2});
  CHECK(classify(compose(c1, o)).join_continuous);
  CHECK(pointwise_join(std::span<const LatMap>(&o, 1)) == o);
  CHECK(vals(pointwise_join(c1, o)) == V{0, 1, 1});
  CHECK(vals(pointwise_meet(id, ctop)) == V{0, 1, 2});
}

TEST_CASE("special maps") {
  Lattice c3 = C(3);
  CHECK(vals(sp(c3, SpecialKind::O)) == V{0, 0, 1});
  CHECK(vals(sp(c3, SpecialKind::Omega)) == V{1, 2, 2});
  Lattice m3 = generate(gen::M3{});
  CHECK(vals(sp(m3, SpecialKind::O)) == V{0, 4, 4, 4, 4});
  CHECK(vals(sp(generate(gen::Boolean{2}), SpecialKind::Alpha, 1)) == V{0, 3, 0, 3});

  for (const Lattice& L : corpus()) {
    CAPTURE(L.name());
    REQUIRE(sp(L, SpecialKind::Nu, L.bottom()) == LatMap::identity(L));
    REQUIRE(sp(L, SpecialKind::Nu, L.top()) == sp(L, SpecialKind::Const, L.bottom()));
    if (L.size() > 12) continue;
    REQUIRE(vals(sp(L, SpecialKind::O)) == oracle_o(L));
    REQUIRE(vals(sp(L, SpecialKind::Omega)) == oracle_omega(L));
    REQUIRE(classify(sp(L, SpecialKind::O)).join_continuous);
    REQUIRE(classify(sp(L, SpecialKind::Omega)).meet_continuous);
    for (Elem x : L.elements()) {
      REQUIRE(classify(sp(L, SpecialKind::Const, x)).join_continuous);
      REQUIRE(classify(sp(L, SpecialKind::Annihilator, x)).join_continuous);
      REQUIRE(classify(sp(L, SpecialKind::Alpha, x)).meet_continuous);
      for (Elem t : L.elements()) {
        REQUIRE(sp(L, SpecialKind::Const, x)(t) == (t == L.bottom() ? L.bottom() : x));
        REQUIRE(sp(L, SpecialKind::Annihilator, x)(t) == (L.leq(t, x) ? L.bottom() : L.top()));
        REQUIRE(sp(L, SpecialKind::Alpha, x)(t) == (L.leq(x, t) ? L.top() : L.bottom()));
        REQUIRE(sp(L, SpecialKind::Nu, x)(t) == (L.leq(t, x) ? L.bottom() : t));
      }
    }
  }
}

TEST_CASE("adjoints: examples and laws on every corpus lattice") {
  Lattice c3 = C(3);
  CHECK(vals(right_adjoint(sp(c3, SpecialKind::O))) == V{1, 2, 2});
  CHECK(right_adjoint(LatMap::identity(c3)) == LatMap::identity(c3));
  CHECK_THROWS_AS(right_adjoint(LatMap(c3, c3, {0, 2, 1})), Error);
  CHECK_THROWS_AS(left_adjoint(sp(c3, SpecialKind::O)), Error);

  for (const Lattice& L : corpus()) {
    CAPTURE(L.name());
    REQUIRE(right_adjoint(sp(L, SpecialKind::O)) == sp(L, SpecialKind::Omega));
    for (Elem x : L.elements()) REQUIRE(right_adjoint(sp(L, SpecialKind::Const, x)) == sp(L, SpecialKind::Alpha, x));
    if (L.size() > 6) continue;
    for (const LatMap& f : enumerate_homset(L, L)) {
      LatMap r = right_adjoint(f);
      for (Elem x : L.elements())
        for (Elem y : L.elements()) REQUIRE(L.leq(f(x), y) == L.leq(x, r(y)));
      REQUIRE(left_adjoint(r) == f);
      REQUIRE(right_adjoint(left_adjoint(r)) == r);
    }
  }
}

TEST_CASE("interior: examples") {
  Lattice b2 = generate(gen::Boolean{2});
  CHECK(interior(sp(b2, SpecialKind::Alpha, 3)) == sp(b2, SpecialKind::Const, 0));
  CHECK(interior(sp(b2, SpecialKind::Alpha, 3)) == sp(b2, SpecialKind::Annihilator, 3));
  Lattice c3 = C(3);
  CHECK(vals(interior(sp(c3, SpecialKind::Alpha, 1))) == V{0, 2, 2});
  CHECK(interior(sp(c3, SpecialKind::O)) == sp(c3, SpecialKind::O));
}

TEST_CASE("interior equals the greatest join-continuous map below f, every function with |L| <= 4") {
  for (const Lattice& L : corpus()) {
    if (L.size() > 4) continue;
    CAPTURE(L.name());
    const auto Q = oracle::homset(L, L);
    oracle::for_each_function(L, L, [&](const V& f) {
      auto expect = oracle::interior(L, L, Q, f);
      REQUIRE(expect.has_value());
      LatMap k = interior(LatMap(L, L, f));
      REQUIRE(vals(k) == *expect);
      REQUIRE(interior(k) == k);
    });
  }
}

TEST_CASE("interior across two lattices against the oracle") {
  const Lattice pairs[][2] = {{C(3), generate(gen::M3{})}, {generate(gen::N5{}), C(3)}, {generate(gen::Boolean{2}), generate(gen::N5{})}};
  for (const auto& pr : pairs) {
    const Lattice& L = pr[0];
    const Lattice& M = pr[1];
    const auto Q = oracle::homset(L, M);
    oracle::for_each_function(L, M, [&](const V& f) {
      REQUIRE(vals(interior(LatMap(L, M, f))) == *oracle::interior(L, M, Q, f));
    });
  }
}

TEST_CASE("interior is deflationary, monotone and fixes exactly the join-continuous maps") {
  std::mt19937_64 rng(11);
  for (const Lattice& L : corpus()) {
    if (L.size() < 5 || L.size() > 8) continue;
    CAPTURE(L.name());
    for (int trial = 0; trial < 30; ++trial) {
      V f(L.size()), g(L.size());
      for (Elem x : L.elements()) {
        f[x] = static_cast<Elem>(rng() % L.size());
        g[x] = L.join(f[x], static_cast<Elem>(rng() % L.size()));
      }
      LatMap F(L, L, f), G(L, L, g);
      LatMap iF = interior(F);
      REQUIRE(pointwise_leq(iF, F));
      REQUIRE(pointwise_leq(iF, interior(G)));
      REQUIRE(classify(iF).join_continuous);
      REQUIRE(interior(iF) == iF);
      REQUIRE((interior(F) == F) == classify(F).join_continuous);
    }
  }
}

TEST_CASE("Raney transforms: examples and oracle agreement") {
  Lattice c3 = C(3);
  LatMap f(c3, c3, {0, 0, 2});
  CHECK(vals(raney_meet(f)) == V{0, 2, 2});
  CHECK(vals(raney_join(raney_meet(f))) == V{0, 0, 2});

  for (const Lattice& L : corpus()) {
    CAPTURE(L.name());
    LatMap id = LatMap::identity(L);
    REQUIRE(raney_join(id) == sp(L, SpecialKind::O));
    REQUIRE(raney_meet(id) == sp(L, SpecialKind::Omega));
    if (L.size() > 4) continue;
    oracle::for_each_function(L, L, [&](const V& g) {
      LatMap G(L, L, g);
      LatMap rj = raney_join(G);
      LatMap rm = raney_meet(G);
      REQUIRE(vals(rj) == oracle_raney_join(L, L, g));
      REQUIRE(vals(rm) == oracle_raney_meet(L, L, g));
      REQUIRE(classify(rj).join_continuous);
      REQUIRE(classify(rm).meet_continuous);
      // The right adjoint of ∨g is y ↦ ⋀{z : g(z) ≰ y}.
      LatMap gf(L, L, [&] {
        V r(L.size());
        for (Elem y : L.elements()) r[y] = L.meet_if([&](Elem z) { return !L.leq(g[z], y); });
        return r;
      }());
      REQUIRE(right_adjoint(rj) == gf);
    });
  }
}

TEST_CASE("commutation l(∧f) = ∨(ρf) on homsets with |L|, |M| <= 4") {
  std::vector<Lattice> small;
  for (const Lattice& L : corpus())
    if (L.size() <= 4) small.push_back(L);
  for (const Lattice& L : small)
    for (const Lattice& M : small)
      for (const LatMap& f : enumerate_homset(L, M)) {
        REQUIRE(left_adjoint(raney_meet(f)) == raney_join(right_adjoint(f)));
      }
}

TEST_CASE("o is the join of c_t after a_t") {
  for (const Lattice& L : corpus()) {
    std::vector<LatMap> parts;
    for (Elem t : L.elements())
      parts.push_back(compose(sp(L, SpecialKind::Const, t), sp(L, SpecialKind::Annihilator, t)));
    REQUIRE(pointwise_join(parts) == sp(L, SpecialKind::O));
  }
}

TEST_CASE("interior of alpha_x is a at o(x)") {
  for (const Lattice& L : corpus()) {
    LatMap o = sp(L, SpecialKind::O);
    for (Elem x : L.elements())
      REQUIRE(interior(sp(L, SpecialKind::Alpha, x)) == sp(L, SpecialKind::Annihilator, o(x)));
  }
}

TEST_CASE("big_meet: examples") {
  Lattice c3 = C(3);
  std::vector<LatMap> two{LatMap::identity(c3), sp(c3, SpecialKind::Const, 2)};
  CHECK(big_meet(two) == LatMap::identity(c3));
  std::vector<LatMap> one{sp(c3, SpecialKind::O)};
  CHECK(big_meet(one) == sp(c3, SpecialKind::O));

  Lattice m3 = generate(gen::M3{});
  LatMap id = LatMap::identity(m3);
  std::vector<LatMap> ids{id, id};
  LatMap bm = big_meet(ids);
  CHECK(bm == raney_join(raney_meet(id)));
  CHECK(bm == raney_join(sp(m3, SpecialKind::Omega)));
  CHECK(pointwise_leq(bm, id));
  CHECK(bm != id);

  std::vector<LatMap> bad{LatMap(c3, c3, {0, 2, 1})};
  CHECK_THROWS_AS(big_meet(bad), Error);
  std::vector<LatMap> mixed{id, LatMap::identity(c3)};
  CHECK_THROWS_AS(big_meet(mixed), Error);
}

TEST_CASE("big_meet is a lower bound; on CD lattices the greatest one in Q(L), |L| <= 4") {
  for (const Lattice& L : corpus()) {
    if (L.size() > 4) continue;
    CAPTURE(L.name());
    const bool cd = distributive_oracle(L).holds;
    const auto Q = oracle::homset(L, L);
    auto H = enumerate_homset(L, L);
    for (const LatMap& f : H)
      for (const LatMap& g : H) {
        std::vector<LatMap> fs{f, g};
        LatMap bm = big_meet(fs);
        REQUIRE(classify(bm).join_continuous);
        REQUIRE(pointwise_leq(bm, f));
        REQUIRE(pointwise_leq(bm, g));
        if (!cd) continue;
        std::vector<V> lower;
        for (const V& k : Q)
          if (oracle::pointwise_leq(L, k, vals(f)) && oracle::pointwise_leq(L, k, vals(g))) lower.push_back(k);
        REQUIRE(vals(bm) == *oracle::greatest(L, lower, L.size()));
      }
  }
}

TEST_CASE("classification cache is consistent under concurrent readers") {
  Lattice L = generate(gen::Boolean{3});
  LatMap f = sp(L, SpecialKind::Alpha, 3);
  std::vector<std::thread> pool;
  std::vector<MapClass> seen(4);
  for (int i = 0; i < 4; ++i) pool.emplace_back([&, i] { seen[i] = f.classify(); });
  for (auto& t : pool) t.join();
  for (const MapClass& c : seen) CHECK(c == MapClass{true, false, true});
  LatMap copy = f;
  CHECK(copy.classify() == seen[0]);
}
