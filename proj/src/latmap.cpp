#include "qlat/latmap.hpp"

#include <string>

#include "qlat/error.hpp"

namespace qlat {

namespace {

constexpr std::uint8_t kCached = 0x80;
constexpr std::uint8_t kMonotone = 0x1;
constexpr std::uint8_t kJoin = 0x2;
constexpr std::uint8_t kMeet = 0x4;

void require_same_type(const LatMap& f, const LatMap& g) {
  if (!(f.dom() == g.dom()) || !(f.cod() == g.cod())) {
    throw Error(ErrorKind::DomainMismatch, "maps " + f.dom().name() + "->" + f.cod().name() + " and " +
                                               g.dom().name() + "->" + g.cod().name());
  }
}

void require_join_continuous(const LatMap& f, const char* op) {
  if (!f.classify().join_continuous) {
    throw Error(ErrorKind::NotContinuous, std::string(op) + " needs a join-continuous map");
  }
}

void require_element(const Lattice& L, Elem x) {
  if (x >= L.size()) {
    throw Error(ErrorKind::IndexOutOfRange,
                "element " + std::to_string(x) + " in a lattice of size " + std::to_string(L.size()));
  }
}

}  // namespace

LatMap::LatMap(Lattice dom, Lattice cod, std::vector<Elem> values)
    : dom_(std::move(dom)), cod_(std::move(cod)), values_(std::move(values)) {
  if (values_.size() != dom_.size()) {
    throw Error(ErrorKind::DomainMismatch, "map has " + std::to_string(values_.size()) +
                                               " values for a domain of size " + std::to_string(dom_.size()));
  }
  for (Elem v : values_) require_element(cod_, v);
}

LatMap LatMap::identity(const Lattice& L) {
  std::vector<Elem> v(L.elements().begin(), L.elements().end());
  return LatMap(L, L, std::move(v));
}

LatMap::LatMap(const LatMap& other)
    : dom_(other.dom_), cod_(other.cod_), values_(other.values_),
      class_cache_(other.class_cache_.load(std::memory_order_relaxed)) {}

LatMap::LatMap(LatMap&& other) noexcept
    : dom_(std::move(other.dom_)), cod_(std::move(other.cod_)), values_(std::move(other.values_)),
      class_cache_(other.class_cache_.load(std::memory_order_relaxed)) {}

LatMap& LatMap::operator=(const LatMap& other) {
  if (this != &other) {
    dom_ = other.dom_;
    cod_ = other.cod_;
    values_ = other.values_;
    class_cache_.store(other.class_cache_.load(std::memory_order_relaxed), std::memory_order_relaxed);
  }
  return *this;
}

LatMap& LatMap::operator=(LatMap&& other) noexcept {
  dom_ = std::move(other.dom_);
  cod_ = std::move(other.cod_);
  values_ = std::move(other.values_);
  class_cache_.store(other.class_cache_.load(std::memory_order_relaxed), std::memory_order_relaxed);
  return *this;
}

MapClass LatMap::classify() const {
  std::uint8_t bits = class_cache_.load(std::memory_order_relaxed);
  if (!(bits & kCached)) {
    const Lattice& L = dom_;
    const Lattice& M = cod_;
    bool monotone = true;
    for (Elem x : L.elements()) {
      for (Elem y : L.upper_covers(x)) monotone = monotone && M.leq(values_[x], values_[y]);
    }
    bool join = monotone && values_[L.bottom()] == M.bottom();
    bool meet = monotone && values_[L.top()] == M.top();
    for (Elem x : L.elements()) {
      if (!join && !meet) break;
      for (Elem y = x + 1; y < L.size(); ++y) {
        join = join && values_[L.join(x, y)] == M.join(values_[x], values_[y]);
        meet = meet && values_[L.meet(x, y)] == M.meet(values_[x], values_[y]);
      }
    }
    bits = static_cast<std::uint8_t>(kCached | (monotone ? kMonotone : 0) | (join ? kJoin : 0) |
                                     (meet ? kMeet : 0));
    class_cache_.store(bits, std::memory_order_relaxed);
  }
  return MapClass{(bits & kMonotone) != 0, (bits & kJoin) != 0, (bits & kMeet) != 0};
}

bool pointwise_leq(const LatMap& f, const LatMap& g) {
  require_same_type(f, g);
  for (Elem x : f.dom().elements())
    if (!f.cod().leq(f(x), g(x))) return false;
  return true;
}

LatMap compose(const LatMap& g, const LatMap& f) {
  if (!(f.cod() == g.dom())) {
    throw Error(ErrorKind::DomainMismatch,
                "cannot compose " + g.dom().name() + "->" + g.cod().name() + " after " + f.dom().name() + "->" +
                    f.cod().name());
  }
  std::vector<Elem> v(f.dom().size());
  for (Elem x : f.dom().elements()) v[x] = g(f(x));
  return LatMap(f.dom(), g.cod(), std::move(v));
}

LatMap pointwise_join(std::span<const LatMap> fs) {
  if (fs.empty()) throw Error(ErrorKind::DomainMismatch, "pointwise join of an empty family");
  std::vector<Elem> v(fs[0].values().begin(), fs[0].values().end());
  const Lattice& M = fs[0].cod();
  for (const LatMap& f : fs.subspan(1)) {
    require_same_type(fs[0], f);
    for (std::size_t x = 0; x < v.size(); ++x) v[x] = M.join(v[x], f(static_cast<Elem>(x)));
  }
  return LatMap(fs[0].dom(), M, std::move(v));
}

LatMap pointwise_meet(std::span<const LatMap> fs) {
  if (fs.empty()) throw Error(ErrorKind::DomainMismatch, "pointwise meet of an empty family");
  std::vector<Elem> v(fs[0].values().begin(), fs[0].values().end());
  const Lattice& M = fs[0].cod();
  for (const LatMap& f : fs.subspan(1)) {
    require_same_type(fs[0], f);
    for (std::size_t x = 0; x < v.size(); ++x) v[x] = M.meet(v[x], f(static_cast<Elem>(x)));
  }
  return LatMap(fs[0].dom(), M, std::move(v));
}

LatMap pointwise_join(const LatMap& f, const LatMap& g) {
  const LatMap fs[] = {f, g};
  return pointwise_join(fs);
}

LatMap pointwise_meet(const LatMap& f, const LatMap& g) {
  const LatMap fs[] = {f, g};
  return pointwise_meet(fs);
}

LatMap right_adjoint(const LatMap& f) {
  require_join_continuous(f, "right_adjoint");
  const Lattice& L = f.dom();
  const Lattice& M = f.cod();
  std::vector<Elem> v(M.size());
  for (Elem y : M.elements()) v[y] = L.join_if([&](Elem x) { return M.leq(f(x), y); });
  return LatMap(M, L, std::move(v));
}

LatMap left_adjoint(const LatMap& g) {
  if (!g.classify().meet_continuous) {
    throw Error(ErrorKind::NotContinuous, "left_adjoint needs a meet-continuous map");
  }
  const Lattice& M = g.dom();
  const Lattice& L = g.cod();
  std::vector<Elem> v(L.size());
  for (Elem x : L.elements()) v[x] = M.meet_if([&](Elem y) { return L.leq(x, g(y)); });
  return LatMap(L, M, std::move(v));
}

LatMap interior(const LatMap& f) {
  const Lattice& L = f.dom();
  const Lattice& M = f.cod();
  std::vector<Elem> h(f.values().begin(), f.values().end());
  const auto order = L.linear_extension();
  bool changed = true;
  auto lower = [&](Elem x, Elem bound) {
    Elem m = M.meet(h[x], bound);
    if (m != h[x]) {
      h[x] = m;
      changed = true;
    }
  };
  while (changed) {
    changed = false;
    lower(L.bottom(), M.bottom());
    // Top-down so a single sweep makes h monotone.
    for (auto it = order.rbegin(); it != order.rend(); ++it)
      for (Elem y : L.upper_covers(*it)) lower(*it, h[y]);
    for (Elem x : L.elements())
      for (Elem y = x + 1; y < L.size(); ++y) lower(L.join(x, y), M.join(h[x], h[y]));
  }
  return LatMap(L, M, std::move(h));
}

LatMap raney_join(const LatMap& f) {
  const Lattice& L = f.dom();
  const Lattice& M = f.cod();
  std::vector<Elem> v(L.size());
  for (Elem x : L.elements()) {
    Elem acc = M.bottom();
    for (Elem t : L.elements())
      if (!L.leq(x, t)) acc = M.join(acc, f(t));
    v[x] = acc;
  }
  return LatMap(L, M, std::move(v));
}

LatMap raney_meet(const LatMap& f) {
  const Lattice& L = f.dom();
  const Lattice& M = f.cod();
  std::vector<Elem> v(L.size());
  for (Elem x : L.elements()) {
    Elem acc = M.top();
    for (Elem t : L.elements())
      if (!L.leq(t, x)) acc = M.meet(acc, f(t));
    v[x] = acc;
  }
  return LatMap(L, M, std::move(v));
}

LatMap special(const Lattice& L, SpecialKind kind, Elem x) {
  if (kind != SpecialKind::O && kind != SpecialKind::Omega) require_element(L, x);
  std::vector<Elem> v(L.size());
  for (Elem t : L.elements()) {
    switch (kind) {
      case SpecialKind::Const: v[t] = t == L.bottom() ? L.bottom() : x; break;
      case SpecialKind::Annihilator: v[t] = L.leq(t, x) ? L.bottom() : L.top(); break;
      case SpecialKind::Alpha: v[t] = L.leq(x, t) ? L.top() : L.bottom(); break;
      case SpecialKind::O: v[t] = L.join_if([&](Elem s) { return !L.leq(t, s); }); break;
      case SpecialKind::Omega: v[t] = L.meet_if([&](Elem s) { return !L.leq(s, t); }); break;
      case SpecialKind::Nu: v[t] = L.leq(t, x) ? L.bottom() : t; break;
    }
  }
  return LatMap(L, L, std::move(v));
}

LatMap big_meet(std::span<const LatMap> fs) {
  if (fs.empty()) throw Error(ErrorKind::DomainMismatch, "big meet of an empty family");
  for (const LatMap& f : fs) {
    require_same_type(fs[0], f);
    require_join_continuous(f, "big_meet");
  }
  const Lattice& L = fs[0].dom();
  const Lattice& M = fs[0].cod();
  const LatMap omega = special(L, SpecialKind::Omega);
  std::vector<Elem> inner(L.size());
  for (Elem t : L.elements()) {
    Elem acc = M.top();
    for (const LatMap& f : fs) acc = M.meet(acc, f(omega(t)));
    inner[t] = acc;
  }
  std::vector<Elem> v(L.size());
  for (Elem x : L.elements()) {
    Elem acc = M.bottom();
    for (Elem t : L.elements())
      if (!L.leq(x, t)) acc = M.join(acc, inner[t]);
    v[x] = acc;
  }
  return LatMap(L, M, std::move(v));
}

std::vector<Elem> completely_join_primes(const Lattice& L) {
  const LatMap o = special(L, SpecialKind::O);
  std::vector<Elem> primes;
  for (Elem x : L.elements())
    if (!L.leq(x, o(x))) primes.push_back(x);
  return primes;
}

}  // namespace qlat
