#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qlat/lattice.hpp"

namespace qlat {

// Data needed to replay a failure: element indices, map value arrays, and a
// short note saying which equation broke.
struct Witness {
  std::vector<Elem> elements;
  std::vector<std::vector<Elem>> maps;
  std::string note;
};

struct CheckResult {
  std::string name;
  bool holds = true;
  std::optional<Witness> witness;
  std::chrono::duration<double, std::milli> elapsed{0};
  // Coverage remarks such as "exhaustive" or "sampled 4096 of 262144".
  std::string detail;

  static CheckResult pass(std::string name, std::string detail = {}) {
    CheckResult r;
    r.name = std::move(name);
    r.detail = std::move(detail);
    return r;
  }
  static CheckResult fail(std::string name, Witness w, std::string detail = {}) {
    CheckResult r;
    r.name = std::move(name);
    r.holds = false;
    r.witness = std::move(w);
    r.detail = std::move(detail);
    return r;
  }
};

// Runs `body` (returning CheckResult) and records its wall time.
template <class F>
CheckResult timed(F&& body) {
  const auto start = std::chrono::steady_clock::now();
  CheckResult r = body();
  r.elapsed = std::chrono::steady_clock::now() - start;
  return r;
}

}  // namespace qlat
