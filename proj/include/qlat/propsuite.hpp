#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "qlat/check_result.hpp"
#include "qlat/lattice.hpp"

namespace qlat {

inline constexpr const char* kVersion = "1.0.0";

enum class Status { Pass, Fail, Skip };
std::string_view to_string(Status s);

struct CellResult {
  Status status = Status::Skip;
  // Pass whose premise never fired on this lattice.
  bool vacuous = false;
  // Skip caused by a cap rather than by the check not applying.
  bool unexpected = false;
  std::string reason;
  CheckResult result;
};

class LatticeContext;

struct TheoremCheck {
  std::string id;
  std::string statement;
  std::string applicability;
  std::function<CellResult(LatticeContext&)> run;
};

const std::vector<TheoremCheck>& check_registry();

struct SuiteOptions {
  std::vector<std::string> checks;  // empty selects the whole registry
  std::uint64_t seed = 1;
  unsigned threads = 0;             // 0 = hardware concurrency
  std::size_t random_maps = 256;    // random monotone maps per lattice
  std::size_t pair_budget = std::size_t{1} << 16;
  std::size_t homset_cap = std::size_t{1} << 17;
};

struct SuiteSummary {
  std::size_t pass = 0;
  std::size_t fail = 0;
  std::size_t skip = 0;
  std::size_t unexpected_skip = 0;
  std::size_t vacuous = 0;
  // Lattices where the cyclic-o premise of T5 was decided, and where it held.
  std::size_t t5_premise_evaluated = 0;
  std::size_t t5_premise_triggered = 0;
};

struct SuiteReport {
  std::vector<std::string> corpus;
  std::vector<std::string> checks;
  std::vector<std::vector<CellResult>> results;  // [check][lattice]
  SuiteSummary summary;
  std::uint64_t seed = 0;
  std::string version = kVersion;

  bool ok() const { return summary.fail == 0 && summary.unexpected_skip == 0; }
};

std::vector<Lattice> builtin_corpus();
// The seeded closure-system lattices used by the corpus: seed s has 2 + s % 6 elements.
std::vector<Lattice> random_corpus(std::uint64_t first_seed, std::size_t count);

// Throws ParseError for unknown check ids.
SuiteReport run_suite(std::span<const Lattice> corpus, const SuiteOptions& options = {});

// Monotone maps L -> L drawn as join- or meet-closures of random functions.
std::vector<std::vector<Elem>> random_monotone_maps(const Lattice& L, std::size_t count, std::uint64_t seed);

}  // namespace qlat
