#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace obddc {

// Input could not be parsed (DIMACS, edge lists, PACE files, CLI order strings).
struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

// A precondition on arguments was violated (ordering domain mismatch,
// incomplete assignment, invalid decomposition, ...).
struct DomainError : std::runtime_error {
  explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

// An exhaustive computation was requested beyond its configured budget.
struct GuardError : std::runtime_error {
  explicit GuardError(const std::string& msg) : std::runtime_error(msg) {}
};

// A requested ordering strategy does not apply to the given formula.
struct StrategyError : std::runtime_error {
  explicit StrategyError(const std::string& msg) : std::runtime_error(msg) {}
};

// Budgets for the exhaustive oracles. OBDDC_GUARD_VARS overrides the
// enumeration-variable guards with a single value.
struct Guards {
  int subterm_vars = 20;       // subterms / stw_for_ordering
  int stw_exact_vars = 10;     // ordering enumeration
  int sfw_exact_vars = 8;
  int min_obdd_vars = 8;
  int equivalence_vars = 24;   // cross-ordering equivalence check
  int expansion_vertices = 20; // expansion constant subset enumeration
  int fooling_log2 = 16;       // 2^e bound for fooling-set verification
  int productive_clauses = 24; // branch-and-bound clause budget
  int fvs_budget = 20;
  int treewidth_vertices = 14;

  static Guards from_env();
};

// Stable 64-bit FNV-1a, used for hash-consing keys.
inline std::uint64_t fnv1a64(const void* data, std::size_t len,
                             std::uint64_t seed = 0xcbf29ce484222325ull) {
  const auto* p = static_cast<const unsigned char*>(data);
  std::uint64_t h = seed;
  for (std::size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ull;
  }
  return h;
}

}  // namespace obddc
