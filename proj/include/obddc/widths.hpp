#pragma once

#include <string>
#include <utility>
#include <vector>

#include "obddc/cnf.hpp"
#include "obddc/common.hpp"
#include "obddc/incidence.hpp"

namespace obddc {

// The distinct restrictions of a formula under all assignments of a variable
// set, identified by canonical key.
struct SubtermSet {
  std::vector<Var> prefix_vars;      // sorted
  std::vector<CanonicalKey> keys;    // sorted, unique

  long long count() const { return static_cast<long long>(keys.size()); }
};

// Per-prefix subterm counts along one ordering. per_prefix[j] is the number
// of distinct subterms of the length-(j+1) prefix, falsified subterms
// included. per_prefix_live counts only subterms free of the empty clause,
// which is what the compiler's node count corresponds to.
struct WidthProfile {
  Ordering ordering;
  std::vector<long long> per_prefix;
  std::vector<long long> per_prefix_live;
  long long width = 1;  // max over per_prefix; 1 for variable-free formulas
};

// All 2^|V| restrictions of F over V. V must be a subset of var(F).
SubtermSet subterms(const Cnf& f, const std::vector<Var>& v,
                    const Guards& guards = {});

// Exact width profile of F along sigma; var(sigma) must equal var(F).
WidthProfile stw_for_ordering(const Cnf& f, const Ordering& sigma,
                              const Guards& guards = {});

// Minimum subterm width over all orderings, with the lexicographically least
// witnessing ordering. Enumerates permutation prefixes with pruning on the
// best width found; per-subset subterm counts are memoized.
std::pair<long long, Ordering> stw_exact(const Cnf& f,
                                         const Guards& guards = {});

enum class TargetClass { Forest };

// Minimum number of variable/clause deletions placing F in the target class.
// For forests this is exactly the minimum feedback vertex set of inc(F).
std::pair<int, DeletionSet> deletion_distance(
    const Cnf& f, TargetClass target = TargetClass::Forest,
    const Guards& guards = {});

// `prefix_len,count` rows for plotting.
std::string width_profile_csv(const WidthProfile& profile);

}  // namespace obddc
