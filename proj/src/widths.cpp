#include "obddc/widths.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <sstream>
#include <unordered_map>

namespace obddc {

SubtermSet subterms(const Cnf& f, const std::vector<Var>& v,
                    const Guards& guards) {
  SubtermSet out;
  out.prefix_vars = v;
  std::sort(out.prefix_vars.begin(), out.prefix_vars.end());
  for (Var x : out.prefix_vars)
    if (!f.contains_var(x))
      throw DomainError("subterms: variable " + std::to_string(x) +
                        " not in var(F)");
  if (static_cast<int>(out.prefix_vars.size()) > guards.subterm_vars)
    throw GuardError("subterms: " + std::to_string(out.prefix_vars.size()) +
                     " variables exceed guard " +
                     std::to_string(guards.subterm_vars));

  std::set<CanonicalKey> keys;
  auto rec = [&](auto&& self, const Cnf& g, std::size_t i) -> void {
    if (i == out.prefix_vars.size()) {
      keys.insert(canonical_key(g));
      return;
    }
    self(self, restrict(g, out.prefix_vars[i], false), i + 1);
    self(self, restrict(g, out.prefix_vars[i], true), i + 1);
  };
  rec(rec, f, 0);
  out.keys.assign(keys.begin(), keys.end());
  return out;
}

WidthProfile stw_for_ordering(const Cnf& f, const Ordering& sigma,
                              const Guards& guards) {
  if (!sigma.covers_exactly(f.variables()))
    throw DomainError("stw_for_ordering: ordering domain mismatch");
  if (f.var_count() > guards.subterm_vars)
    throw GuardError("stw_for_ordering: " + std::to_string(f.var_count()) +
                     " variables exceed guard " +
                     std::to_string(guards.subterm_vars));

  WidthProfile profile;
  profile.ordering = sigma;

  // st(F, prefix + v) is the image of st(F, prefix) under both v-restrictions,
  // so the per-prefix sets can be grown level by level.
  std::set<Cnf> classes{f};
  for (Var v : sigma.vars()) {
    std::set<Cnf> next;
    for (const Cnf& g : classes) {
      next.insert(restrict(g, v, false));
      next.insert(restrict(g, v, true));
    }
    classes = std::move(next);
    long long live = 0;
    for (const Cnf& g : classes)
      if (!g.has_empty_clause()) ++live;
    profile.per_prefix.push_back(static_cast<long long>(classes.size()));
    profile.per_prefix_live.push_back(live);
  }
  profile.width = 1;
  for (long long c : profile.per_prefix) profile.width = std::max(profile.width, c);
  return profile;
}

namespace {

// |st(F, V)| for the subset encoded by a bitmask over sorted var indices.
class SubtermCounter {
 public:
  SubtermCounter(const Cnf& f, const std::vector<Var>& vars)
      : f_(f), vars_(vars) {}

  long long count(std::uint32_t mask) {
    auto it = memo_.find(mask);
    if (it != memo_.end()) return it->second;
    std::set<CanonicalKey> keys;
    collect(f_, mask, 0, keys);
    long long c = static_cast<long long>(keys.size());
    memo_[mask] = c;
    return c;
  }

 private:
  void collect(const Cnf& g, std::uint32_t mask, int i,
               std::set<CanonicalKey>& keys) {
    while (i < static_cast<int>(vars_.size()) && !(mask & (1u << i))) ++i;
    if (i == static_cast<int>(vars_.size())) {
      keys.insert(canonical_key(g));
      return;
    }
    collect(restrict(g, vars_[i], false), mask, i + 1, keys);
    collect(restrict(g, vars_[i], true), mask, i + 1, keys);
  }

  const Cnf& f_;
  const std::vector<Var>& vars_;
  std::unordered_map<std::uint32_t, long long> memo_;
};

}  // namespace

std::pair<long long, Ordering> stw_exact(const Cnf& f, const Guards& guards) {
  int n = f.var_count();
  if (n > guards.stw_exact_vars)
    throw GuardError("stw_exact: " + std::to_string(n) +
                     " variables exceed guard " +
                     std::to_string(guards.stw_exact_vars));
  if (n == 0) return {1, Ordering()};

  const std::vector<Var>& vars = f.variables();
  SubtermCounter counter(f, vars);

  long long best = std::numeric_limits<long long>::max();
  std::vector<int> best_perm, current;
  // Depth-first over permutation prefixes in index order; a branch is
  // abandoned as soon as its running maximum reaches the best known width,
  // and only strict improvements are recorded, so the returned ordering is
  // the lexicographically least minimizer.
  auto rec = [&](auto&& self, std::uint32_t used, long long running_max) -> void {
    if (running_max >= best) return;
    if (static_cast<int>(current.size()) == n) {
      best = running_max;
      best_perm = current;
      return;
    }
    for (int i = 0; i < n; ++i) {
      if (used & (1u << i)) continue;
      std::uint32_t next = used | (1u << i);
      long long w = counter.count(next);
      current.push_back(i);
      self(self, next, std::max(running_max, w));
      current.pop_back();
    }
  };
  rec(rec, 0, 0);

  std::vector<Var> witness;
  witness.reserve(n);
  for (int i : best_perm) witness.push_back(vars[i]);
  return {best, Ordering::of(std::move(witness))};
}

std::pair<int, DeletionSet> deletion_distance(const Cnf& f, TargetClass target,
                                              const Guards& guards) {
  (void)target;  // forests are the only supported class
  IncidenceGraph inc = build_incidence(f);
  auto set = feedback_vertex_set(inc, guards.fvs_budget, guards);
  if (!set)
    throw GuardError("deletion_distance: no deletion set within budget " +
                     std::to_string(guards.fvs_budget));
  return {set->size(), *set};
}

std::string width_profile_csv(const WidthProfile& profile) {
  std::ostringstream out;
  out << "prefix_len,count\n";
  for (std::size_t i = 0; i < profile.per_prefix.size(); ++i)
    out << (i + 1) << ',' << profile.per_prefix[i] << '\n';
  return out.str();
}

}  // namespace obddc
