#include "obddc/compiler.hpp"

#include <algorithm>
#include <chrono>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "obddc/decomposition.hpp"
#include "obddc/incidence.hpp"
#include "obddc/widths.hpp"

namespace obddc {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start)
      .count();
}

}  // namespace

std::pair<Obdd, CompileReport> compile_with_ordering(const Cnf& f,
                                                     const Ordering& sigma) {
  if (!sigma.covers_exactly(f.variables()))
    throw DomainError("compile: ordering domain mismatch");

  auto start = Clock::now();
  CompileReport report;
  report.ordering = sigma;

  int n = sigma.size();
  if (f.has_empty_clause() || f.empty()) {
    Obdd d = Obdd::constant(f.empty(), sigma);
    report.size_before_reduce = 1;
    report.size_after_reduce = 1;
    report.elapsed_ms = ms_since(start);
    return {std::move(d), std::move(report)};
  }

  std::vector<ObddNode> table(2);
  auto new_node = [&table](Var var) {
    table.push_back({var, kZeroSink, kZeroSink});
    return static_cast<NodeRef>(table.size() - 1);
  };

  struct Labelled {
    NodeRef ref;
    Cnf label;
  };
  NodeRef source = new_node(sigma.at(0));
  std::vector<Labelled> level{{source, f}};

  for (int i = 0; i < n; ++i) {
    Var x = sigma.at(i);
    bool last = (i == n - 1);
    std::vector<Labelled> next;
    std::unordered_map<CanonicalKey, NodeRef, CanonicalKeyHash> cache;
    std::unordered_set<CanonicalKey, CanonicalKeyHash> seen;
    for (Labelled& node : level) {
      NodeRef targets[2];
      for (int b = 0; b < 2; ++b) {
        Cnf g = restrict(node.label, x, b == 1);
        seen.insert(canonical_key(g));
        if (g.has_empty_clause()) {
          targets[b] = kZeroSink;
        } else if (g.empty()) {
          targets[b] = kOneSink;
        } else {
          CanonicalKey key = canonical_key(g);
          auto it = cache.find(key);
          if (it != cache.end()) {
            targets[b] = it->second;
          } else {
            targets[b] = new_node(sigma.at(i + 1));
            cache.emplace(std::move(key), targets[b]);
            next.push_back({targets[b], std::move(g)});
          }
        }
      }
      table[node.ref].lo = targets[0];
      table[node.ref].hi = targets[1];
    }
    if (last && !next.empty())
      throw std::logic_error("compile: the final level must close on sinks");
    report.level_widths.push_back(static_cast<long long>(seen.size()));
    report.level_nodes.push_back(static_cast<long long>(next.size()));
    level = std::move(next);
  }

  Obdd built = Obdd::from_table(sigma, std::move(table), source);
  report.size_before_reduce = obdd_size(built);
  for (long long w : report.level_widths)
    report.measured_stw = std::max(report.measured_stw, w);
  if (report.size_before_reduce >
      static_cast<long long>(n) * report.measured_stw + 2)
    throw std::logic_error("compile: size bound violated");

  Obdd reduced = reduce(built);
  report.size_after_reduce = obdd_size(reduced);
  report.elapsed_ms = ms_since(start);
  return {std::move(reduced), std::move(report)};
}

namespace {

Ordering ascending_ordering(const std::vector<Var>& vars) {
  std::vector<Var> sorted = vars;
  std::sort(sorted.begin(), sorted.end());
  return Ordering::of(std::move(sorted));
}

// Pathwidth pipeline: heuristic tree decomposition of the incidence graph,
// centroid conversion to a path, forget ordering.
Ordering pathwidth_ordering(const Cnf& f) {
  if (f.var_count() == 0) return Ordering();
  IncidenceGraph inc = build_incidence(f);
  TreeDecomposition td = min_fill_tree_decomposition(inc);
  PathDecomposition pd = tree_to_path(td);
  return forget_ordering(pd, f);
}

struct DeletionPlan {
  DeletionSet set;
  Cnf deleted_formula;
  Ordering sigma;  // deleted and orphaned variables, ascending
  Ordering pi;     // forget ordering of the deleted formula
};

DeletionPlan plan_deletion(const Cnf& f, int max_k, const Guards& guards) {
  IncidenceGraph inc = build_incidence(f);
  auto set = feedback_vertex_set(inc, max_k, guards);
  if (!set)
    throw StrategyError("deletion: no feedback vertex set of size <= " +
                        std::to_string(max_k));
  DeletionPlan plan;
  plan.set = *set;
  plan.deleted_formula = delete_from(f, set->vars, set->clause_indices);
  // variables that survive nowhere in E (deleted, or stranded in deleted
  // clauses) lead the combined ordering
  std::vector<Var> head;
  for (Var v : f.variables())
    if (!plan.deleted_formula.contains_var(v)) head.push_back(v);
  plan.sigma = ascending_ordering(head);
  plan.pi = pathwidth_ordering(plan.deleted_formula);
  return plan;
}

}  // namespace

std::pair<Ordering, std::string> choose_ordering(const Cnf& f,
                                                 const Strategy& strategy,
                                                 const Guards& guards) {
  if (f.has_empty_clause())
    throw DomainError("choose_ordering: formula contains the empty clause");

  switch (strategy.kind) {
    case Strategy::Kind::Explicit:
      if (!strategy.explicit_order.covers_exactly(f.variables()))
        throw StrategyError("explicit ordering does not cover var(F)");
      return {strategy.explicit_order, "explicit"};

    case Strategy::Kind::Convex: {
      auto witness = detect_left_convex(build_incidence(f));
      if (!witness) throw StrategyError("formula is not variable convex");
      return {*witness, "convex"};
    }

    case Strategy::Kind::Pathwidth:
      return {pathwidth_ordering(f), "pathwidth"};

    case Strategy::Kind::Deletion: {
      DeletionPlan plan = plan_deletion(f, strategy.max_k, guards);
      return {plan.sigma.followed_by(plan.pi), "deletion"};
    }

    case Strategy::Kind::Auto: {
      // candidates in priority order; ties go to the earlier one
      std::vector<std::pair<Ordering, std::string>> candidates;
      if (auto witness = detect_left_convex(build_incidence(f)))
        candidates.push_back({*witness, "convex"});
      try {
        DeletionPlan plan = plan_deletion(f, strategy.max_k, guards);
        candidates.push_back({plan.sigma.followed_by(plan.pi), "deletion"});
      } catch (const StrategyError&) {
      } catch (const GuardError&) {
      }
      candidates.push_back({pathwidth_ordering(f), "pathwidth"});

      std::size_t best = 0;
      long long best_stw = -1, best_size = -1;
      for (std::size_t i = 0; i < candidates.size(); ++i) {
        auto [d, rep] = compile_with_ordering(f, candidates[i].first);
        long long stw = rep.measured_stw;
        if (f.var_count() <= guards.subterm_vars)
          stw = stw_for_ordering(f, candidates[i].first, guards).width;
        long long size = rep.size_after_reduce;
        if (best_stw < 0 || stw < best_stw ||
            (stw == best_stw && size < best_size)) {
          best = i;
          best_stw = stw;
          best_size = size;
        }
      }
      return candidates[best];
    }
  }
  throw std::logic_error("unreachable strategy kind");
}

namespace {

// Width of a formula along an ordering when subterms are identified by the
// set of surviving clause identities rather than by restricted content.
// Distinct clauses can restrict to equal husks, so this never undercounts
// the subterm width and is the measure the deletion argument is sound for.
long long survivor_width(const Cnf& f, const Ordering& pi) {
  std::set<std::vector<int>> patterns;
  std::vector<int> all(f.clause_count());
  for (int i = 0; i < f.clause_count(); ++i) all[i] = i;
  patterns.insert(all);
  long long width = 1;
  for (Var v : pi.vars()) {
    std::set<std::vector<int>> next;
    for (const auto& pattern : patterns) {
      for (bool value : {false, true}) {
        std::vector<int> kept;
        for (int c : pattern) {
          auto occ = f.clauses()[c].occurrence(v);
          if (!occ || *occ == !value) kept.push_back(c);
        }
        next.insert(std::move(kept));
      }
    }
    patterns = std::move(next);
    width = std::max(width, static_cast<long long>(patterns.size()));
  }
  return width;
}

}  // namespace

std::pair<Obdd, CompileReport> deletion_compile(const Cnf& f, int max_k,
                                                const Guards& guards) {
  if (f.has_empty_clause())
    throw DomainError("deletion_compile: formula contains the empty clause");
  DeletionPlan plan = plan_deletion(f, max_k, guards);
  Ordering combined = plan.sigma.followed_by(plan.pi);

  auto [diagram, report] = compile_with_ordering(f, combined);
  report.strategy = "deletion";
  report.deletion_k = plan.set.size();

  // shadow compilation of the deleted formula, for the report
  auto [shadow, shadow_report] =
      compile_with_ordering(plan.deleted_formula, plan.pi);
  (void)shadow;
  report.stw_deleted = shadow_report.measured_stw;

  // exact widths where the enumeration guard allows
  if (f.var_count() <= guards.subterm_vars) {
    report.stw_sigma_pi = stw_for_ordering(f, combined, guards).width;
    report.stw_deleted =
        stw_for_ordering(plan.deleted_formula, plan.pi, guards).width;
    report.stw_deleted_survivor = survivor_width(plan.deleted_formula, plan.pi);
    report.deletion_bound_checked = true;

    auto times_two_pow_k = [&](long long value) {
      for (int i = 0; i < report.deletion_k && value <= (1ll << 50); ++i)
        value *= 2;
      return value;
    };
    // The literal inequality against stw(E, pi) can fail: deletion keeps
    // stripped husks of clauses a restriction would satisfy away, and husk
    // collisions can make E's subterm sets collapse below F's. Reported, not
    // enforced.
    report.deletion_bound_ok =
        report.stw_sigma_pi <= times_two_pow_k(report.stw_deleted);
    // Against the survivor-identity width the bound is a theorem.
    if (report.stw_sigma_pi > times_two_pow_k(report.stw_deleted_survivor))
      throw std::logic_error("deletion_compile: survivor-width bound violated");
  }
  return {std::move(diagram), std::move(report)};
}

std::pair<Obdd, CompileReport> compile(const Cnf& f, const Strategy& strategy,
                                       const Guards& guards) {
  if (f.has_empty_clause() || f.empty()) {
    // constant formulas short-circuit before any strategy work
    auto result = compile_with_ordering(f, ascending_ordering(f.variables()));
    result.second.strategy = "constant";
    return result;
  }
  if (strategy.kind == Strategy::Kind::Deletion)
    return deletion_compile(f, strategy.max_k, guards);
  auto [ordering, tag] = choose_ordering(f, strategy, guards);
  auto result = compile_with_ordering(f, ordering);
  result.second.strategy = tag;
  return result;
}

}  // namespace obddc
