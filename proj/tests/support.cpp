#include "support.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace obddc::testing {

int eval_direct(const Cnf& f, const Assignment& a) {
  for (const Clause& c : f.clauses()) {
    bool satisfied = false;
    for (Lit l : c.literals()) {
      auto it = a.find(lit_var(l));
      if (it != a.end() && it->second == !lit_negated(l)) {
        satisfied = true;
        break;
      }
    }
    if (!satisfied) return 0;
  }
  return 1;
}

void for_each_assignment(const std::vector<Var>& vars,
                         const std::function<void(const Assignment&)>& fn) {
  std::size_t n = vars.size();
  for (std::uint64_t mask = 0; mask < (1ull << n); ++mask) {
    Assignment a;
    for (std::size_t i = 0; i < n; ++i) a[vars[i]] = (mask >> i) & 1;
    fn(a);
  }
}

std::optional<Ordering> brute_force_convex_witness(const IncidenceGraph& g) {
  std::vector<Var> perm = g.vars;
  std::sort(perm.begin(), perm.end());
  do {
    std::map<Var, int> pos;
    for (std::size_t i = 0; i < perm.size(); ++i) pos[perm[i]] = (int)i;
    bool ok = true;
    for (const auto& clause_vars : g.clause_to_vars) {
      if (clause_vars.empty()) continue;
      int lo = (int)perm.size(), hi = -1;
      for (int vi : clause_vars) {
        lo = std::min(lo, pos[g.var_at(vi)]);
        hi = std::max(hi, pos[g.var_at(vi)]);
      }
      if (hi - lo + 1 != (int)clause_vars.size()) {
        ok = false;
        break;
      }
    }
    if (ok) return Ordering::of(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::nullopt;
}

namespace {

void expansion_rec(const std::vector<std::vector<int>>& adj, int n, int next,
                   std::vector<int>& chosen, Rational& best) {
  if (!chosen.empty() && (int)chosen.size() <= n / 2) {
    std::set<int> in(chosen.begin(), chosen.end()), nb;
    for (int v : chosen)
      for (int w : adj[v])
        if (!in.count(w)) nb.insert(w);
    Rational ratio = Rational::of((long long)nb.size(), (long long)chosen.size());
    if (best.num < 0 || ratio < best) best = ratio;
  }
  for (int v = next; v <= n; ++v) {
    chosen.push_back(v);
    if ((int)chosen.size() <= n / 2)
      expansion_rec(adj, n, v + 1, chosen, best);
    chosen.pop_back();
  }
}

}  // namespace

Rational expansion_constant_oracle(const SimpleGraph& g) {
  auto adj = g.adjacency();
  Rational best{-1, 1};
  std::vector<int> chosen;
  expansion_rec(adj, g.n, 1, chosen, best);
  return best;
}

int max_productive_oracle(const Cnf& f, const Ordering& sigma,
                          int prefix_len) {
  std::set<Clause> clause_set(f.clauses().begin(), f.clauses().end());
  struct Edge {
    Var a, u;
  };
  std::vector<Edge> crossing;
  for (const Clause& c : f.clauses()) {
    auto vars = c.variables();
    bool p0 = sigma.position(vars[0]) < prefix_len;
    bool p1 = sigma.position(vars[1]) < prefix_len;
    if (p0 == p1) continue;
    crossing.push_back(p0 ? Edge{vars[0], vars[1]} : Edge{vars[1], vars[0]});
  }
  int m = (int)crossing.size();
  int best = 0;
  for (std::uint32_t subset = 0; subset < (1u << m); ++subset) {
    std::vector<Edge> chosen;
    for (int i = 0; i < m; ++i)
      if (subset & (1u << i)) chosen.push_back(crossing[i]);
    bool ok = true;
    for (std::size_t i = 0; i < chosen.size() && ok; ++i)
      for (std::size_t j = 0; j < chosen.size() && ok; ++j) {
        if (i == j) continue;
        if (chosen[i].a == chosen[j].a || chosen[i].u == chosen[j].u)
          ok = false;
        else if (clause_set.count(Clause::of({chosen[i].a, chosen[j].a})))
          ok = false;
        else if (clause_set.count(Clause::of({chosen[i].a, chosen[j].u})))
          ok = false;
      }
    if (ok) best = std::max(best, (int)chosen.size());
  }
  return best;
}

std::pair<long long, Ordering> stw_exact_unpruned(const Cnf& f) {
  if (f.var_count() == 0) return {1, Ordering()};
  std::vector<Var> perm = f.variables();
  long long best = -1;
  Ordering best_order;
  do {
    Ordering o = Ordering::of(perm);
    long long w = stw_for_ordering(f, o).width;
    if (best < 0 || w < best) {
      best = w;
      best_order = o;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return {best, best_order};
}

namespace {

bool acyclic_after_removal(const AdjacencyGraph& g,
                           const std::vector<int>& removed) {
  std::set<int> gone(removed.begin(), removed.end());
  std::vector<int> dsu(g.n);
  std::iota(dsu.begin(), dsu.end(), 0);
  auto find = [&](int x) {
    while (dsu[x] != x) x = dsu[x] = dsu[dsu[x]];
    return x;
  };
  for (int u = 0; u < g.n; ++u) {
    if (gone.count(u)) continue;
    for (int v : g.adj[u]) {
      if (v < u || gone.count(v)) continue;
      int ru = find(u), rv = find(v);
      if (ru == rv) return false;
      dsu[ru] = rv;
    }
  }
  return true;
}

bool fvs_of_size(const AdjacencyGraph& g, int size, int start,
                 std::vector<int>& chosen, std::vector<int>& out) {
  if ((int)chosen.size() == size) {
    if (acyclic_after_removal(g, chosen)) {
      out = chosen;
      return true;
    }
    return false;
  }
  for (int v = start; v < g.n; ++v) {
    chosen.push_back(v);
    if (fvs_of_size(g, size, v + 1, chosen, out)) return true;
    chosen.pop_back();
  }
  return false;
}

}  // namespace

std::vector<int> fvs_oracle(const AdjacencyGraph& g) {
  for (int size = 0; size <= g.n; ++size) {
    std::vector<int> chosen, out;
    if (fvs_of_size(g, size, 0, chosen, out)) return out;
  }
  return {};
}

bool fooling_set_semantic_oracle(const Cnf& f, const LowerBoundWitness& w) {
  int e = w.size();
  std::vector<Var> prefix_vars, suffix_vars;
  for (int i = 0; i < w.ordering.size(); ++i)
    (i < w.prefix_len ? prefix_vars : suffix_vars).push_back(w.ordering.at(i));

  std::set<std::vector<int>> tables;
  for (std::uint32_t m = 0; m < (1u << e); ++m) {
    Assignment prefix;
    for (Var v : prefix_vars) prefix[v] = true;
    for (int k = 0; k < e; ++k) prefix[w.a_vars[k]] = (m >> k) & 1;
    std::vector<int> table;
    for_each_assignment(suffix_vars, [&](const Assignment& suffix) {
      Assignment full = prefix;
      for (auto& [v, b] : suffix) full[v] = b;
      table.push_back(eval_direct(f, full));
    });
    tables.insert(table);
  }
  return (int)tables.size() == (1 << e);
}

/* ---- generators ---- */

namespace {

int pair_index(int i, int j, int n) {
  // 0 <= i < j < n
  int idx = 0;
  for (int a = 0; a < i; ++a) idx += n - a - 1;
  return idx + (j - i - 1);
}

bool mask_connected(std::uint64_t mask, int n) {
  if (n == 1) return true;
  std::vector<int> dsu(n);
  std::iota(dsu.begin(), dsu.end(), 0);
  auto find = [&](int x) {
    while (dsu[x] != x) x = dsu[x] = dsu[dsu[x]];
    return x;
  };
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (mask & (1ull << pair_index(i, j, n))) dsu[find(i)] = find(j);
  int root = find(0);
  for (int v = 1; v < n; ++v)
    if (find(v) != root) return false;
  return true;
}

std::uint64_t permute_mask(std::uint64_t mask, const std::vector<int>& perm,
                           int n) {
  std::uint64_t out = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (mask & (1ull << pair_index(i, j, n))) {
        int a = perm[i], b = perm[j];
        if (a > b) std::swap(a, b);
        out |= 1ull << pair_index(a, b, n);
      }
  return out;
}

}  // namespace

std::vector<SimpleGraph> connected_graphs_up_to_iso(int n) {
  std::vector<SimpleGraph> out;
  if (n < 1 || n > 6) return out;
  int pairs = n * (n - 1) / 2;
  std::vector<std::vector<int>> perms;
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    perms.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));

  for (std::uint64_t mask = 0; mask < (1ull << pairs); ++mask) {
    if (!mask_connected(mask, n)) continue;
    bool canonical = true;
    for (const auto& p : perms)
      if (permute_mask(mask, p, n) < mask) {
        canonical = false;
        break;
      }
    if (!canonical) continue;
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (mask & (1ull << pair_index(i, j, n))) edges.push_back({i + 1, j + 1});
    out.push_back(SimpleGraph::of(n, std::move(edges)));
  }
  return out;
}

Cnf random_cnf(Rng& rng, int max_vars, int max_clauses, int max_width) {
  int n = 1 + (int)(rng() % max_vars);
  int m = 1 + (int)(rng() % max_clauses);
  std::vector<std::vector<Lit>> clauses;
  for (int c = 0; c < m; ++c) {
    int w = 1 + (int)(rng() % std::min(max_width, n));
    std::vector<Var> pool(n);
    std::iota(pool.begin(), pool.end(), 1);
    for (std::size_t i = pool.size() - 1; i > 0; --i)
      std::swap(pool[i], pool[rng() % (i + 1)]);
    std::vector<Lit> lits;
    for (int k = 0; k < w; ++k)
      lits.push_back(make_lit(pool[k], rng() % 2 == 0));
    clauses.push_back(lits);
  }
  return Cnf::of(clauses);
}

Ordering random_ordering(Rng& rng, const std::vector<Var>& vars) {
  std::vector<Var> perm = vars;
  for (std::size_t i = perm.size(); i > 1; --i)
    std::swap(perm[i - 1], perm[rng() % i]);
  return Ordering::of(std::move(perm));
}

Cnf random_convex_cnf(Rng& rng, int max_vars, int max_clauses) {
  int n = 2 + (int)(rng() % std::max(1, max_vars - 1));
  std::vector<Var> axis(n);
  std::iota(axis.begin(), axis.end(), 1);
  for (std::size_t i = axis.size() - 1; i > 0; --i)
    std::swap(axis[i], axis[rng() % (i + 1)]);
  int m = 1 + (int)(rng() % max_clauses);
  std::vector<std::vector<Lit>> clauses;
  for (int c = 0; c < m; ++c) {
    int i = (int)(rng() % n);
    int span = 1 + (int)(rng() % std::min<std::size_t>(4, n - i));
    std::vector<Lit> lits;
    for (int k = i; k < i + span; ++k)
      lits.push_back(make_lit(axis[k], rng() % 2 == 0));
    clauses.push_back(lits);
  }
  return Cnf::of(clauses);
}

namespace {

struct BipartiteTreeNode {
  bool is_var;
  int structural_id;       // var id or clause slot
  std::vector<int> vars;   // clause slots only: incident var ids
};

// Finds the index of a clause in the canonical clause list.
int clause_index_in(const Cnf& f, const Clause& c) {
  for (int i = 0; i < f.clause_count(); ++i)
    if (f.clauses()[i] == c) return i;
  throw std::logic_error("clause not found in canonical list");
}

}  // namespace

Cnf random_tree_cnf(Rng& rng, int total_vertices) {
  // grow a bipartite tree: variable nodes and clause nodes alternate types
  std::vector<int> var_nodes{1};  // var ids
  struct ClauseNode {
    std::vector<Var> vars;
  };
  std::vector<ClauseNode> clause_nodes;
  int next_var = 2;

  // first attachment keeps every variable covered
  clause_nodes.push_back({{1}});
  for (int step = 2; step < total_vertices; ++step) {
    if (rng() % 2 == 0 && !clause_nodes.empty()) {
      // new variable under a random clause
      std::size_t c = rng() % clause_nodes.size();
      clause_nodes[c].vars.push_back(next_var);
      var_nodes.push_back(next_var);
      ++next_var;
    } else {
      // new clause under a random variable, capped unit duplicates
      for (int attempt = 0; attempt < 20; ++attempt) {
        Var v = var_nodes[rng() % var_nodes.size()];
        int unit_count = 0;
        for (const auto& cn : clause_nodes)
          if (cn.vars.size() == 1 && cn.vars[0] == v) ++unit_count;
        if (unit_count >= 2) continue;
        clause_nodes.push_back({{v}});
        break;
      }
    }
  }

  // assign signs, keeping literal sets distinct
  std::set<std::vector<Lit>> used;
  std::vector<std::vector<Lit>> clause_lits;
  for (const auto& cn : clause_nodes) {
    std::vector<Lit> lits;
    for (Var v : cn.vars) lits.push_back(make_lit(v, rng() % 2 == 0));
    std::sort(lits.begin(), lits.end());
    if (used.count(lits)) {
      for (std::size_t k = 0; k < lits.size() && used.count(lits); ++k) {
        lits[k] = -lits[k];
        std::sort(lits.begin(), lits.end());
      }
    }
    if (!used.insert(lits).second) continue;  // give up on this clause
    clause_lits.push_back(lits);
  }
  return Cnf::of(clause_lits);
}

InstanceWithPath random_caterpillar_cnf(Rng& rng, int spine_len,
                                        int max_legs) {
  spine_len = std::max(2, spine_len);
  struct Vertex {
    bool is_var;
    Var var = 0;        // var vertices
    int clause_slot = -1;  // clause vertices
  };
  std::vector<Vertex> spine(spine_len);
  std::vector<std::vector<Var>> clause_vars;  // per clause slot
  std::vector<std::vector<std::pair<bool, int>>> legs(spine_len);
  int next_var = 1;

  for (int i = 0; i < spine_len; ++i) {
    spine[i].is_var = (i % 2 == 0);
    if (spine[i].is_var) {
      spine[i].var = next_var++;
    } else {
      spine[i].clause_slot = (int)clause_vars.size();
      clause_vars.push_back({});
    }
  }
  // spine adjacency
  for (int i = 0; i < spine_len; ++i) {
    if (spine[i].is_var) continue;
    if (i > 0) clause_vars[spine[i].clause_slot].push_back(spine[i - 1].var);
    if (i + 1 < spine_len)
      clause_vars[spine[i].clause_slot].push_back(spine[i + 1].var);
  }
  // legs: clause legs on var vertices (at most two, opposite signs), var legs
  // on clause vertices
  std::vector<std::pair<std::vector<Var>, int>> unit_legs;  // ({v}, sign idx)
  for (int i = 0; i < spine_len; ++i) {
    int count = (int)(rng() % (max_legs + 1));
    for (int k = 0; k < count; ++k) {
      if (spine[i].is_var) {
        int existing = 0;
        for (auto& [on_var, slot] : legs[i])
          if (on_var) ++existing;
        if (existing >= 2) break;
        int slot = (int)clause_vars.size();
        clause_vars.push_back({spine[i].var});
        legs[i].push_back({true, slot});
      } else {
        Var v = next_var++;
        clause_vars[spine[i].clause_slot].push_back(v);
        legs[i].push_back({false, v});
      }
    }
  }

  // literals, distinct sets
  std::set<std::vector<Lit>> used;
  std::vector<Clause> clauses(clause_vars.size());
  for (std::size_t c = 0; c < clause_vars.size(); ++c) {
    std::vector<Lit> lits;
    for (Var v : clause_vars[c]) lits.push_back(make_lit(v, rng() % 2 == 0));
    std::sort(lits.begin(), lits.end());
    for (std::size_t k = 0; k < lits.size() && used.count(lits); ++k) {
      lits[k] = -lits[k];
      std::sort(lits.begin(), lits.end());
    }
    if (used.count(lits))
      throw std::logic_error("caterpillar: could not keep clauses distinct");
    used.insert(lits);
    clauses[c] = Clause::of(lits);
  }
  InstanceWithPath result;
  result.f = Cnf::from_clauses(clauses);

  // combined incidence numbering
  int nv = result.f.var_count();
  auto var_vertex = [&](Var v) { return v - 1; };
  auto clause_vertex = [&](int slot) {
    return nv + clause_index_in(result.f, clauses[slot]);
  };
  auto spine_vertex = [&](int i) {
    return spine[i].is_var ? var_vertex(spine[i].var)
                           : clause_vertex(spine[i].clause_slot);
  };

  // width-1 sweep: legs of s_i, then the bag {s_i, s_i+1}
  for (int i = 0; i < spine_len; ++i) {
    for (auto& [is_clause_leg, payload] : legs[i]) {
      int leg_vertex =
          is_clause_leg ? clause_vertex(payload) : var_vertex(payload);
      std::vector<int> bag{spine_vertex(i), leg_vertex};
      std::sort(bag.begin(), bag.end());
      result.pd.bags.push_back(bag);
    }
    if (i + 1 < spine_len) {
      std::vector<int> bag{spine_vertex(i), spine_vertex(i + 1)};
      std::sort(bag.begin(), bag.end());
      result.pd.bags.push_back(bag);
    }
  }
  if (result.pd.bags.empty())
    result.pd.bags.push_back({spine_vertex(0)});
  return result;
}

InstanceWithPath grid_cnf(int cols) {
  // 2 x cols grid, checkerboard split into variables and clauses
  auto is_var_cell = [](int r, int c) { return (r + c) % 2 == 0; };
  std::vector<std::vector<Var>> cell_var(2, std::vector<Var>(cols, 0));
  int next_var = 1;
  for (int c = 0; c < cols; ++c)
    for (int r = 0; r < 2; ++r)
      if (is_var_cell(r, c)) cell_var[r][c] = next_var++;

  std::vector<std::pair<int, int>> clause_cells;
  std::vector<Clause> clauses;
  for (int c = 0; c < cols; ++c)
    for (int r = 0; r < 2; ++r) {
      if (is_var_cell(r, c)) continue;
      std::vector<Lit> lits;
      auto add = [&](int rr, int cc) {
        if (rr < 0 || rr > 1 || cc < 0 || cc >= cols) return;
        lits.push_back(cell_var[rr][cc]);
      };
      add(1 - r, c);
      add(r, c - 1);
      add(r, c + 1);
      clause_cells.push_back({r, c});
      clauses.push_back(Clause::of(lits));
    }

  InstanceWithPath result;
  result.f = Cnf::from_clauses(clauses);
  int nv = result.f.var_count();
  auto vertex = [&](int r, int c) {
    if (is_var_cell(r, c)) return (int)cell_var[r][c] - 1;
    for (std::size_t k = 0; k < clause_cells.size(); ++k)
      if (clause_cells[k] == std::make_pair(r, c))
        return nv + clause_index_in(result.f, clauses[k]);
    throw std::logic_error("grid: unknown cell");
  };

  if (cols == 1) {
    result.pd.bags.push_back({vertex(0, 0), vertex(1, 0)});
    std::sort(result.pd.bags[0].begin(), result.pd.bags[0].end());
    return result;
  }
  for (int c = 0; c + 1 < cols; ++c) {
    std::vector<int> b1{vertex(0, c), vertex(1, c), vertex(0, c + 1)};
    std::vector<int> b2{vertex(1, c), vertex(0, c + 1), vertex(1, c + 1)};
    std::sort(b1.begin(), b1.end());
    std::sort(b2.begin(), b2.end());
    result.pd.bags.push_back(b1);
    result.pd.bags.push_back(b2);
  }
  return result;
}

}  // namespace obddc::testing
