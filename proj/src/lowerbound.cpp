#include "obddc/lowerbound.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <istream>
#include <limits>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <unordered_map>

#include "obddc/compiler.hpp"
#include "obddc/obdd.hpp"

namespace obddc {

Rational Rational::of(long long num, long long den) {
  if (den == 0) throw DomainError("rational: zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  long long g = std::gcd(num < 0 ? -num : num, den);
  if (g == 0) g = 1;
  return Rational{num / g, den / g};
}

std::string Rational::str() const {
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

SimpleGraph SimpleGraph::of(int n, std::vector<std::pair<int, int>> edges) {
  if (n < 0) throw DomainError("graph: negative vertex count");
  for (auto& [u, v] : edges) {
    if (u == v) throw DomainError("graph: self-loop");
    if (u < 1 || v < 1 || u > n || v > n)
      throw DomainError("graph: vertex out of range");
    if (u > v) std::swap(u, v);
  }
  std::sort(edges.begin(), edges.end());
  auto dup = std::adjacent_find(edges.begin(), edges.end());
  if (dup != edges.end()) throw DomainError("graph: duplicate edge");
  SimpleGraph g;
  g.n = n;
  g.edges = std::move(edges);
  return g;
}

std::vector<std::vector<int>> SimpleGraph::adjacency() const {
  std::vector<std::vector<int>> adj(n + 1);
  for (auto [u, v] : edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  for (auto& a : adj) std::sort(a.begin(), a.end());
  return adj;
}

std::vector<std::uint32_t> SimpleGraph::adjacency_masks() const {
  std::vector<std::uint32_t> masks(n + 1, 0);
  for (auto [u, v] : edges) {
    masks[u] |= 1u << (v - 1);
    masks[v] |= 1u << (u - 1);
  }
  return masks;
}

int SimpleGraph::max_degree() const {
  std::vector<int> deg(n + 1, 0);
  for (auto [u, v] : edges) {
    ++deg[u];
    ++deg[v];
  }
  return deg.empty() ? 0 : *std::max_element(deg.begin(), deg.end());
}

bool SimpleGraph::has_isolated_vertex() const {
  std::vector<bool> touched(n + 1, false);
  for (auto [u, v] : edges) touched[u] = touched[v] = true;
  for (int v = 1; v <= n; ++v)
    if (!touched[v]) return true;
  return false;
}

bool SimpleGraph::has_edge(int u, int v) const {
  if (u > v) std::swap(u, v);
  return std::binary_search(edges.begin(), edges.end(), std::make_pair(u, v));
}

Rational expansion_constant(const SimpleGraph& g, const Guards& guards) {
  if (g.n < 2) throw DomainError("expansion: need at least two vertices");
  if (g.n > guards.expansion_vertices)
    throw GuardError("expansion: " + std::to_string(g.n) +
                     " vertices exceed guard " +
                     std::to_string(guards.expansion_vertices));
  auto masks = g.adjacency_masks();
  int half = g.n / 2;
  Rational best{-1, 1};
  for (std::uint32_t w = 1; w < (1u << g.n); ++w) {
    int size = std::popcount(w);
    if (size > half) continue;
    std::uint32_t nb = 0;
    for (int v = 1; v <= g.n; ++v)
      if (w & (1u << (v - 1))) nb |= masks[v];
    nb &= ~w;
    Rational ratio = Rational::of(std::popcount(nb), size);
    if (best.num < 0 || ratio < best) best = ratio;
  }
  return best;
}

ExpanderCertificate certify_expander(const SimpleGraph& g,
                                     const Guards& guards) {
  return {g.n, g.max_degree(), expansion_constant(g, guards)};
}

SimpleGraph gen_random_regular(int n, int d, std::uint64_t seed) {
  if (d <= 0 || d >= n)
    throw DomainError("random regular: need 0 < d < n");
  if ((static_cast<long long>(n) * d) % 2 != 0)
    throw DomainError("random regular: n*d must be even");

  std::mt19937_64 rng(seed);
  std::vector<int> stubs;
  stubs.reserve(static_cast<std::size_t>(n) * d);
  for (int attempt = 0; attempt < 10000; ++attempt) {
    stubs.clear();
    for (int v = 1; v <= n; ++v)
      for (int k = 0; k < d; ++k) stubs.push_back(v);
    // Fisher-Yates with explicit draws, identical across platforms
    for (std::size_t i = stubs.size() - 1; i > 0; --i)
      std::swap(stubs[i], stubs[rng() % (i + 1)]);
    std::set<std::pair<int, int>> edges;
    bool ok = true;
    for (std::size_t i = 0; i + 1 < stubs.size() && ok; i += 2) {
      int u = stubs[i], v = stubs[i + 1];
      if (u == v) ok = false;
      if (u > v) std::swap(u, v);
      if (ok && !edges.insert({u, v}).second) ok = false;
    }
    if (ok)
      return SimpleGraph::of(
          n, std::vector<std::pair<int, int>>(edges.begin(), edges.end()));
  }
  throw GuardError("random regular: pairing retries exhausted");
}

Cnf graph_cnf(const SimpleGraph& g) {
  if (g.has_isolated_vertex())
    throw DomainError("graph_cnf: isolated vertex present");
  std::vector<Clause> clauses;
  clauses.reserve(g.edges.size());
  for (auto [u, v] : g.edges) clauses.push_back(Clause::of({u, v}));
  return Cnf::from_clauses(std::move(clauses));
}

bool is_graph_cnf(const Cnf& f) {
  for (const Clause& c : f.clauses()) {
    if (c.width() != 2) return false;
    for (Lit l : c.literals())
      if (lit_negated(l)) return false;
  }
  return true;
}

/* ---------------- productive sets ---------------- */

bool validate_witness(const Cnf& f, const LowerBoundWitness& w) {
  if (!is_graph_cnf(f)) return false;
  if (!w.ordering.covers_exactly(f.variables())) return false;
  if (w.prefix_len < 0 || w.prefix_len > w.ordering.size()) return false;
  std::size_t e = w.clauses.size();
  if (w.a_vars.size() != e || w.u_vars.size() != e) return false;

  auto in_prefix = [&](Var v) {
    return w.ordering.contains(v) && w.ordering.position(v) < w.prefix_len;
  };
  for (std::size_t i = 0; i < e; ++i) {
    if (!f.contains_var(w.a_vars[i]) || !f.contains_var(w.u_vars[i]))
      return false;
    if (!in_prefix(w.a_vars[i]) || in_prefix(w.u_vars[i])) return false;
    if (!(Clause::of({w.a_vars[i], w.u_vars[i]}) == w.clauses[i])) return false;
    if (!f.contains_clause(w.clauses[i])) return false;
  }
  for (std::size_t i = 0; i < e; ++i)
    for (std::size_t j = 0; j < e; ++j) {
      if (i == j) continue;
      if (w.a_vars[i] == w.a_vars[j] || w.u_vars[i] == w.u_vars[j])
        return false;
      if (f.contains_clause(Clause::of({w.a_vars[i], w.a_vars[j]})))
        return false;
      if (f.contains_clause(Clause::of({w.a_vars[i], w.u_vars[j]})))
        return false;
    }
  return true;
}

namespace {

struct CrossingEdge {
  Var a;  // prefix side
  Var u;  // suffix side
};

// Prefix-crossing clauses, sorted by (a, u).
std::vector<CrossingEdge> crossing_edges(const Cnf& f, const Ordering& sigma,
                                         int prefix_len) {
  std::vector<CrossingEdge> out;
  for (const Clause& c : f.clauses()) {
    auto vars = c.variables();
    bool p0 = sigma.position(vars[0]) < prefix_len;
    bool p1 = sigma.position(vars[1]) < prefix_len;
    if (p0 == p1) continue;
    out.push_back(p0 ? CrossingEdge{vars[0], vars[1]}
                     : CrossingEdge{vars[1], vars[0]});
  }
  std::sort(out.begin(), out.end(), [](const CrossingEdge& x,
                                       const CrossingEdge& y) {
    return std::tie(x.a, x.u) < std::tie(y.a, y.u);
  });
  return out;
}

// Conflict masks of the productive-set side conditions over the candidate
// crossing edges.
std::vector<std::uint32_t> conflict_masks(const Cnf& f,
                                          const std::vector<CrossingEdge>& cand) {
  int m = static_cast<int>(cand.size());
  std::vector<std::uint32_t> conflict(m, 0);
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      bool clash = cand[i].a == cand[j].a || cand[i].u == cand[j].u ||
                   f.contains_clause(Clause::of({cand[i].a, cand[j].a})) ||
                   f.contains_clause(Clause::of({cand[i].a, cand[j].u})) ||
                   f.contains_clause(Clause::of({cand[j].a, cand[i].u}));
      if (clash) {
        conflict[i] |= 1u << j;
        conflict[j] |= 1u << i;
      }
    }
  return conflict;
}

// Maximum independent set in the conflict graph, branch and bound with the
// remaining-candidates bound. Deterministic: include-lowest-index first.
void mis_search(const std::vector<std::uint32_t>& conflict,
                std::uint32_t allowed, std::vector<int>& chosen,
                std::vector<int>& best) {
  if (chosen.size() + static_cast<std::size_t>(std::popcount(allowed)) <=
      best.size())
    return;
  if (allowed == 0) {
    if (chosen.size() > best.size()) best = chosen;
    return;
  }
  int v = std::countr_zero(allowed);
  chosen.push_back(v);
  mis_search(conflict, allowed & ~conflict[v] & ~(1u << v), chosen, best);
  chosen.pop_back();
  mis_search(conflict, allowed & ~(1u << v), chosen, best);
}

int max_productive_count(const Cnf& f, const std::vector<CrossingEdge>& cand) {
  auto conflict = conflict_masks(f, cand);
  std::vector<int> chosen, best;
  std::uint32_t all =
      cand.size() >= 32 ? ~0u : ((1u << cand.size()) - 1);
  mis_search(conflict, all, chosen, best);
  return static_cast<int>(best.size());
}

}  // namespace

LowerBoundWitness max_productive_set(const Cnf& f, const Ordering& sigma,
                                     int prefix_len, const Guards& guards) {
  if (!is_graph_cnf(f))
    throw DomainError("max_productive_set: not a graph CNF");
  if (!sigma.covers_exactly(f.variables()))
    throw DomainError("max_productive_set: ordering domain mismatch");
  if (prefix_len < 0 || prefix_len > sigma.size())
    throw DomainError("max_productive_set: prefix length out of range");
  if (f.clause_count() > guards.productive_clauses)
    throw GuardError("max_productive_set: " +
                     std::to_string(f.clause_count()) +
                     " clauses exceed guard " +
                     std::to_string(guards.productive_clauses));

  auto cand = crossing_edges(f, sigma, prefix_len);
  auto conflict = conflict_masks(f, cand);
  std::vector<int> chosen, best;
  std::uint32_t all = cand.size() >= 32 ? ~0u : ((1u << cand.size()) - 1);
  mis_search(conflict, all, chosen, best);

  LowerBoundWitness w;
  w.ordering = sigma;
  w.prefix_len = prefix_len;
  for (int i : best) {
    w.a_vars.push_back(cand[i].a);
    w.u_vars.push_back(cand[i].u);
    w.clauses.push_back(Clause::of({cand[i].a, cand[i].u}));
  }
  return w;
}

std::pair<int, LowerBoundWitness> sfw_exact(const Cnf& f,
                                            const Guards& guards) {
  if (!is_graph_cnf(f)) throw DomainError("sfw_exact: not a graph CNF");
  int n = f.var_count();
  if (n > guards.sfw_exact_vars)
    throw GuardError("sfw_exact: " + std::to_string(n) +
                     " variables exceed guard " +
                     std::to_string(guards.sfw_exact_vars));
  if (n == 0) return {0, LowerBoundWitness{}};

  const std::vector<Var>& vars = f.variables();

  // The largest productive set depends only on the prefix as a set.
  std::unordered_map<std::uint32_t, int> memo;
  auto cut_value = [&](std::uint32_t mask) {
    auto it = memo.find(mask);
    if (it != memo.end()) return it->second;
    std::vector<CrossingEdge> cand;
    for (const Clause& c : f.clauses()) {
      auto cv = c.variables();
      int i0 = static_cast<int>(std::lower_bound(vars.begin(), vars.end(),
                                                 cv[0]) -
                                vars.begin());
      int i1 = static_cast<int>(std::lower_bound(vars.begin(), vars.end(),
                                                 cv[1]) -
                                vars.begin());
      bool p0 = mask & (1u << i0), p1 = mask & (1u << i1);
      if (p0 == p1) continue;
      cand.push_back(p0 ? CrossingEdge{cv[0], cv[1]}
                        : CrossingEdge{cv[1], cv[0]});
    }
    std::sort(cand.begin(), cand.end(), [](const CrossingEdge& x,
                                           const CrossingEdge& y) {
      return std::tie(x.a, x.u) < std::tie(y.a, y.u);
    });
    int value = max_productive_count(f, cand);
    memo[mask] = value;
    return value;
  };

  int best = std::numeric_limits<int>::max();
  std::vector<int> best_perm, current;
  auto rec = [&](auto&& self, std::uint32_t used, int running_max) -> void {
    if (running_max >= best) return;
    if (static_cast<int>(current.size()) == n) {
      best = running_max;
      best_perm = current;
      return;
    }
    for (int i = 0; i < n; ++i) {
      if (used & (1u << i)) continue;
      std::uint32_t next = used | (1u << i);
      current.push_back(i);
      self(self, next, std::max(running_max, cut_value(next)));
      current.pop_back();
    }
  };
  rec(rec, 0, 0);

  std::vector<Var> order;
  order.reserve(n);
  for (int i : best_perm) order.push_back(vars[i]);
  Ordering sigma = Ordering::of(std::move(order));

  // witness at the first prefix attaining the width
  std::uint32_t mask = 0;
  for (int len = 1; len <= n; ++len) {
    int idx = static_cast<int>(std::lower_bound(vars.begin(), vars.end(),
                                                sigma.at(len - 1)) -
                               vars.begin());
    mask |= 1u << idx;
    if (cut_value(mask) == best)
      return {best, max_productive_set(f, sigma, len, guards)};
  }
  // width 0: every cut is empty of productive edges
  LowerBoundWitness w;
  w.ordering = sigma;
  w.prefix_len = n > 0 ? 1 : 0;
  return {best, w};
}

LowerBoundWitness greedy_productive(const Cnf& f, const Ordering& sigma) {
  if (!is_graph_cnf(f))
    throw DomainError("greedy_productive: not a graph CNF");
  if (!sigma.covers_exactly(f.variables()))
    throw DomainError("greedy_productive: ordering domain mismatch");

  int n = sigma.size();
  int prefix_len = n / 2;
  LowerBoundWitness w;
  w.ordering = sigma;
  w.prefix_len = prefix_len;

  std::set<Var> prefix;
  for (int i = 0; i < prefix_len; ++i) prefix.insert(sigma.at(i));

  std::unordered_map<Var, std::vector<Var>> adj;
  for (const Clause& c : f.clauses()) {
    auto cv = c.variables();
    adj[cv[0]].push_back(cv[1]);
    adj[cv[1]].push_back(cv[0]);
  }

  // alive sides: the prefix, and the prefix's outside neighborhood
  std::set<Var> alive_a = prefix, alive_b;
  for (Var a : prefix)
    for (Var nbr : adj[a])
      if (!prefix.count(nbr)) alive_b.insert(nbr);

  while (true) {
    // least crossing edge between the alive sides
    Var pick_a = 0, pick_u = 0;
    for (Var a : alive_a) {
      for (Var nbr : adj[a]) {
        if (!alive_b.count(nbr)) continue;
        if (pick_a == 0 || std::tie(a, nbr) < std::tie(pick_a, pick_u)) {
          pick_a = a;
          pick_u = nbr;
        }
      }
    }
    if (pick_a == 0) break;
    w.a_vars.push_back(pick_a);
    w.u_vars.push_back(pick_u);
    w.clauses.push_back(Clause::of({pick_a, pick_u}));
    // delete neigh(a) everywhere and neigh(u) inside the prefix
    for (Var nbr : adj[pick_a]) {
      alive_a.erase(nbr);
      alive_b.erase(nbr);
    }
    for (Var nbr : adj[pick_u])
      if (prefix.count(nbr)) alive_a.erase(nbr);
  }
  return w;
}

bool verify_fooling_set(const Cnf& f, const LowerBoundWitness& w,
                        const Guards& guards) {
  if (!w.ordering.covers_exactly(f.variables()))
    throw DomainError("verify_fooling_set: ordering domain mismatch");
  if (w.prefix_len < 0 || w.prefix_len > w.ordering.size())
    throw DomainError("verify_fooling_set: prefix length out of range");
  int e = w.size();
  if (e > guards.fooling_log2)
    throw GuardError("verify_fooling_set: 2^" + std::to_string(e) +
                     " assignments exceed guard 2^" +
                     std::to_string(guards.fooling_log2));
  for (int i = 0; i < e; ++i) {
    if (w.ordering.position(w.a_vars[i]) >= w.prefix_len ||
        w.ordering.position(w.u_vars[i]) < w.prefix_len)
      throw DomainError("verify_fooling_set: witness sides are malformed");
  }
  if (e == 0) return true;

  std::vector<Var> prefix_vars, suffix_vars;
  for (int i = 0; i < w.ordering.size(); ++i)
    (i < w.prefix_len ? prefix_vars : suffix_vars).push_back(w.ordering.at(i));

  // value[m][i]: F under the prefix assignment encoded by m (a-vars by bit,
  // everything else 1) completed by zeroing u_i outside the prefix.
  auto eval_completed = [&](std::uint32_t m, int i) {
    Assignment full;
    for (Var v : prefix_vars) full[v] = true;
    for (int k = 0; k < e; ++k) full[w.a_vars[k]] = (m >> k) & 1;
    for (Var v : suffix_vars) full[v] = (v != w.u_vars[i]);
    return eval(f, full);
  };

  std::uint32_t count = 1u << e;
  std::vector<std::vector<int>> value(count, std::vector<int>(e));
  for (std::uint32_t m = 0; m < count; ++m)
    for (int i = 0; i < e; ++i) value[m][i] = eval_completed(m, i);

  // Assignments first differing at a_i must be separated by the completion
  // that zeroes u_i: within each fixing of the lower bits, the side with
  // a_i = 0 and the side with a_i = 1 must be constant and opposite.
  for (int i = 0; i < e; ++i) {
    std::uint32_t low_mask = (1u << i) - 1;
    std::unordered_map<std::uint32_t, std::array<std::set<int>, 2>> groups;
    for (std::uint32_t m = 0; m < count; ++m)
      groups[m & low_mask][(m >> i) & 1].insert(value[m][i]);
    for (auto& [low, sides] : groups) {
      if (sides[0].size() != 1 || sides[1].size() != 1) return false;
      if (*sides[0].begin() == *sides[1].begin()) return false;
    }
  }
  return true;
}

std::pair<long long, Ordering> min_obdd_size_exact(const Cnf& f,
                                                   const Guards& guards) {
  int n = f.var_count();
  if (n > guards.min_obdd_vars)
    throw GuardError("min_obdd_size_exact: " + std::to_string(n) +
                     " variables exceed guard " +
                     std::to_string(guards.min_obdd_vars));
  std::vector<Var> perm = f.variables();
  long long best = std::numeric_limits<long long>::max();
  Ordering best_order;
  do {
    auto [d, report] = compile_with_ordering(f, Ordering::of(perm));
    if (report.size_after_reduce < best) {
      best = report.size_after_reduce;
      best_order = Ordering::of(perm);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return {best, best_order};
}

/* ---------------- files ---------------- */

SimpleGraph read_edge_list(std::istream& in) {
  int n;
  long long m;
  if (!(in >> n >> m)) throw ParseError("edge list: missing n m header");
  std::vector<std::pair<int, int>> edges;
  for (long long i = 0; i < m; ++i) {
    int u, v;
    if (!(in >> u >> v))
      throw ParseError("edge list: expected " + std::to_string(m) + " edges");
    edges.push_back({u, v});
  }
  try {
    return SimpleGraph::of(n, std::move(edges));
  } catch (const DomainError& e) {
    throw ParseError(std::string("edge list: ") + e.what());
  }
}

std::string write_edge_list(const SimpleGraph& g) {
  std::ostringstream out;
  out << g.n << ' ' << g.edges.size() << '\n';
  for (auto [u, v] : g.edges) out << u << ' ' << v << '\n';
  return out.str();
}

std::string SweepRow::csv() const {
  std::ostringstream out;
  out << n << ',' << d << ',' << c.str() << ',' << sfw_lb << ',';
  if (sfw) out << *sfw;
  out << ',';
  if (min_obdd) out << *min_obdd;
  out << ',';
  if (sfw) out << (1ll << *sfw);
  return out.str();
}

}  // namespace obddc
