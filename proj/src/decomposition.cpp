#include "obddc/decomposition.hpp"

#include <algorithm>
#include <deque>
#include <istream>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>

namespace obddc {

int TreeDecomposition::width() const {
  int w = -1;
  for (const auto& b : bags) w = std::max(w, static_cast<int>(b.size()) - 1);
  return w;
}

int PathDecomposition::width() const {
  int w = -1;
  for (const auto& b : bags) w = std::max(w, static_cast<int>(b.size()) - 1);
  return w;
}

namespace {

bool bag_has(const std::vector<int>& bag, int v) {
  return std::binary_search(bag.begin(), bag.end(), v);
}

bool covers_vertices_and_edges(const AdjacencyGraph& g,
                               const std::vector<std::vector<int>>& bags) {
  std::vector<bool> seen(g.n, false);
  for (const auto& b : bags)
    for (int v : b) {
      if (v < 0 || v >= g.n) return false;
      seen[v] = true;
    }
  for (int v = 0; v < g.n; ++v)
    if (!seen[v]) return false;
  for (int u = 0; u < g.n; ++u)
    for (int v : g.adj[u]) {
      if (v < u) continue;
      bool covered = false;
      for (const auto& b : bags)
        if (bag_has(b, u) && bag_has(b, v)) {
          covered = true;
          break;
        }
      if (!covered) return false;
    }
  return true;
}

}  // namespace

bool validate_tree_decomposition(const AdjacencyGraph& g,
                                 const TreeDecomposition& t) {
  if (t.bags.size() != t.parent.size()) return false;
  if (t.bags.empty()) return g.n == 0;

  // parent links must form one rooted tree
  int roots = 0;
  for (int p : t.parent) {
    if (p == -1)
      ++roots;
    else if (p < 0 || p >= t.bag_count())
      return false;
  }
  if (roots != 1) return false;
  std::vector<int> depth(t.bag_count(), -1);
  for (int i = 0; i < t.bag_count(); ++i) {
    int steps = 0, cur = i;
    while (cur != -1 && steps <= t.bag_count()) {
      cur = t.parent[cur];
      ++steps;
    }
    if (cur != -1) return false;  // cycle
    depth[i] = steps;
  }

  if (!covers_vertices_and_edges(g, t.bags)) return false;

  // connectivity: for each vertex, the bags containing it induce a subtree
  std::vector<std::vector<int>> children(t.bag_count());
  int root = -1;
  for (int i = 0; i < t.bag_count(); ++i) {
    if (t.parent[i] == -1)
      root = i;
    else
      children[t.parent[i]].push_back(i);
  }
  for (int v = 0; v < g.n; ++v) {
    std::vector<int> holders;
    for (int i = 0; i < t.bag_count(); ++i)
      if (bag_has(t.bags[i], v)) holders.push_back(i);
    if (holders.empty()) return false;
    std::set<int> holder_set(holders.begin(), holders.end());
    std::deque<int> queue{holders.front()};
    std::set<int> reached{holders.front()};
    while (!queue.empty()) {
      int b = queue.front();
      queue.pop_front();
      std::vector<int> adjacent = children[b];
      if (t.parent[b] != -1) adjacent.push_back(t.parent[b]);
      for (int nb : adjacent)
        if (holder_set.count(nb) && !reached.count(nb)) {
          reached.insert(nb);
          queue.push_back(nb);
        }
    }
    if (reached.size() != holder_set.size()) return false;
  }
  (void)root;
  return true;
}

bool validate_path_decomposition(const AdjacencyGraph& g,
                                 const PathDecomposition& p) {
  if (p.bags.empty()) return g.n == 0;
  if (!covers_vertices_and_edges(g, p.bags)) return false;
  // occurrences of each vertex must be one contiguous run
  for (int v = 0; v < g.n; ++v) {
    int first = -1, last = -1;
    for (int i = 0; i < p.bag_count(); ++i)
      if (bag_has(p.bags[i], v)) {
        if (first < 0) first = i;
        last = i;
      }
    if (first < 0) return false;
    for (int i = first; i <= last; ++i)
      if (!bag_has(p.bags[i], v)) return false;
  }
  return true;
}

/* ---------------- elimination-order machinery ---------------- */

namespace {

// Tree decomposition induced by an elimination order: each vertex's bag is
// itself plus its not-yet-eliminated neighbors in the fill graph; the bag
// hangs below the bag of its earliest-eliminated such neighbor.
TreeDecomposition decomposition_from_elimination(const AdjacencyGraph& g,
                                                 const std::vector<int>& order) {
  int n = g.n;
  std::vector<std::set<int>> fill(n);
  for (int u = 0; u < n; ++u)
    for (int v : g.adj[u]) fill[u].insert(v);
  std::vector<int> position(n);
  for (int i = 0; i < n; ++i) position[order[i]] = i;

  TreeDecomposition t;
  t.bags.resize(n);
  t.parent.assign(n, -1);
  std::vector<bool> eliminated(n, false);
  for (int i = 0; i < n; ++i) {
    int v = order[i];
    std::vector<int> later;
    for (int w : fill[v])
      if (!eliminated[w]) later.push_back(w);
    std::vector<int> bag = later;
    bag.push_back(v);
    std::sort(bag.begin(), bag.end());
    t.bags[i] = bag;
    if (!later.empty()) {
      int next = *std::min_element(later.begin(), later.end(),
                                   [&](int a, int b) {
                                     return position[a] < position[b];
                                   });
      t.parent[i] = position[next];
    } else if (i + 1 < n) {
      t.parent[i] = n - 1;  // isolated tail, attach to the final bag
    }
    // clique the remaining neighborhood
    for (int a : later)
      for (int b : later)
        if (a != b) fill[a].insert(b);
    for (int w : later) fill[w].erase(v);
    eliminated[v] = true;
  }
  return t;
}

}  // namespace

TreeDecomposition min_fill_tree_decomposition(const AdjacencyGraph& g) {
  int n = g.n;
  if (n == 0) return {};

  std::vector<std::set<int>> fill(n);
  for (int u = 0; u < n; ++u)
    for (int v : g.adj[u]) fill[u].insert(v);
  std::vector<bool> eliminated(n, false);
  std::vector<int> order;
  order.reserve(n);
  for (int step = 0; step < n; ++step) {
    int best = -1;
    long long best_fill = std::numeric_limits<long long>::max();
    for (int v = 0; v < n; ++v) {
      if (eliminated[v]) continue;
      std::vector<int> nb;
      for (int w : fill[v])
        if (!eliminated[w]) nb.push_back(w);
      long long missing = 0;
      for (std::size_t a = 0; a < nb.size(); ++a)
        for (std::size_t b = a + 1; b < nb.size(); ++b)
          if (!fill[nb[a]].count(nb[b])) ++missing;
      if (missing < best_fill) {
        best_fill = missing;
        best = v;
      }
    }
    std::vector<int> nb;
    for (int w : fill[best])
      if (!eliminated[w]) nb.push_back(w);
    for (std::size_t a = 0; a < nb.size(); ++a)
      for (std::size_t b = a + 1; b < nb.size(); ++b) {
        fill[nb[a]].insert(nb[b]);
        fill[nb[b]].insert(nb[a]);
      }
    eliminated[best] = true;
    order.push_back(best);
  }
  return decomposition_from_elimination(g, order);
}

TreeDecomposition min_fill_tree_decomposition(const IncidenceGraph& g) {
  return min_fill_tree_decomposition(g.as_graph());
}

namespace {

// Vertices outside mask|{v} reachable from v through vertices inside mask.
int reach_through(const AdjacencyGraph& g, std::uint32_t mask, int v) {
  std::uint32_t visited = 1u << v;
  std::vector<int> stack{v};
  int count = 0;
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    for (int y : g.adj[x]) {
      if (visited & (1u << y)) continue;
      visited |= 1u << y;
      if (mask & (1u << y))
        stack.push_back(y);
      else
        ++count;
    }
  }
  return count;
}

}  // namespace

std::pair<int, TreeDecomposition> exact_treewidth_small(
    const AdjacencyGraph& g, const Guards& guards) {
  int n = g.n;
  if (n > guards.treewidth_vertices)
    throw GuardError("exact_treewidth_small: " + std::to_string(n) +
                     " vertices exceed budget " +
                     std::to_string(guards.treewidth_vertices));
  if (n == 0) return {-1, {}};

  // f[S] = min over elimination orders of S of the max degree-at-elimination,
  // where eliminating v from prefix S costs reach_through(S \ {v}, v).
  std::uint32_t full = (n == 32) ? ~0u : ((1u << n) - 1);
  std::vector<int> f(full + 1, std::numeric_limits<int>::max());
  std::vector<int> choice(full + 1, -1);
  f[0] = 0;
  for (std::uint32_t s = 1; s <= full; ++s) {
    for (int v = 0; v < n; ++v) {
      if (!(s & (1u << v))) continue;
      std::uint32_t rest = s & ~(1u << v);
      if (f[rest] == std::numeric_limits<int>::max()) continue;
      int cost = std::max(f[rest], reach_through(g, rest, v));
      if (cost < f[s]) {
        f[s] = cost;
        choice[s] = v;
      }
    }
  }

  std::vector<int> order(n);
  std::uint32_t s = full;
  for (int i = n - 1; i >= 0; --i) {
    order[i] = choice[s];
    s &= ~(1u << order[i]);
  }
  TreeDecomposition t = decomposition_from_elimination(g, order);
  return {f[full], t};
}

std::pair<int, TreeDecomposition> exact_treewidth_small(
    const IncidenceGraph& g, const Guards& guards) {
  return exact_treewidth_small(g.as_graph(), guards);
}

/* ---------------- tree to path ---------------- */

namespace {

std::vector<std::vector<int>> tree_adjacency(const TreeDecomposition& t) {
  std::vector<std::vector<int>> adj(t.bag_count());
  for (int i = 0; i < t.bag_count(); ++i)
    if (t.parent[i] != -1) {
      adj[i].push_back(t.parent[i]);
      adj[t.parent[i]].push_back(i);
    }
  for (auto& a : adj) std::sort(a.begin(), a.end());
  return adj;
}

std::vector<int> sorted_union(const std::vector<int>& a,
                              const std::vector<int>& b) {
  std::vector<int> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(),
                 std::back_inserter(out));
  return out;
}

// Splits the subtree at a centroid bag, converts each piece recursively, and
// widens every piece by the centroid's contents so the concatenation stays
// connected. The bare centroid bag is kept after the first piece.
std::vector<std::vector<int>> centroid_paths(
    const TreeDecomposition& t, const std::vector<std::vector<int>>& adj,
    const std::vector<int>& members) {
  if (members.size() == 1) return {t.bags[members[0]]};

  std::set<int> in_subtree(members.begin(), members.end());
  auto component_sizes = [&](int removed) {
    std::vector<std::vector<int>> comps;
    std::set<int> seen{removed};
    for (int s : members) {
      if (seen.count(s)) continue;
      std::vector<int> comp;
      std::deque<int> queue{s};
      seen.insert(s);
      while (!queue.empty()) {
        int x = queue.front();
        queue.pop_front();
        comp.push_back(x);
        for (int y : adj[x])
          if (in_subtree.count(y) && !seen.count(y)) {
            seen.insert(y);
            queue.push_back(y);
          }
      }
      std::sort(comp.begin(), comp.end());
      comps.push_back(std::move(comp));
    }
    std::sort(comps.begin(), comps.end());
    return comps;
  };

  int centroid = -1;
  std::size_t best_max = members.size() + 1;
  for (int cand : members) {
    std::size_t worst = 0;
    for (const auto& comp : component_sizes(cand))
      worst = std::max(worst, comp.size());
    if (worst < best_max) {
      best_max = worst;
      centroid = cand;
    }
  }

  std::vector<std::vector<int>> out;
  bool centroid_emitted = false;
  for (const auto& comp : component_sizes(centroid)) {
    for (auto& bag : centroid_paths(t, adj, comp))
      out.push_back(sorted_union(bag, t.bags[centroid]));
    if (!centroid_emitted) {
      out.push_back(t.bags[centroid]);
      centroid_emitted = true;
    }
  }
  if (!centroid_emitted) out.push_back(t.bags[centroid]);
  return out;
}

}  // namespace

PathDecomposition tree_to_path(const TreeDecomposition& t) {
  PathDecomposition p;
  if (t.bags.empty()) return p;

  auto adj = tree_adjacency(t);
  bool is_path = true;
  for (const auto& a : adj)
    if (a.size() > 2) is_path = false;
  if (is_path) {
    // already a path; linearize from the lowest-index endpoint
    int start = 0;
    for (int i = 0; i < t.bag_count(); ++i)
      if (adj[i].size() <= 1) {
        start = i;
        break;
      }
    std::vector<bool> used(t.bag_count(), false);
    int cur = start;
    for (int step = 0; step < t.bag_count(); ++step) {
      p.bags.push_back(t.bags[cur]);
      used[cur] = true;
      int next = -1;
      for (int nb : adj[cur])
        if (!used[nb]) next = nb;
      if (next < 0) break;
      cur = next;
    }
    return p;
  }

  std::vector<int> all(t.bag_count());
  std::iota(all.begin(), all.end(), 0);
  p.bags = centroid_paths(t, adj, all);
  return p;
}

Ordering forget_ordering(const PathDecomposition& p, const Cnf& f) {
  IncidenceGraph inc = build_incidence(f);
  if (!validate_path_decomposition(inc.as_graph(), p))
    throw DomainError(
        "forget_ordering: not a valid path decomposition of the incidence "
        "graph");
  std::vector<std::pair<int, Var>> keyed;
  for (int vi = 0; vi < inc.var_count(); ++vi) {
    int first = -1;
    for (int b = 0; b < p.bag_count() && first < 0; ++b)
      if (bag_has(p.bags[b], vi)) first = b;
    keyed.push_back({first, inc.var_at(vi)});
  }
  std::sort(keyed.begin(), keyed.end());
  std::vector<Var> vars;
  vars.reserve(keyed.size());
  for (auto& [bag, v] : keyed) vars.push_back(v);
  return Ordering::of(std::move(vars));
}

/* ---------------- PACE .td ---------------- */

std::string write_pace_td(const TreeDecomposition& t, int n_vertices) {
  std::ostringstream out;
  int max_bag = 0;
  for (const auto& b : t.bags) max_bag = std::max(max_bag, (int)b.size());
  out << "s td " << t.bag_count() << ' ' << max_bag << ' ' << n_vertices
      << '\n';
  for (int i = 0; i < t.bag_count(); ++i) {
    out << "b " << (i + 1);
    for (int v : t.bags[i]) out << ' ' << (v + 1);
    out << '\n';
  }
  for (int i = 0; i < t.bag_count(); ++i)
    if (t.parent[i] != -1)
      out << std::min(i, t.parent[i]) + 1 << ' '
          << std::max(i, t.parent[i]) + 1 << '\n';
  return out.str();
}

TreeDecomposition read_pace_td(std::istream& in) {
  std::string line;
  int bags = -1;
  TreeDecomposition t;
  std::vector<std::pair<int, int>> edges;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == 'c') continue;
    std::istringstream ls(line);
    if (line[0] == 's') {
      std::string s, td;
      int maxbag, n;
      if (!(ls >> s >> td >> bags >> maxbag >> n) || td != "td")
        throw ParseError("pace td: malformed solution line");
      t.bags.resize(bags);
      t.parent.assign(bags, -1);
      continue;
    }
    if (line[0] == 'b') {
      char b;
      int id;
      ls >> b >> id;
      if (bags < 0 || id < 1 || id > bags)
        throw ParseError("pace td: bad bag id");
      for (int v; ls >> v;) t.bags[id - 1].push_back(v - 1);
      std::sort(t.bags[id - 1].begin(), t.bags[id - 1].end());
      continue;
    }
    int a, b;
    if (!(ls >> a >> b)) throw ParseError("pace td: malformed edge line");
    if (bags < 0 || a < 1 || b < 1 || a > bags || b > bags)
      throw ParseError("pace td: edge out of range");
    edges.push_back({a - 1, b - 1});
  }
  if (bags < 0) throw ParseError("pace td: missing solution line");
  // orient edges away from bag 0
  std::vector<std::vector<int>> adj(bags);
  for (auto [a, b] : edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<bool> seen(bags, false);
  if (bags > 0) {
    std::deque<int> queue{0};
    seen[0] = true;
    while (!queue.empty()) {
      int x = queue.front();
      queue.pop_front();
      for (int y : adj[x])
        if (!seen[y]) {
          seen[y] = true;
          t.parent[y] = x;
          queue.push_back(y);
        }
    }
    for (bool s : seen)
      if (!s) throw ParseError("pace td: bag tree is not connected");
  }
  return t;
}

}  // namespace obddc
