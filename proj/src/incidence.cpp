#include "obddc/incidence.hpp"

#include <algorithm>
#include <deque>
#include <istream>
#include <numeric>
#include <sstream>

namespace obddc {

void AdjacencyGraph::add_edge(int u, int v) {
  if (u == v) throw DomainError("graph: self-loop");
  if (u < 0 || v < 0 || u >= n || v >= n)
    throw DomainError("graph: vertex out of range");
  if (!has_edge(u, v)) {
    adj[u].push_back(v);
    adj[v].push_back(u);
    std::sort(adj[u].begin(), adj[u].end());
    std::sort(adj[v].begin(), adj[v].end());
  }
}

bool AdjacencyGraph::has_edge(int u, int v) const {
  return std::binary_search(adj[u].begin(), adj[u].end(), v);
}

long long AdjacencyGraph::edge_count() const {
  long long deg = 0;
  for (const auto& a : adj) deg += static_cast<long long>(a.size());
  return deg / 2;
}

int IncidenceGraph::index_of(Var v) const {
  auto it = std::lower_bound(vars.begin(), vars.end(), v);
  if (it == vars.end() || *it != v)
    throw DomainError("incidence: unknown variable " + std::to_string(v));
  return static_cast<int>(it - vars.begin());
}

AdjacencyGraph IncidenceGraph::as_graph() const {
  AdjacencyGraph g(vertex_count());
  for (int c = 0; c < clause_count(); ++c)
    for (int vi : clause_to_vars[c]) g.add_edge(vi, var_count() + c);
  return g;
}

IncidenceGraph build_incidence(const Cnf& f) {
  IncidenceGraph g;
  g.vars = f.variables();
  g.var_to_clauses.resize(g.vars.size());
  g.clause_to_vars.resize(f.clauses().size());
  for (int c = 0; c < f.clause_count(); ++c) {
    for (Var v : f.clauses()[c].variables()) {
      int vi = g.index_of(v);
      g.clause_to_vars[c].push_back(vi);
      g.var_to_clauses[vi].push_back(c);
    }
    std::sort(g.clause_to_vars[c].begin(), g.clause_to_vars[c].end());
  }
  return g;
}

int max_degree(const IncidenceGraph& g) {
  std::size_t best = 0;
  for (const auto& a : g.var_to_clauses) best = std::max(best, a.size());
  for (const auto& a : g.clause_to_vars) best = std::max(best, a.size());
  return static_cast<int>(best);
}

/* ---------------- consecutive-ones recognition ---------------- */

namespace {

using Row = std::vector<int>;  // sorted column ids

bool subset_of(const Row& a, const Row& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

bool intersects(const Row& a, const Row& b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i == *j) return true;
    (*i < *j) ? ++i : ++j;
  }
  return false;
}

// neither contains the other but they share a column
bool strictly_overlaps(const Row& a, const Row& b) {
  return intersects(a, b) && !subset_of(a, b) && !subset_of(b, a);
}

Row row_union(const Row& a, const Row& b) {
  Row out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(),
                 std::back_inserter(out));
  return out;
}

Row row_intersection(const Row& a, const Row& b) {
  Row out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(out));
  return out;
}

Row row_difference(const Row& a, const Row& b) {
  Row out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                      std::back_inserter(out));
  return out;
}

// Incremental placement of one strict-overlap component. Maintains an
// ordered partition of the columns placed so far such that every processed
// row is a union of consecutive blocks. Rows must arrive so that each one
// strictly overlaps an already processed row.
class BlockArrangement {
 public:
  bool add(const Row& r) {
    if (blocks_.empty()) {
      blocks_.push_back(r);
      placed_ = r;
      return true;
    }
    Row fresh = row_difference(r, placed_);

    int l = -1, r_idx = -1;
    for (int i = 0; i < static_cast<int>(blocks_.size()); ++i) {
      if (intersects(blocks_[i], r)) {
        if (l < 0) l = i;
        r_idx = i;
      }
    }
    if (l < 0) return false;  // disconnected from placed columns
    for (int i = l; i <= r_idx; ++i)
      if (!intersects(blocks_[i], r)) return false;  // hit set not contiguous
    for (int i = l + 1; i < r_idx; ++i)
      if (!subset_of(blocks_[i], r)) return false;  // interior must be covered

    int last = static_cast<int>(blocks_.size()) - 1;
    Row left_in = row_intersection(blocks_[l], r);
    Row left_out = row_difference(blocks_[l], r);
    Row right_in = row_intersection(blocks_[r_idx], r);
    Row right_out = row_difference(blocks_[r_idx], r);

    std::vector<Row> rebuilt;
    auto copy_range = [&](int from, int to) {
      for (int i = from; i <= to; ++i) rebuilt.push_back(blocks_[i]);
    };

    if (fresh.empty()) {
      if (l == r_idx) {
        // with strict-overlap processing the row can only equal the block
        return blocks_[l] == r;
      }
      copy_range(0, l - 1);
      if (!left_out.empty()) rebuilt.push_back(left_out);
      rebuilt.push_back(left_in);
      copy_range(l + 1, r_idx - 1);
      rebuilt.push_back(right_in);
      if (!right_out.empty()) rebuilt.push_back(right_out);
      copy_range(r_idx + 1, last);
    } else {
      bool can_left, can_right;
      if (l == r_idx) {
        can_left = (l == 0);
        can_right = (r_idx == last);
      } else {
        can_left = (l == 0 && left_out.empty());
        can_right = (r_idx == last && right_out.empty());
      }
      if (!can_left && !can_right) return false;
      bool attach_right = can_right;  // deterministic preference

      copy_range(0, l - 1);
      if (l == r_idx) {
        // orient the out-part away from the new columns
        if (attach_right) {
          if (!left_out.empty()) rebuilt.push_back(left_out);
          rebuilt.push_back(left_in);
          rebuilt.push_back(fresh);
        } else {
          rebuilt.push_back(fresh);
          rebuilt.push_back(left_in);
          if (!left_out.empty()) rebuilt.push_back(left_out);
        }
      } else {
        if (!attach_right) rebuilt.push_back(fresh);
        if (!left_out.empty()) rebuilt.push_back(left_out);
        rebuilt.push_back(left_in);
        copy_range(l + 1, r_idx - 1);
        rebuilt.push_back(right_in);
        if (!right_out.empty()) rebuilt.push_back(right_out);
        if (attach_right) rebuilt.push_back(fresh);
      }
      copy_range(r_idx + 1, last);
      placed_ = row_union(placed_, fresh);
    }
    blocks_ = std::move(rebuilt);
    return true;
  }

  // True iff the row equals a union of consecutive blocks.
  bool is_block_run(const Row& r) const {
    int l = -1, rr = -1;
    for (int i = 0; i < static_cast<int>(blocks_.size()); ++i) {
      if (intersects(blocks_[i], r)) {
        if (l < 0) l = i;
        rr = i;
      }
    }
    if (l < 0) return r.empty();
    Row acc;
    for (int i = l; i <= rr; ++i) acc = row_union(acc, blocks_[i]);
    return acc == r;
  }

  void canonical_flip() {
    if (blocks_.size() > 1 && blocks_.front().front() > blocks_.back().front())
      std::reverse(blocks_.begin(), blocks_.end());
  }

  const std::vector<Row>& blocks() const { return blocks_; }
  const Row& placed() const { return placed_; }

 private:
  std::vector<Row> blocks_;
  Row placed_;
};

// Recursive interval-hypergraph solver. Builds the forced skeleton of each
// maximal strict-overlap component, then recurses into the free interior of
// every block. Returns a column order making each row contiguous, or nullopt.
std::optional<Row> solve_c1p(const Row& universe, std::vector<Row> rows) {
  // normalize
  std::vector<Row> kept;
  for (Row& r : rows) {
    if (r.size() <= 1 || r.size() == universe.size()) continue;
    kept.push_back(std::move(r));
  }
  std::sort(kept.begin(), kept.end());
  kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
  if (kept.empty()) return universe;

  int m = static_cast<int>(kept.size());
  // strict-overlap components via union-find
  std::vector<int> parent(m);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      if (strictly_overlaps(kept[i], kept[j])) parent[find(i)] = find(j);

  std::vector<std::vector<int>> comps_by_root(m);
  for (int i = 0; i < m; ++i) comps_by_root[find(i)].push_back(i);
  struct Component {
    std::vector<int> rows;
    Row uni;
  };
  std::vector<Component> comps;
  for (auto& members : comps_by_root) {
    if (members.empty()) continue;
    Component c;
    c.rows = members;
    for (int i : members) c.uni = row_union(c.uni, kept[i]);
    comps.push_back(std::move(c));
  }
  // maximal unions first; unions of distinct components are laminar
  std::sort(comps.begin(), comps.end(), [](const Component& a, const Component& b) {
    if (a.uni.size() != b.uni.size()) return a.uni.size() > b.uni.size();
    return a.uni < b.uni;
  });
  std::vector<int> top;
  std::vector<bool> is_top(comps.size(), false);
  for (int i = 0; i < static_cast<int>(comps.size()); ++i) {
    bool nested = false;
    for (int t : top)
      if (subset_of(comps[i].uni, comps[t].uni)) {
        nested = true;
        break;
      }
    if (!nested) {
      top.push_back(i);
      is_top[i] = true;
    }
  }

  std::vector<bool> row_in_top(m, false);
  std::vector<BlockArrangement> skeletons(comps.size());
  for (int t : top) {
    // BFS over the strict-overlap graph, lexicographically smallest row first
    std::vector<int> order = comps[t].rows;
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return kept[a] < kept[b]; });
    std::vector<bool> queued(m, false);
    std::deque<int> queue{order.front()};
    queued[order.front()] = true;
    std::vector<int> bfs;
    while (!queue.empty()) {
      int cur = queue.front();
      queue.pop_front();
      bfs.push_back(cur);
      for (int cand : order)
        if (!queued[cand] && strictly_overlaps(kept[cur], kept[cand])) {
          queued[cand] = true;
          queue.push_back(cand);
        }
    }
    for (int i : bfs) {
      row_in_top[i] = true;
      if (!skeletons[t].add(kept[i])) return std::nullopt;
    }
    for (int i : bfs)
      if (!skeletons[t].is_block_run(kept[i])) return std::nullopt;
    skeletons[t].canonical_flip();
  }

  // route the remaining rows into block interiors
  struct SubInstance {
    std::vector<Row> rows;
  };
  std::vector<std::vector<SubInstance>> subs(comps.size());
  for (int t : top) subs[t].resize(skeletons[t].blocks().size());

  for (int i = 0; i < m; ++i) {
    if (row_in_top[i]) continue;
    int host = -1;
    for (int t : top)
      if (subset_of(kept[i], comps[t].uni)) {
        host = t;
        break;
      }
    if (host < 0) return std::nullopt;
    const auto& blocks = skeletons[host].blocks();
    int l = -1, r = -1;
    for (int b = 0; b < static_cast<int>(blocks.size()); ++b) {
      if (intersects(blocks[b], kept[i])) {
        if (l < 0) l = b;
        r = b;
      }
    }
    if (l < 0) return std::nullopt;
    if (l == r) {
      if (kept[i].size() < blocks[l].size())
        subs[host][l].rows.push_back(kept[i]);
      // row equal to a block is already contiguous
      continue;
    }
    // multi-block rows must be exact consecutive runs of full blocks
    if (!skeletons[host].is_block_run(kept[i])) return std::nullopt;
  }

  Row result;
  std::vector<Row> segments;
  for (int t : top) {
    Row segment;
    const auto& blocks = skeletons[t].blocks();
    for (int b = 0; b < static_cast<int>(blocks.size()); ++b) {
      auto inner = solve_c1p(blocks[b], std::move(subs[t][b].rows));
      if (!inner) return std::nullopt;
      segment.insert(segment.end(), inner->begin(), inner->end());
    }
    segments.push_back(std::move(segment));
  }
  std::sort(segments.begin(), segments.end(),
            [](const Row& a, const Row& b) { return a.front() < b.front(); });
  Row covered;
  for (const Row& s : segments) {
    result.insert(result.end(), s.begin(), s.end());
    Row sorted = s;
    std::sort(sorted.begin(), sorted.end());
    covered = row_union(covered, sorted);
  }
  for (int col : row_difference(universe, covered)) result.push_back(col);
  return result;
}

}  // namespace

std::optional<ConvexityWitness> detect_left_convex(const IncidenceGraph& g) {
  Row universe(g.var_count());
  std::iota(universe.begin(), universe.end(), 0);
  std::vector<Row> rows = g.clause_to_vars;
  auto perm = solve_c1p(universe, std::move(rows));
  if (!perm) return std::nullopt;
  std::vector<Var> vars;
  vars.reserve(perm->size());
  for (int col : *perm) vars.push_back(g.var_at(col));
  Ordering witness = Ordering::of(std::move(vars));
  if (!verify_convexity_witness(g, witness)) return std::nullopt;
  return witness;
}

bool verify_convexity_witness(const IncidenceGraph& g, const Ordering& sigma) {
  if (!sigma.covers_exactly(g.vars))
    throw DomainError("convexity witness: ordering domain mismatch");
  for (const auto& clause_vars : g.clause_to_vars) {
    if (clause_vars.empty()) continue;
    int lo = sigma.size(), hi = -1;
    for (int vi : clause_vars) {
      int p = sigma.position(g.var_at(vi));
      lo = std::min(lo, p);
      hi = std::max(hi, p);
    }
    if (hi - lo + 1 != static_cast<int>(clause_vars.size())) return false;
  }
  return true;
}

/* ---------------- feedback vertex sets ---------------- */

bool is_acyclic_without(const AdjacencyGraph& g,
                        const std::vector<bool>& removed) {
  std::vector<int> color(g.n, 0);
  std::vector<std::pair<int, int>> stack;  // vertex, parent
  for (int s = 0; s < g.n; ++s) {
    if (removed[s] || color[s]) continue;
    stack.push_back({s, -1});
    color[s] = 1;
    while (!stack.empty()) {
      auto [v, from] = stack.back();
      stack.pop_back();
      bool skipped_parent = false;
      for (int w : g.adj[v]) {
        if (removed[w]) continue;
        if (w == from && !skipped_parent) {
          skipped_parent = true;  // one parent edge allowed
          continue;
        }
        if (color[w]) return false;
        color[w] = 1;
        stack.push_back({w, v});
      }
    }
  }
  return true;
}

bool is_acyclic(const AdjacencyGraph& g) {
  return is_acyclic_without(g, std::vector<bool>(g.n, false));
}

namespace {

// Shortest cycle in the graph restricted to alive vertices; empty if acyclic.
// For every edge, the shortest path between its endpoints avoiding that edge
// closes the tightest cycle through it.
std::vector<int> find_shortest_cycle(const AdjacencyGraph& g,
                                     const std::vector<bool>& removed) {
  std::vector<int> best;
  for (int u = 0; u < g.n; ++u) {
    if (removed[u]) continue;
    for (int v : g.adj[u]) {
      if (v < u || removed[v]) continue;
      // BFS u -> v avoiding the direct edge
      std::vector<int> parent(g.n, -2);
      std::deque<int> queue{u};
      parent[u] = -1;
      while (!queue.empty()) {
        int x = queue.front();
        queue.pop_front();
        if (x == v) break;
        for (int y : g.adj[x]) {
          if (removed[y] || parent[y] != -2) continue;
          if (x == u && y == v) continue;
          parent[y] = x;
          queue.push_back(y);
        }
      }
      if (parent[v] == -2) continue;
      std::vector<int> cycle;
      for (int x = v; x != -1; x = parent[x]) cycle.push_back(x);
      if (best.empty() || cycle.size() < best.size()) best = cycle;
    }
  }
  return best;
}

bool fvs_search(const AdjacencyGraph& g, std::vector<bool>& removed,
                int budget, std::vector<int>& out) {
  std::vector<int> cycle = find_shortest_cycle(g, removed);
  if (cycle.empty()) return true;
  if (budget == 0) return false;
  std::sort(cycle.begin(), cycle.end());
  for (int v : cycle) {
    removed[v] = true;
    out.push_back(v);
    if (fvs_search(g, removed, budget - 1, out)) return true;
    removed[v] = false;
    out.pop_back();
  }
  return false;
}

}  // namespace

std::optional<std::vector<int>> feedback_vertex_set(const AdjacencyGraph& g,
                                                    int k,
                                                    const Guards& guards) {
  if (k > guards.fvs_budget)
    throw GuardError("feedback_vertex_set: k=" + std::to_string(k) +
                     " exceeds budget " + std::to_string(guards.fvs_budget));
  for (int depth = 0; depth <= k; ++depth) {
    std::vector<bool> removed(g.n, false);
    std::vector<int> out;
    if (fvs_search(g, removed, depth, out)) {
      std::sort(out.begin(), out.end());
      return out;
    }
  }
  return std::nullopt;
}

std::optional<DeletionSet> feedback_vertex_set(const IncidenceGraph& g, int k,
                                               const Guards& guards) {
  auto vertices = feedback_vertex_set(g.as_graph(), k, guards);
  if (!vertices) return std::nullopt;
  DeletionSet d;
  for (int v : *vertices) {
    if (v < g.var_count())
      d.vars.push_back(g.var_at(v));
    else
      d.clause_indices.push_back(v - g.var_count());
  }
  return d;
}

/* ---------------- PACE .gr ---------------- */

std::string write_pace_gr(const AdjacencyGraph& g) {
  std::ostringstream out;
  out << "p tw " << g.n << ' ' << g.edge_count() << '\n';
  for (int u = 0; u < g.n; ++u)
    for (int v : g.adj[u])
      if (u < v) out << (u + 1) << ' ' << (v + 1) << '\n';
  return out.str();
}

AdjacencyGraph read_pace_gr(std::istream& in) {
  std::string line;
  int n = -1;
  long long m = -1;
  AdjacencyGraph g;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == 'c') continue;
    std::istringstream ls(line);
    if (line[0] == 'p') {
      std::string p, tw;
      if (!(ls >> p >> tw >> n >> m) || tw != "tw")
        throw ParseError("pace gr: malformed problem line");
      g = AdjacencyGraph(n);
      continue;
    }
    int u, v;
    if (!(ls >> u >> v)) throw ParseError("pace gr: malformed edge line");
    if (n < 0) throw ParseError("pace gr: edge before problem line");
    g.add_edge(u - 1, v - 1);
  }
  if (n < 0) throw ParseError("pace gr: missing problem line");
  return g;
}

}  // namespace obddc
