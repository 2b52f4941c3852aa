#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "obddc/cnf.hpp"
#include "obddc/common.hpp"

namespace obddc {

// Plain undirected graph on vertices 0..n-1; shared by the structural
// algorithms (feedback vertex sets, decompositions).
struct AdjacencyGraph {
  int n = 0;
  std::vector<std::vector<int>> adj;

  explicit AdjacencyGraph(int vertices = 0) : n(vertices), adj(vertices) {}
  void add_edge(int u, int v);
  bool has_edge(int u, int v) const;
  long long edge_count() const;
};

// Bipartite variable/clause graph of a CNF. In the combined vertex numbering
// variables come first: variable index i is vertex i, clause index j is
// vertex var_count() + j.
struct IncidenceGraph {
  std::vector<Var> vars;                         // sorted, = F.variables()
  std::vector<std::vector<int>> var_to_clauses;  // per var index
  std::vector<std::vector<int>> clause_to_vars;  // per clause index, var indices

  int var_count() const { return static_cast<int>(vars.size()); }
  int clause_count() const { return static_cast<int>(clause_to_vars.size()); }
  int vertex_count() const { return var_count() + clause_count(); }

  Var var_at(int var_index) const { return vars.at(var_index); }
  int index_of(Var v) const;

  AdjacencyGraph as_graph() const;
};

IncidenceGraph build_incidence(const Cnf& f);

// Maximum vertex degree; 0 for the empty graph.
int max_degree(const IncidenceGraph& g);

// Variables and clause indices whose removal puts the formula in a target
// class (here: forests).
struct DeletionSet {
  std::vector<Var> vars;
  std::vector<int> clause_indices;

  int size() const {
    return static_cast<int>(vars.size() + clause_indices.size());
  }
};

// Witness ordering for left convexity: every clause's variable set is an
// interval under it.
using ConvexityWitness = Ordering;

// Consecutive-ones recognition over rows = clauses, columns = variables.
// Returns a witness ordering iff one exists. Deterministic.
std::optional<ConvexityWitness> detect_left_convex(const IncidenceGraph& g);

// True iff every clause's variable set is contiguous under sigma. The
// ordering must cover exactly the graph's variables.
bool verify_convexity_witness(const IncidenceGraph& g, const Ordering& sigma);

// Minimum feedback vertex set of at most k vertices, found by iterative
// deepening over branching on shortest cycles. nullopt if no FVS of size <= k
// exists; k beyond the configured budget is an error.
std::optional<std::vector<int>> feedback_vertex_set(const AdjacencyGraph& g,
                                                    int k,
                                                    const Guards& guards = {});
std::optional<DeletionSet> feedback_vertex_set(const IncidenceGraph& g, int k,
                                               const Guards& guards = {});

bool is_acyclic(const AdjacencyGraph& g);
bool is_acyclic_without(const AdjacencyGraph& g,
                        const std::vector<bool>& removed);

// PACE 2017 .gr export (1-indexed vertices, "p tw n m" header).
std::string write_pace_gr(const AdjacencyGraph& g);
AdjacencyGraph read_pace_gr(std::istream& in);

}  // namespace obddc
