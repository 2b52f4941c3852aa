#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "obddc/cnf.hpp"
#include "obddc/common.hpp"
#include "obddc/incidence.hpp"

namespace obddc {

// Rooted tree of bags over graph vertices. parent[i] == -1 marks the root.
struct TreeDecomposition {
  std::vector<std::vector<int>> bags;  // each sorted
  std::vector<int> parent;

  int bag_count() const { return static_cast<int>(bags.size()); }
  // max bag size - 1; -1 when there are no bags
  int width() const;
};

struct PathDecomposition {
  std::vector<std::vector<int>> bags;  // path order

  int bag_count() const { return static_cast<int>(bags.size()); }
  int width() const;
};

// The three decomposition conditions: vertex coverage, edge coverage, and
// per-vertex connectivity of the bags containing it.
bool validate_tree_decomposition(const AdjacencyGraph& g,
                                 const TreeDecomposition& t);
bool validate_path_decomposition(const AdjacencyGraph& g,
                                 const PathDecomposition& p);

// Min-fill elimination heuristic. Always valid; width is not guaranteed
// minimal.
TreeDecomposition min_fill_tree_decomposition(const AdjacencyGraph& g);
TreeDecomposition min_fill_tree_decomposition(const IncidenceGraph& g);

// Exact treewidth by dynamic programming over vertex subsets, with a
// witnessing decomposition. Guarded by vertex count.
std::pair<int, TreeDecomposition> exact_treewidth_small(
    const AdjacencyGraph& g, const Guards& guards = {});
std::pair<int, TreeDecomposition> exact_treewidth_small(
    const IncidenceGraph& g, const Guards& guards = {});

// Centroid-split conversion. A tree that is already a path is returned
// unchanged; otherwise width+1 grows by at most a factor of
// 1 + ceil(log2(bag count)).
PathDecomposition tree_to_path(const TreeDecomposition& t);

// Orders var(F) by the first bag containing each variable vertex, ties by
// variable id. P must be a valid path decomposition of inc(F) in the
// combined numbering (variables first).
Ordering forget_ordering(const PathDecomposition& p, const Cnf& f);

// PACE 2017 .td format.
std::string write_pace_td(const TreeDecomposition& t, int n_vertices);
TreeDecomposition read_pace_td(std::istream& in);

}  // namespace obddc
