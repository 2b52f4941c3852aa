#pragma once

// Independent oracles and instance generators shared by the unit tests and
// the acceptance suite. Everything here deliberately avoids the library code
// paths it is used to check.

#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "obddc/cnf.hpp"
#include "obddc/decomposition.hpp"
#include "obddc/incidence.hpp"
#include "obddc/lowerbound.hpp"
#include "obddc/widths.hpp"

namespace obddc::testing {

using Rng = std::mt19937_64;

/* ---- oracles ---- */

// Clause-by-clause satisfaction, not going through restrict().
int eval_direct(const Cnf& f, const Assignment& a);

// Runs fn for every total assignment of the given variables.
void for_each_assignment(const std::vector<Var>& vars,
                         const std::function<void(const Assignment&)>& fn);

// Existence check over all |vars|! orderings.
std::optional<Ordering> brute_force_convex_witness(const IncidenceGraph& g);

// Independent expansion enumerator (recursive subset growth, adjacency
// lists instead of bitmasks).
Rational expansion_constant_oracle(const SimpleGraph& g);

// Largest productive set by direct subset enumeration of the crossing
// clauses with the definition's side conditions checked literally.
int max_productive_oracle(const Cnf& f, const Ordering& sigma, int prefix_len);

// Minimum subterm width by plain enumeration of every ordering.
std::pair<long long, Ordering> stw_exact_unpruned(const Cnf& f);

// Minimum feedback vertex set by subset enumeration, sizes ascending.
std::vector<int> fvs_oracle(const AdjacencyGraph& g);

// Pairwise semantic distinctness of the fooling-set subfunctions, by
// exhaustive truth tables over the suffix variables.
bool fooling_set_semantic_oracle(const Cnf& f, const LowerBoundWitness& w);

/* ---- instance generators ---- */

// All connected graphs on exactly n labeled vertices, one representative per
// isomorphism class.
std::vector<SimpleGraph> connected_graphs_up_to_iso(int n);

Cnf random_cnf(Rng& rng, int max_vars, int max_clauses, int max_width);
Ordering random_ordering(Rng& rng, const std::vector<Var>& vars);

// Interval clauses over a hidden shuffled axis; always variable convex.
Cnf random_convex_cnf(Rng& rng, int max_vars, int max_clauses);

// CNF whose incidence graph is a random tree on about total_vertices nodes.
Cnf random_tree_cnf(Rng& rng, int total_vertices);

struct InstanceWithPath {
  Cnf f;
  PathDecomposition pd;  // valid for inc(f), built structurally
};

// Caterpillar incidence graph with a direct width-1 path decomposition.
InstanceWithPath random_caterpillar_cnf(Rng& rng, int spine_len, int max_legs);

// 2 x cols grid incidence graph with its width-2 column-sweep decomposition.
InstanceWithPath grid_cnf(int cols);

}  // namespace obddc::testing
