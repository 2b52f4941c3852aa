#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "obddc/cnf.hpp"
#include "obddc/common.hpp"

namespace obddc {

// Exact nonnegative rational, kept reduced.
struct Rational {
  long long num = 0;
  long long den = 1;

  static Rational of(long long num, long long den);
  bool operator<(const Rational& o) const { return num * o.den < o.num * den; }
  bool operator==(const Rational& o) const {
    return num == o.num && den == o.den;
  }
  std::string str() const;
};

// Undirected simple graph on vertices 1..n.
struct SimpleGraph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;  // u < v, sorted

  static SimpleGraph of(int n, std::vector<std::pair<int, int>> edges);

  std::vector<std::vector<int>> adjacency() const;    // 1-indexed
  std::vector<std::uint32_t> adjacency_masks() const; // bit v-1 per vertex
  int max_degree() const;
  bool has_isolated_vertex() const;
  bool has_edge(int u, int v) const;
};

struct ExpanderCertificate {
  int n = 0;
  int degree = 0;
  Rational expansion;
};

// Exact minimum of |neigh(W)| / |W| over nonempty W with |W| <= n/2,
// by subset enumeration. Guarded by vertex count.
Rational expansion_constant(const SimpleGraph& g, const Guards& guards = {});
ExpanderCertificate certify_expander(const SimpleGraph& g,
                                     const Guards& guards = {});

// Pairing-model d-regular graph, rejecting self-loops and duplicate edges.
// Deterministic for a given seed. n*d must be even and d < n.
SimpleGraph gen_random_regular(int n, int d, std::uint64_t seed);

// Monotone 2-CNF with one positive clause per edge; vertices become
// variables. Isolated vertices are an error.
Cnf graph_cnf(const SimpleGraph& g);
bool is_graph_cnf(const Cnf& f);

// Subfunction-productive clause set: a matching of prefix-crossing edges
// (a_i, u_i) such that no clause {a_i, a_j} or {a_i, u_j} with i != j exists.
struct LowerBoundWitness {
  Ordering ordering;
  int prefix_len = 0;
  std::vector<Clause> clauses;
  std::vector<Var> a_vars;
  std::vector<Var> u_vars;

  int size() const { return static_cast<int>(clauses.size()); }
};

// All side conditions of a productive set, checked syntactically. Returns
// false rather than throwing so corrupted witnesses can be probed.
bool validate_witness(const Cnf& f, const LowerBoundWitness& w);

// Largest productive set for the given prefix, by branch and bound over the
// conflict graph of prefix-crossing clauses.
LowerBoundWitness max_productive_set(const Cnf& f, const Ordering& sigma,
                                     int prefix_len, const Guards& guards = {});

// Subfunction width: minimum over orderings of the maximum productive-set
// size over prefixes, with a witness attaining it for the lexicographically
// least minimizing ordering.
std::pair<int, LowerBoundWitness> sfw_exact(const Cnf& f,
                                            const Guards& guards = {});

// The constructive selection from the expansion argument: repeatedly pick the
// least crossing edge at the half prefix and delete the neighborhoods that
// could violate the side conditions.
LowerBoundWitness greedy_productive(const Cnf& f, const Ordering& sigma);

// Checks that the 2^e prefix assignments extending each a-assignment by ones
// induce pairwise distinguishable subfunctions, using the designated
// completion that zeroes u_i for the first differing a_i.
bool verify_fooling_set(const Cnf& f, const LowerBoundWitness& w,
                        const Guards& guards = {});

// Minimum reduced OBDD size over all orderings, with the lexicographically
// least minimizer.
std::pair<long long, Ordering> min_obdd_size_exact(const Cnf& f,
                                                   const Guards& guards = {});

// Edge-list files: "n m" header, then one "u v" line per edge.
SimpleGraph read_edge_list(std::istream& in);
std::string write_edge_list(const SimpleGraph& g);

// One row of the lower-bound sweep.
struct SweepRow {
  int n = 0;
  int d = 0;
  Rational c;
  long long sfw_lb = 0;
  std::optional<int> sfw;
  std::optional<long long> min_obdd;

  static std::string csv_header() { return "n,d,c,sfw_lb,sfw_exact,min_obdd,2^sfw"; }
  std::string csv() const;
};

}  // namespace obddc
