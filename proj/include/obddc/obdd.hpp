#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "obddc/cnf.hpp"
#include "obddc/common.hpp"

namespace obddc {

using NodeRef = std::uint32_t;

constexpr NodeRef kZeroSink = 0;
constexpr NodeRef kOneSink = 1;

inline bool is_sink(NodeRef r) { return r <= kOneSink; }

struct ObddNode {
  Var var = 0;
  NodeRef lo = kZeroSink;
  NodeRef hi = kZeroSink;
};

// A single-rooted ordered binary decision diagram. Slots 0 and 1 of the node
// table are reserved for the 0- and 1-sink; every edge from a node labelled x
// to a node labelled y respects x < y in the carried ordering.
class Obdd {
 public:
  // Constant diagram (just a sink). The ordering may still be nonempty.
  static Obdd constant(bool value, Ordering ordering = {});
  // Takes ownership of a node table whose slots 0 and 1 are placeholders.
  static Obdd from_table(Ordering ordering, std::vector<ObddNode> nodes,
                         NodeRef root);

  const Ordering& ordering() const { return ordering_; }
  NodeRef root() const { return root_; }
  const ObddNode& node(NodeRef r) const { return nodes_.at(r); }
  std::size_t table_size() const { return nodes_.size(); }

  bool root_is_sink() const { return is_sink(root_); }

  // Follows activated edges from the root; the assignment must cover every
  // ordering variable.
  int evaluate(const Assignment& f) const;

  // Nodes reachable from the root, including reachable sinks.
  std::vector<NodeRef> reachable() const;

 private:
  Ordering ordering_;
  std::vector<ObddNode> nodes_;
  NodeRef root_ = kZeroSink;
};

// Number of reachable nodes, sinks included.
long long obdd_size(const Obdd& d);

// Canonical form for (function, ordering): removes redundant tests and merges
// duplicate (var, lo, hi) triples through a unique table.
Obdd reduce(const Obdd& d);

// Same ordering: reduce and compare structurally. Different orderings:
// exhaustive evaluation over the union of the variable sets, guarded.
bool equivalent(const Obdd& a, const Obdd& b, const Guards& guards = {});

// Text format. The header carries the ordering; constant diagrams serialize
// as a single sink with an empty ordering line. Node ids are canonical for
// the diagram structure, so equal reduced diagrams serialize identically.
std::string serialize_obdd(const Obdd& d);
Obdd parse_obdd(std::istream& in);
Obdd parse_obdd(const std::string& text);

// DOT export; dashed edges are 0-branches.
std::string obdd_to_dot(const Obdd& d);

}  // namespace obddc
