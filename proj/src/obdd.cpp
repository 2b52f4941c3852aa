#include "obddc/obdd.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <sstream>
#include <unordered_map>

namespace obddc {

Obdd Obdd::constant(bool value, Ordering ordering) {
  Obdd d;
  d.ordering_ = std::move(ordering);
  d.nodes_.resize(2);
  d.root_ = value ? kOneSink : kZeroSink;
  return d;
}

Obdd Obdd::from_table(Ordering ordering, std::vector<ObddNode> nodes,
                      NodeRef root) {
  if (nodes.size() < 2) throw DomainError("obdd: node table misses sink slots");
  Obdd d;
  d.ordering_ = std::move(ordering);
  d.nodes_ = std::move(nodes);
  d.root_ = root;
  for (NodeRef r = 2; r < d.nodes_.size(); ++r) {
    const ObddNode& n = d.nodes_[r];
    if (n.lo >= d.nodes_.size() || n.hi >= d.nodes_.size())
      throw DomainError("obdd: dangling edge");
    int level = d.ordering_.position(n.var);
    for (NodeRef child : {n.lo, n.hi}) {
      if (!is_sink(child) &&
          d.ordering_.position(d.nodes_[child].var) <= level)
        throw DomainError("obdd: edge violates the ordering");
    }
  }
  return d;
}

int Obdd::evaluate(const Assignment& f) const {
  for (Var v : ordering_.vars())
    if (f.find(v) == f.end())
      throw DomainError("obdd evaluate: assignment misses variable " +
                        std::to_string(v));
  NodeRef cur = root_;
  while (!is_sink(cur)) {
    const ObddNode& n = nodes_[cur];
    cur = f.at(n.var) ? n.hi : n.lo;
  }
  return cur == kOneSink ? 1 : 0;
}

std::vector<NodeRef> Obdd::reachable() const {
  std::vector<bool> seen(nodes_.size(), false);
  std::vector<NodeRef> stack{root_}, out;
  seen[root_] = true;
  while (!stack.empty()) {
    NodeRef r = stack.back();
    stack.pop_back();
    out.push_back(r);
    if (is_sink(r)) continue;
    for (NodeRef child : {nodes_[r].lo, nodes_[r].hi}) {
      if (!seen[child]) {
        seen[child] = true;
        stack.push_back(child);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

long long obdd_size(const Obdd& d) {
  return static_cast<long long>(d.reachable().size());
}

Obdd reduce(const Obdd& d) {
  if (d.root_is_sink()) return Obdd::constant(d.root() == kOneSink, d.ordering());

  // Group reachable internal nodes by ordering level, deepest first, so
  // children are rewritten before their parents.
  std::vector<NodeRef> reach = d.reachable();
  std::vector<std::vector<NodeRef>> by_level(d.ordering().size());
  for (NodeRef r : reach)
    if (!is_sink(r)) by_level[d.ordering().position(d.node(r).var)].push_back(r);

  std::vector<ObddNode> out(2);
  std::unordered_map<std::uint64_t, std::vector<NodeRef>> unique;
  std::unordered_map<NodeRef, NodeRef> remap;
  remap[kZeroSink] = kZeroSink;
  remap[kOneSink] = kOneSink;

  auto hash_cons = [&](Var var, NodeRef lo, NodeRef hi) -> NodeRef {
    std::uint64_t key[3] = {static_cast<std::uint64_t>(var), lo, hi};
    std::uint64_t h = fnv1a64(key, sizeof key);
    for (NodeRef cand : unique[h]) {
      const ObddNode& n = out[cand];
      if (n.var == var && n.lo == lo && n.hi == hi) return cand;
    }
    out.push_back({var, lo, hi});
    NodeRef fresh = static_cast<NodeRef>(out.size() - 1);
    unique[h].push_back(fresh);
    return fresh;
  };

  for (int level = d.ordering().size() - 1; level >= 0; --level) {
    for (NodeRef r : by_level[level]) {
      NodeRef lo = remap.at(d.node(r).lo);
      NodeRef hi = remap.at(d.node(r).hi);
      remap[r] = (lo == hi) ? lo : hash_cons(d.node(r).var, lo, hi);
    }
  }

  NodeRef root = remap.at(d.root());
  if (is_sink(root)) return Obdd::constant(root == kOneSink, d.ordering());
  return Obdd::from_table(d.ordering(), std::move(out), root);
}

namespace {

// Exhaustive agreement check over the given variable set.
bool agree_on_all(const Obdd& a, const Obdd& b, const std::vector<Var>& vars) {
  Assignment f;
  std::size_t n = vars.size();
  for (std::uint64_t mask = 0; mask < (1ull << n); ++mask) {
    for (std::size_t i = 0; i < n; ++i) f[vars[i]] = (mask >> i) & 1;
    if (a.evaluate(f) != b.evaluate(f)) return false;
  }
  return true;
}

// Structural equality of two reduced diagrams with equal orderings.
bool isomorphic_from_roots(const Obdd& a, const Obdd& b) {
  std::map<std::pair<NodeRef, NodeRef>, bool> memo;
  auto rec = [&](auto&& self, NodeRef x, NodeRef y) -> bool {
    if (is_sink(x) || is_sink(y)) return x == y;
    auto it = memo.find({x, y});
    if (it != memo.end()) return it->second;
    const ObddNode& nx = a.node(x);
    const ObddNode& ny = b.node(y);
    bool ok = nx.var == ny.var && self(self, nx.lo, ny.lo) &&
              self(self, nx.hi, ny.hi);
    memo[{x, y}] = ok;
    return ok;
  };
  return rec(rec, a.root(), b.root());
}

}  // namespace

bool equivalent(const Obdd& a, const Obdd& b, const Guards& guards) {
  if (a.ordering() == b.ordering()) {
    Obdd ra = reduce(a), rb = reduce(b);
    if (ra.root_is_sink() || rb.root_is_sink()) return ra.root() == rb.root();
    return isomorphic_from_roots(ra, rb);
  }
  std::vector<Var> vars = a.ordering().vars();
  vars.insert(vars.end(), b.ordering().vars().begin(), b.ordering().vars().end());
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  if (static_cast<int>(vars.size()) > guards.equivalence_vars)
    throw GuardError("equivalent: " + std::to_string(vars.size()) +
                     " variables exceed the cross-ordering guard of " +
                     std::to_string(guards.equivalence_vars));
  return agree_on_all(a, b, vars);
}

namespace {

// Canonical ids: sinks are 0/1, internal nodes numbered in DFS postorder
// (lo before hi) from the root, starting at 2.
std::pair<std::vector<NodeRef>, std::unordered_map<NodeRef, int>>
canonical_numbering(const Obdd& d) {
  std::vector<NodeRef> order;
  std::unordered_map<NodeRef, int> id;
  id[kZeroSink] = 0;
  id[kOneSink] = 1;
  auto rec = [&](auto&& self, NodeRef r) -> void {
    if (is_sink(r) || id.count(r)) return;
    id[r] = -1;  // on stack
    self(self, d.node(r).lo);
    self(self, d.node(r).hi);
    id[r] = static_cast<int>(order.size()) + 2;
    order.push_back(r);
  };
  rec(rec, d.root());
  return {order, id};
}

}  // namespace

std::string serialize_obdd(const Obdd& d) {
  std::ostringstream out;
  out << "obdd 1\n";
  out << "order";
  if (!d.root_is_sink())
    for (Var v : d.ordering().vars()) out << ' ' << v;
  out << '\n';

  if (d.root_is_sink()) {
    out << "root " << (d.root() == kOneSink ? 1 : 0) << '\n';
    out << (d.root() == kOneSink ? "1:T" : "0:F") << '\n';
    return out.str();
  }

  auto [order, id] = canonical_numbering(d);
  out << "root " << id.at(d.root()) << '\n';

  bool zero_used = false, one_used = false;
  for (NodeRef r : d.reachable()) {
    zero_used |= (r == kZeroSink);
    one_used |= (r == kOneSink);
  }
  if (zero_used) out << "0:F\n";
  if (one_used) out << "1:T\n";
  for (std::size_t i = 0; i < order.size(); ++i) {
    const ObddNode& n = d.node(order[i]);
    out << (i + 2) << ' ' << n.var << ' ' << id.at(n.lo) << ' ' << id.at(n.hi)
        << '\n';
  }
  return out.str();
}

Obdd parse_obdd(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "obdd 1")
    throw ParseError("obdd: bad magic line");
  if (!std::getline(in, line) || line.rfind("order", 0) != 0)
    throw ParseError("obdd: missing order line");
  std::istringstream os(line.substr(5));
  std::vector<Var> vars;
  for (Var v; os >> v;) vars.push_back(v);
  Ordering ordering = Ordering::of(vars);

  if (!std::getline(in, line) || line.rfind("root ", 0) != 0)
    throw ParseError("obdd: missing root line");
  int root_id = std::atoi(line.substr(5).c_str());

  std::vector<ObddNode> nodes(2);
  bool saw_zero = false, saw_one = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line == "0:F") {
      saw_zero = true;
      continue;
    }
    if (line == "1:T") {
      saw_one = true;
      continue;
    }
    std::istringstream ls(line);
    long long id, var, lo, hi;
    if (!(ls >> id >> var >> lo >> hi))
      throw ParseError("obdd: bad node line '" + line + "'");
    if (id != static_cast<long long>(nodes.size()))
      throw ParseError("obdd: node ids must be dense and ascending");
    nodes.push_back({static_cast<Var>(var), static_cast<NodeRef>(lo),
                     static_cast<NodeRef>(hi)});
  }
  if (root_id == 0 || root_id == 1) {
    if (!saw_zero && !saw_one) throw ParseError("obdd: sink line missing");
    return Obdd::constant(root_id == 1, std::move(ordering));
  }
  return Obdd::from_table(std::move(ordering), std::move(nodes),
                          static_cast<NodeRef>(root_id));
}

Obdd parse_obdd(const std::string& text) {
  std::istringstream in(text);
  return parse_obdd(in);
}

std::string obdd_to_dot(const Obdd& d) {
  std::ostringstream out;
  out << "digraph obdd {\n";
  if (d.root_is_sink()) {
    out << "  n" << (d.root() == kOneSink ? 1 : 0) << " [shape=box,label=\""
        << (d.root() == kOneSink ? 1 : 0) << "\"];\n}\n";
    return out.str();
  }
  auto [order, id] = canonical_numbering(d);
  bool zero_used = false, one_used = false;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const ObddNode& n = d.node(order[i]);
    zero_used |= n.lo == kZeroSink || n.hi == kZeroSink;
    one_used |= n.lo == kOneSink || n.hi == kOneSink;
  }
  if (zero_used) out << "  n0 [shape=box,label=\"0\"];\n";
  if (one_used) out << "  n1 [shape=box,label=\"1\"];\n";
  for (std::size_t i = 0; i < order.size(); ++i)
    out << "  n" << (i + 2) << " [label=\"x" << d.node(order[i]).var
        << "\"];\n";
  for (std::size_t i = 0; i < order.size(); ++i) {
    const ObddNode& n = d.node(order[i]);
    out << "  n" << (i + 2) << " -> n" << id.at(n.lo) << " [style=dashed];\n";
    out << "  n" << (i + 2) << " -> n" << id.at(n.hi) << ";\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace obddc
