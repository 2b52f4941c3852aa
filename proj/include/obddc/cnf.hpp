#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "obddc/common.hpp"

namespace obddc {

// Variables are positive integers. A literal is a signed variable id,
// negative for a negated occurrence; 0 never appears.
using Var = int;
using Lit = int;

inline Var lit_var(Lit l) { return l < 0 ? -l : l; }
inline bool lit_negated(Lit l) { return l < 0; }
inline Lit make_lit(Var v, bool negated) { return negated ? -v : v; }

// Partial assignment; the domain is exactly the key set.
using Assignment = std::map<Var, bool>;

// A set of literals with no variable occurring twice. Canonically sorted by
// variable id so equality and hashing are structural.
class Clause {
 public:
  Clause() = default;

  // Sorts and collapses duplicate literals; rejects tautologies.
  static Clause of(std::vector<Lit> lits);
  static Clause empty() { return Clause(); }

  const std::vector<Lit>& literals() const { return lits_; }
  int width() const { return static_cast<int>(lits_.size()); }
  bool is_empty() const { return lits_.empty(); }

  // Sign of v's occurrence, or nullopt if v does not occur.
  std::optional<bool> occurrence(Var v) const;
  bool satisfied_by(const Assignment& f) const;

  std::vector<Var> variables() const;

  bool operator==(const Clause& o) const { return lits_ == o.lits_; }
  bool operator<(const Clause& o) const { return lits_ < o.lits_; }

 private:
  std::vector<Lit> lits_;
};

// A CNF is a set of non-tautological clauses. Clauses are canonically sorted
// and deduplicated on construction, so CNFs that are equal as sets of sets
// compare equal as values. The empty clause is representable (it arises from
// restriction) and distinct from the empty CNF.
class Cnf {
 public:
  Cnf() = default;

  static Cnf from_clauses(std::vector<Clause> clauses);
  // Convenience for literal lists, mostly used by tests.
  static Cnf of(const std::vector<std::vector<Lit>>& clause_lits);

  const std::vector<Clause>& clauses() const { return clauses_; }
  const std::vector<Var>& variables() const { return vars_; }

  int clause_count() const { return static_cast<int>(clauses_.size()); }
  int var_count() const { return static_cast<int>(vars_.size()); }
  bool empty() const { return clauses_.empty(); }
  bool has_empty_clause() const;
  bool contains_clause(const Clause& c) const;
  bool contains_var(Var v) const;

  bool operator==(const Cnf& o) const { return clauses_ == o.clauses_; }
  bool operator<(const Cnf& o) const { return clauses_ < o.clauses_; }

 private:
  std::vector<Clause> clauses_;
  std::vector<Var> vars_;
};

// Total number of literal occurrences.
long long cnf_size(const Cnf& f);

// F[f]: drops clauses satisfied by f and strips assigned variables from the
// rest. May introduce the empty clause. Variables outside var(F) are ignored.
Cnf restrict(const Cnf& f, const Assignment& a);
Cnf restrict(const Cnf& f, Var v, bool value);

// 1 iff restrict(F, f) is the empty CNF. The domain of f must cover var(F).
int eval(const Cnf& f, const Assignment& a);

// Order-independent fingerprint: equal keys iff equal CNFs.
struct CanonicalKey {
  std::vector<std::int32_t> encoded;  // per clause: literals then 0
  std::uint64_t hash = 0;

  bool operator==(const CanonicalKey& o) const { return encoded == o.encoded; }
  bool operator<(const CanonicalKey& o) const { return encoded < o.encoded; }
};

struct CanonicalKeyHash {
  std::size_t operator()(const CanonicalKey& k) const {
    return static_cast<std::size_t>(k.hash);
  }
};

CanonicalKey canonical_key(const Cnf& f);

// E = { c minus literals on D-vars : c in F, c not a deleted clause }.
// Clause indices refer to positions in f.clauses().
Cnf delete_from(const Cnf& f, const std::vector<Var>& vars,
                const std::vector<int>& clause_indices);

// A sequence of distinct variables. Prefixes of orderings drive every width
// measure, so position lookup is kept cheap.
class Ordering {
 public:
  Ordering() = default;
  static Ordering of(std::vector<Var> vars);

  const std::vector<Var>& vars() const { return vars_; }
  int size() const { return static_cast<int>(vars_.size()); }
  bool contains(Var v) const { return pos_.count(v) != 0; }
  int position(Var v) const;  // throws DomainError if absent
  Var at(int i) const { return vars_.at(i); }

  // True iff this orders exactly the given variable set.
  bool covers_exactly(const std::vector<Var>& sorted_vars) const;

  // Concatenation; variable sets must be disjoint.
  Ordering followed_by(const Ordering& tail) const;

  bool operator==(const Ordering& o) const { return vars_ == o.vars_; }

 private:
  std::vector<Var> vars_;
  std::unordered_map<Var, int> pos_;
};

struct DimacsResult {
  Cnf cnf;
  // original_ids[i] is the DIMACS id of dense variable i+1.
  std::vector<int> original_ids;
  std::vector<std::string> warnings;
};

// DIMACS CNF reader. Tautological clauses, out-of-range literals, malformed
// headers and unterminated clauses are errors; a clause-count mismatch and
// duplicate clauses only warn. Sparse variable ids are renamed to dense
// 1..n, keeping the mapping.
DimacsResult parse_dimacs(std::istream& in);
DimacsResult parse_dimacs(const std::string& text);

}  // namespace obddc
