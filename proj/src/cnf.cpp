#include "obddc/cnf.hpp"

#include <algorithm>
#include <cstdlib>
#include <istream>
#include <sstream>

namespace obddc {

namespace {

// var id ascending, positive literal before negative on a tie
bool lit_less(Lit a, Lit b) {
  Var va = lit_var(a), vb = lit_var(b);
  if (va != vb) return va < vb;
  return a > b;
}

}  // namespace

Clause Clause::of(std::vector<Lit> lits) {
  std::sort(lits.begin(), lits.end(), lit_less);
  lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
  for (std::size_t i = 1; i < lits.size(); ++i) {
    if (lit_var(lits[i]) == lit_var(lits[i - 1]))
      throw DomainError("tautological clause on variable " +
                        std::to_string(lit_var(lits[i])));
  }
  Clause c;
  c.lits_ = std::move(lits);
  return c;
}

std::optional<bool> Clause::occurrence(Var v) const {
  auto it = std::lower_bound(lits_.begin(), lits_.end(), v,
                             [](Lit l, Var x) { return lit_var(l) < x; });
  if (it == lits_.end() || lit_var(*it) != v) return std::nullopt;
  return lit_negated(*it);
}

bool Clause::satisfied_by(const Assignment& f) const {
  for (Lit l : lits_) {
    auto it = f.find(lit_var(l));
    if (it != f.end() && it->second == !lit_negated(l)) return true;
  }
  return false;
}

std::vector<Var> Clause::variables() const {
  std::vector<Var> vs;
  vs.reserve(lits_.size());
  for (Lit l : lits_) vs.push_back(lit_var(l));
  return vs;
}

Cnf Cnf::from_clauses(std::vector<Clause> clauses) {
  std::sort(clauses.begin(), clauses.end());
  clauses.erase(std::unique(clauses.begin(), clauses.end()), clauses.end());
  Cnf f;
  f.clauses_ = std::move(clauses);
  for (const Clause& c : f.clauses_)
    for (Lit l : c.literals()) f.vars_.push_back(lit_var(l));
  std::sort(f.vars_.begin(), f.vars_.end());
  f.vars_.erase(std::unique(f.vars_.begin(), f.vars_.end()), f.vars_.end());
  return f;
}

Cnf Cnf::of(const std::vector<std::vector<Lit>>& clause_lits) {
  std::vector<Clause> cs;
  cs.reserve(clause_lits.size());
  for (const auto& lits : clause_lits) cs.push_back(Clause::of(lits));
  return from_clauses(std::move(cs));
}

bool Cnf::has_empty_clause() const {
  // the empty clause sorts first
  return !clauses_.empty() && clauses_.front().is_empty();
}

bool Cnf::contains_clause(const Clause& c) const {
  return std::binary_search(clauses_.begin(), clauses_.end(), c);
}

bool Cnf::contains_var(Var v) const {
  return std::binary_search(vars_.begin(), vars_.end(), v);
}

long long cnf_size(const Cnf& f) {
  long long total = 0;
  for (const Clause& c : f.clauses()) total += c.width();
  return total;
}

namespace {

// Shared core: keeps clauses not satisfied by the assignment, stripping
// assigned variables. `assigned` reports membership and value.
template <typename AssignedFn>
Cnf restrict_impl(const Cnf& f, AssignedFn assigned) {
  std::vector<Clause> out;
  out.reserve(f.clauses().size());
  for (const Clause& c : f.clauses()) {
    bool satisfied = false;
    std::vector<Lit> kept;
    kept.reserve(c.literals().size());
    for (Lit l : c.literals()) {
      std::optional<bool> val = assigned(lit_var(l));
      if (!val) {
        kept.push_back(l);
      } else if (*val == !lit_negated(l)) {
        satisfied = true;
        break;
      }
    }
    if (!satisfied) out.push_back(Clause::of(std::move(kept)));
  }
  return Cnf::from_clauses(std::move(out));
}

}  // namespace

Cnf restrict(const Cnf& f, const Assignment& a) {
  return restrict_impl(f, [&a](Var v) -> std::optional<bool> {
    auto it = a.find(v);
    if (it == a.end()) return std::nullopt;
    return it->second;
  });
}

Cnf restrict(const Cnf& f, Var v, bool value) {
  return restrict_impl(f, [v, value](Var x) -> std::optional<bool> {
    if (x == v) return value;
    return std::nullopt;
  });
}

int eval(const Cnf& f, const Assignment& a) {
  for (Var v : f.variables())
    if (a.find(v) == a.end())
      throw DomainError("eval: assignment misses variable " +
                        std::to_string(v));
  return restrict(f, a).empty() ? 1 : 0;
}

CanonicalKey canonical_key(const Cnf& f) {
  CanonicalKey k;
  k.encoded.reserve(static_cast<std::size_t>(cnf_size(f)) + f.clauses().size());
  for (const Clause& c : f.clauses()) {
    for (Lit l : c.literals()) k.encoded.push_back(l);
    k.encoded.push_back(0);
  }
  k.hash = fnv1a64(k.encoded.data(), k.encoded.size() * sizeof(std::int32_t));
  return k;
}

Cnf delete_from(const Cnf& f, const std::vector<Var>& vars,
                const std::vector<int>& clause_indices) {
  std::vector<bool> drop(f.clauses().size(), false);
  for (int idx : clause_indices) {
    if (idx < 0 || idx >= f.clause_count())
      throw DomainError("delete_from: clause index out of range");
    drop[idx] = true;
  }
  std::vector<Var> sorted_vars = vars;
  std::sort(sorted_vars.begin(), sorted_vars.end());
  std::vector<Clause> out;
  for (int i = 0; i < f.clause_count(); ++i) {
    if (drop[i]) continue;
    std::vector<Lit> kept;
    for (Lit l : f.clauses()[i].literals())
      if (!std::binary_search(sorted_vars.begin(), sorted_vars.end(),
                              lit_var(l)))
        kept.push_back(l);
    out.push_back(Clause::of(std::move(kept)));
  }
  return Cnf::from_clauses(std::move(out));
}

Ordering Ordering::of(std::vector<Var> vars) {
  Ordering o;
  o.vars_ = std::move(vars);
  for (int i = 0; i < static_cast<int>(o.vars_.size()); ++i) {
    if (o.vars_[i] <= 0) throw DomainError("ordering: variable ids are positive");
    if (!o.pos_.emplace(o.vars_[i], i).second)
      throw DomainError("ordering: repeated variable " +
                        std::to_string(o.vars_[i]));
  }
  return o;
}

int Ordering::position(Var v) const {
  auto it = pos_.find(v);
  if (it == pos_.end())
    throw DomainError("ordering: variable " + std::to_string(v) + " absent");
  return it->second;
}

bool Ordering::covers_exactly(const std::vector<Var>& sorted_vars) const {
  if (sorted_vars.size() != vars_.size()) return false;
  for (Var v : sorted_vars)
    if (!contains(v)) return false;
  return true;
}

Ordering Ordering::followed_by(const Ordering& tail) const {
  std::vector<Var> vs = vars_;
  vs.insert(vs.end(), tail.vars_.begin(), tail.vars_.end());
  return Ordering::of(std::move(vs));
}

namespace {

bool is_number(const std::string& s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-') ? 1 : 0;
  if (i >= s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

}  // namespace

DimacsResult parse_dimacs(std::istream& in) {
  long long declared_vars = -1, declared_clauses = -1;
  DimacsResult res;
  std::vector<std::vector<Lit>> raw_clauses;
  std::vector<Lit> current;
  bool open = false, done = false;

  std::string line;
  while (!done && std::getline(in, line)) {
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;        // blank line
    if (first[0] == 'c') continue;       // comment
    if (first == "%") break;             // legacy SATLIB trailer
    if (first == "p") {
      if (declared_vars >= 0) throw ParseError("dimacs: duplicate header");
      std::string fmt, nt, mt;
      if (!(ls >> fmt >> nt >> mt) || fmt != "cnf" || !is_number(nt) ||
          !is_number(mt))
        throw ParseError("dimacs: malformed header, expected 'p cnf n m'");
      declared_vars = std::atoll(nt.c_str());
      declared_clauses = std::atoll(mt.c_str());
      if (declared_vars < 0 || declared_clauses < 0)
        throw ParseError("dimacs: negative header counts");
      continue;
    }
    if (declared_vars < 0)
      throw ParseError("dimacs: clause data before the 'p cnf' header");
    std::string tok = first;
    do {
      if (!is_number(tok))
        throw ParseError("dimacs: unexpected token '" + tok + "'");
      long long l = std::atoll(tok.c_str());
      if (l == 0) {
        raw_clauses.push_back(current);
        current.clear();
        open = false;
        continue;
      }
      long long v = l < 0 ? -l : l;
      if (v > declared_vars)
        throw ParseError("dimacs: literal " + tok +
                         " out of declared range 1.." +
                         std::to_string(declared_vars));
      current.push_back(static_cast<Lit>(l));
      open = true;
    } while (ls >> tok);
  }
  if (declared_vars < 0) throw ParseError("dimacs: empty input");
  if (open) throw ParseError("dimacs: unterminated clause at end of input");

  if (static_cast<long long>(raw_clauses.size()) != declared_clauses)
    res.warnings.push_back("header declares " +
                           std::to_string(declared_clauses) + " clauses, " +
                           std::to_string(raw_clauses.size()) + " found");

  // dense renaming, ordered by original id
  std::vector<int> used;
  for (const auto& cl : raw_clauses)
    for (Lit l : cl) used.push_back(lit_var(l));
  std::sort(used.begin(), used.end());
  used.erase(std::unique(used.begin(), used.end()), used.end());
  std::unordered_map<int, Var> dense;
  for (std::size_t i = 0; i < used.size(); ++i)
    dense[used[i]] = static_cast<Var>(i + 1);
  res.original_ids = used;

  std::vector<Clause> clauses;
  clauses.reserve(raw_clauses.size());
  for (std::size_t i = 0; i < raw_clauses.size(); ++i) {
    std::vector<Lit> lits;
    lits.reserve(raw_clauses[i].size());
    for (Lit l : raw_clauses[i])
      lits.push_back(make_lit(dense[lit_var(l)], lit_negated(l)));
    try {
      clauses.push_back(Clause::of(std::move(lits)));
    } catch (const DomainError&) {
      throw ParseError("dimacs: tautological clause at index " +
                       std::to_string(i + 1));
    }
  }

  std::size_t before = clauses.size();
  res.cnf = Cnf::from_clauses(std::move(clauses));
  std::size_t after = res.cnf.clauses().size();
  if (after < before)
    res.warnings.push_back(std::to_string(before - after) +
                           " duplicate clause(s) collapsed");
  return res;
}

DimacsResult parse_dimacs(const std::string& text) {
  std::istringstream in(text);
  return parse_dimacs(in);
}

Guards Guards::from_env() {
  Guards g;
  if (const char* s = std::getenv("OBDDC_GUARD_VARS")) {
    int v = std::atoi(s);
    if (v > 0) {
      g.subterm_vars = v;
      g.stw_exact_vars = v;
      g.sfw_exact_vars = v;
      g.min_obdd_vars = v;
      g.equivalence_vars = v;
      g.expansion_vertices = v;
    }
  }
  return g;
}

}  // namespace obddc
