#include <doctest.h>

#include <set>

#include "obddc/cnf.hpp"
#include "support.hpp"

using namespace obddc;
using namespace obddc::testing;

TEST_SUITE_BEGIN("cnf");

TEST_CASE("dimacs basics") {
  auto r = parse_dimacs("p cnf 2 1\n1 2 0\n");
  CHECK(r.cnf == Cnf::of({{1, 2}}));
  CHECK(r.original_ids == std::vector<int>{1, 2});
  CHECK(r.warnings.empty());

  r = parse_dimacs("p cnf 1 2\n1 0\n-1 0\n");
  CHECK(r.cnf == Cnf::of({{1}, {-1}}));

  CHECK_THROWS_AS(parse_dimacs("p cnf 1 1\n1 -1 0\n"), ParseError);
  CHECK_THROWS_AS(parse_dimacs("p cnf 1 1\n2 0\n"), ParseError);
  CHECK_THROWS_AS(parse_dimacs("p dnf 1 1\n1 0\n"), ParseError);
  CHECK_THROWS_AS(parse_dimacs("p cnf 2 1\n1 2\n"), ParseError);
  CHECK_THROWS_AS(parse_dimacs(""), ParseError);
}

TEST_CASE("dimacs renames sparse ids and keeps the mapping") {
  auto r = parse_dimacs("c comment line\np cnf 9 2\n3 -7 0\n9 0\n");
  CHECK(r.cnf.var_count() == 3);
  CHECK(r.original_ids == std::vector<int>{3, 7, 9});
  CHECK(r.cnf == Cnf::of({{1, -2}, {3}}));
}

TEST_CASE("dimacs warns on count mismatch and duplicate clauses") {
  auto r = parse_dimacs("p cnf 2 1\n1 2 0\n2 1 0\n");
  CHECK(r.cnf.clause_count() == 1);
  REQUIRE(r.warnings.size() == 2);
  CHECK(r.warnings[0].find("declares 1") != std::string::npos);
  CHECK(r.warnings[1].find("duplicate") != std::string::npos);
}

TEST_CASE("restriction follows the definition") {
  Cnf f = Cnf::of({{1, 2}, {2, 3}});
  CHECK(restrict(f, Assignment{{2, true}}) == Cnf());
  CHECK(restrict(f, Assignment{{1, false}, {2, false}}) ==
        Cnf::from_clauses({Clause::empty(), Clause::of({3})}));
  CHECK(restrict(Cnf(), Assignment{{1, true}}) == Cnf());
  // variables outside var(F) are ignored
  CHECK(restrict(f, Assignment{{9, true}}) == f);
}

TEST_CASE("restriction composes over disjoint domains") {
  Rng rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    Cnf f = random_cnf(rng, 6, 6, 3);
    Assignment first, second;
    for (Var v : f.variables()) {
      int roll = (int)(rng() % 3);
      if (roll == 0) first[v] = rng() % 2;
      if (roll == 1) second[v] = rng() % 2;
    }
    Assignment both = first;
    both.insert(second.begin(), second.end());
    CHECK(restrict(restrict(f, first), second) == restrict(f, both));
  }
}

TEST_CASE("eval matches direct clause evaluation exhaustively") {
  // every CNF with <= 4 variables and <= 4 clauses over the full clause
  // universe, checked on all assignments
  std::vector<Clause> universe;
  std::vector<Var> vars{1, 2, 3, 4};
  for (int mask = 1; mask < (1 << 4); ++mask) {
    std::vector<int> members;
    for (int i = 0; i < 4; ++i)
      if (mask & (1 << i)) members.push_back(i + 1);
    for (int signs = 0; signs < (1 << members.size()); ++signs) {
      std::vector<Lit> lits;
      for (std::size_t i = 0; i < members.size(); ++i)
        lits.push_back(make_lit(members[i], (signs >> i) & 1));
      universe.push_back(Clause::of(lits));
    }
  }
  REQUIRE(universe.size() == 80);

  long long checked = 0;
  auto check_cnf = [&](const std::vector<Clause>& clauses) {
    Cnf f = Cnf::from_clauses(clauses);
    for_each_assignment(vars, [&](const Assignment& a) {
      CHECK(eval(f, a) == eval_direct(f, a));
      ++checked;
    });
  };
  int u = (int)universe.size();
  for (int i = 0; i < u; ++i) {
    check_cnf({universe[i]});
    for (int j = i + 1; j < u; ++j) {
      check_cnf({universe[i], universe[j]});
      // three- and four-clause formulas on a deterministic stride
      for (int k = j + 1; k < u; k += 7) {
        check_cnf({universe[i], universe[j], universe[k]});
        for (int l = k + 1; l < u; l += 17)
          check_cnf({universe[i], universe[j], universe[k], universe[l]});
      }
    }
  }
  CHECK(checked > 0);
}

TEST_CASE("eval requires a covering assignment") {
  Cnf f = Cnf::of({{1, 2}});
  CHECK(eval(f, Assignment{{1, false}, {2, true}}) == 1);
  CHECK_THROWS_AS(eval(f, Assignment{{1, true}}), DomainError);
  CHECK(eval(Cnf(), Assignment{}) == 1);
  Cnf contradiction = Cnf::of({{1}, {-1}});
  for_each_assignment({1}, [&](const Assignment& a) {
    CHECK(eval(contradiction, a) == 0);
  });
}

TEST_CASE("cnf size counts literal occurrences") {
  CHECK(cnf_size(Cnf::of({{1, 2}, {2, 3}})) == 4);
  CHECK(cnf_size(Cnf()) == 0);
  CHECK(cnf_size(Cnf::from_clauses({Clause::empty()})) == 0);
}

TEST_CASE("canonical keys identify CNFs exactly") {
  CHECK(canonical_key(Cnf::of({{2, 1}})) == canonical_key(Cnf::of({{1, 2}})));
  CHECK(!(canonical_key(Cnf::of({{1}})) == canonical_key(Cnf::of({{-1}}))));
  CHECK(!(canonical_key(Cnf()) ==
          canonical_key(Cnf::from_clauses({Clause::empty()}))));
}

TEST_CASE("canonical keys are collision free over a full enumeration") {
  // all CNFs over 3 variables with clause width <= 2
  std::vector<Clause> universe;
  for (Var v = 1; v <= 3; ++v) {
    universe.push_back(Clause::of({v}));
    universe.push_back(Clause::of({-v}));
  }
  for (Var v = 1; v <= 3; ++v)
    for (Var w = v + 1; w <= 3; ++w)
      for (int s = 0; s < 4; ++s)
        universe.push_back(Clause::of(
            {make_lit(v, s & 1), make_lit(w, (s >> 1) & 1)}));
  REQUIRE(universe.size() == 18);

  std::set<CanonicalKey> seen;
  long long total = 0;
  for (std::uint32_t mask = 0; mask < (1u << 18); ++mask) {
    std::vector<Clause> clauses;
    for (int i = 0; i < 18; ++i)
      if (mask & (1u << i)) clauses.push_back(universe[i]);
    seen.insert(canonical_key(Cnf::from_clauses(std::move(clauses))));
    ++total;
  }
  CHECK((long long)seen.size() == total);
}

TEST_CASE("empty clause and empty cnf are distinct") {
  Cnf empty_cnf;
  Cnf falsum = Cnf::from_clauses({Clause::empty()});
  CHECK(empty_cnf.empty());
  CHECK(!falsum.empty());
  CHECK(falsum.has_empty_clause());
  CHECK(!(empty_cnf == falsum));
}

TEST_CASE("delete_from removes clauses and strips variables") {
  Cnf f = Cnf::of({{1, 2}, {2, 3}, {3, 4}});
  // delete variable 2 and the clause {3,4}
  Cnf e = delete_from(f, {2}, {2});
  CHECK(e == Cnf::of({{1}, {3}}));
  // deleting every variable of a kept clause leaves the empty clause
  Cnf g = delete_from(Cnf::of({{1, 2}}), {1, 2}, {});
  CHECK(g.has_empty_clause());
}

TEST_SUITE_END();
