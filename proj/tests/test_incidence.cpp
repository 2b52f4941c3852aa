#include <doctest.h>

#include <sstream>

#include "obddc/incidence.hpp"
#include "support.hpp"

using namespace obddc;
using namespace obddc::testing;

TEST_SUITE_BEGIN("incidence");

TEST_CASE("incidence graph construction") {
  Cnf p3 = Cnf::of({{1, 2}, {2, 3}});
  IncidenceGraph g = build_incidence(p3);
  CHECK(g.var_count() == 3);
  CHECK(g.clause_count() == 2);
  CHECK(g.var_to_clauses[g.index_of(2)].size() == 2);
  CHECK(max_degree(g) == 2);

  CHECK(build_incidence(Cnf()).vertex_count() == 0);
  CHECK(max_degree(build_incidence(Cnf())) == 0);

  Cnf star = Cnf::of({{1, 2, 3}});
  CHECK(max_degree(build_incidence(star)) == 3);

  Cnf k4 = graph_cnf(SimpleGraph::of(
      4, {{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}}));
  CHECK(max_degree(build_incidence(k4)) == 3);
}

TEST_CASE("convexity recognition on the worked examples") {
  // path: the natural order witnesses convexity
  auto w = detect_left_convex(build_incidence(Cnf::of({{1, 2}, {2, 3}})));
  REQUIRE(w);
  CHECK(w->vars() == std::vector<Var>{1, 2, 3});

  // complete bipartite incidence: every ordering works
  Cnf complete = Cnf::of({{1, 2, 3}, {-1, -2, -3}, {1, -2, 3}});
  auto wc = detect_left_convex(build_incidence(complete));
  REQUIRE(wc);
  CHECK(verify_convexity_witness(build_incidence(complete), *wc));

  // triangle graph CNF: the incidence 6-cycle has no witness
  Cnf triangle = Cnf::of({{1, 2}, {2, 3}, {1, 3}});
  CHECK(!detect_left_convex(build_incidence(triangle)));
}

TEST_CASE("witness verification checks intervals") {
  IncidenceGraph p3 = build_incidence(Cnf::of({{1, 2}, {2, 3}}));
  CHECK(verify_convexity_witness(p3, Ordering::of({1, 2, 3})));
  CHECK(!verify_convexity_witness(p3, Ordering::of({2, 1, 3})));

  IncidenceGraph skip = build_incidence(Cnf::of({{1, 3}, {2}}));
  CHECK(!verify_convexity_witness(skip, Ordering::of({1, 2, 3})));
  CHECK(verify_convexity_witness(skip, Ordering::of({1, 3, 2})));

  IncidenceGraph empty_clause =
      build_incidence(Cnf::from_clauses({Clause::empty()}));
  CHECK(verify_convexity_witness(empty_clause, Ordering()));

  CHECK_THROWS_AS(verify_convexity_witness(p3, Ordering::of({1, 2})),
                  DomainError);
}

TEST_CASE("recognition agrees with brute force over orderings") {
  // graph CNFs of every connected graph on up to five vertices
  for (int n = 2; n <= 5; ++n) {
    for (const SimpleGraph& g : connected_graphs_up_to_iso(n)) {
      IncidenceGraph inc = build_incidence(graph_cnf(g));
      auto fast = detect_left_convex(inc);
      auto slow = brute_force_convex_witness(inc);
      CHECK(fast.has_value() == slow.has_value());
      if (fast) CHECK(verify_convexity_witness(inc, *fast));
    }
  }
  // random CNFs on up to six variables
  Rng rng(31);
  for (int trial = 0; trial < 400; ++trial) {
    Cnf f = random_cnf(rng, 6, 7, 4);
    IncidenceGraph inc = build_incidence(f);
    auto fast = detect_left_convex(inc);
    auto slow = brute_force_convex_witness(inc);
    CHECK(fast.has_value() == slow.has_value());
    if (fast) CHECK(verify_convexity_witness(inc, *fast));
  }
  // generated convex instances must always be recognized
  for (int trial = 0; trial < 200; ++trial) {
    Cnf f = random_convex_cnf(rng, 12, 10);
    IncidenceGraph inc = build_incidence(f);
    auto fast = detect_left_convex(inc);
    REQUIRE(fast);
    CHECK(verify_convexity_witness(inc, *fast));
  }
}

TEST_CASE("recognition is deterministic") {
  Rng rng(37);
  for (int trial = 0; trial < 40; ++trial) {
    Cnf f = random_convex_cnf(rng, 10, 8);
    auto a = detect_left_convex(build_incidence(f));
    auto b = detect_left_convex(build_incidence(f));
    REQUIRE(a);
    REQUIRE(b);
    CHECK(a->vars() == b->vars());
  }
}

TEST_CASE("feedback vertex sets on the worked examples") {
  // forests need nothing deleted
  IncidenceGraph forest = build_incidence(Cnf::of({{1, 2}, {2, 3}, {4}}));
  auto d0 = feedback_vertex_set(forest, 0);
  REQUIRE(d0);
  CHECK(d0->size() == 0);

  // triangle graph CNF: one vertex of the incidence 6-cycle suffices
  Cnf triangle = Cnf::of({{1, 2}, {2, 3}, {1, 3}});
  IncidenceGraph tg = build_incidence(triangle);
  auto d1 = feedback_vertex_set(tg, 1);
  REQUIRE(d1);
  CHECK(d1->size() == 1);
  {
    AdjacencyGraph g = tg.as_graph();
    auto vertices = feedback_vertex_set(g, 1);
    REQUIRE(vertices);
    std::vector<bool> removed(g.n, false);
    for (int v : *vertices) removed[v] = true;
    CHECK(is_acyclic_without(g, removed));
  }

  // two disjoint incidence cycles force two deletions
  Cnf two = Cnf::of({{1, 2}, {2, 3}, {1, 3}, {4, 5}, {5, 6}, {4, 6}});
  IncidenceGraph two_inc = build_incidence(two);
  CHECK(!feedback_vertex_set(two_inc, 1));
  auto d2 = feedback_vertex_set(two_inc, 2);
  REQUIRE(d2);
  CHECK(d2->size() == 2);

  Guards g;
  CHECK_THROWS_AS(feedback_vertex_set(two_inc, g.fvs_budget + 1, g),
                  GuardError);
}

TEST_CASE("feedback vertex sets are minimum") {
  Rng rng(41);
  for (int trial = 0; trial < 60; ++trial) {
    Cnf f = random_cnf(rng, 5, 6, 3);
    AdjacencyGraph g = build_incidence(f).as_graph();
    if (g.n > 12) continue;
    auto found = feedback_vertex_set(g, g.n);
    std::vector<int> oracle = fvs_oracle(g);
    REQUIRE(found);
    CHECK((int)found->size() == (int)oracle.size());
    std::vector<bool> removed(g.n, false);
    for (int v : *found) removed[v] = true;
    CHECK(is_acyclic_without(g, removed));
  }
}

TEST_CASE("pace gr export and import") {
  Cnf p3 = Cnf::of({{1, 2}, {2, 3}});
  AdjacencyGraph g = build_incidence(p3).as_graph();
  std::string text = write_pace_gr(g);
  CHECK(text ==
        "p tw 5 4\n"
        "1 4\n"
        "2 4\n"
        "2 5\n"
        "3 5\n");
  std::istringstream in(text);
  AdjacencyGraph back = read_pace_gr(in);
  CHECK(back.n == g.n);
  CHECK(back.edge_count() == g.edge_count());
  for (int u = 0; u < g.n; ++u) CHECK(back.adj[u] == g.adj[u]);
}

TEST_SUITE_END();
