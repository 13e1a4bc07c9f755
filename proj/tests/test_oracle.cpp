#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sw2l/oracle.hpp"
#include "testutil.hpp"

using namespace sw2l;

TEST_CASE("brute force: diamond yes, path no") {
  Digraph dia = testutil::diamond_graph();
  LinkageQuery q{0, 3, 0, 3, 0, 0};
  auto pair = brute_force_sw2l(dia, q);
  REQUIRE(pair.has_value());
  CHECK(verify_solution(dia, q, pair->first, pair->second).ok);

  Digraph path(3);
  path.add_arc(0, 1);
  path.add_arc(1, 2);
  CHECK_FALSE(brute_force_sw2l(path, LinkageQuery{0, 2, 0, 2, 5, 5}).has_value());
}

TEST_CASE("brute force: size guard") {
  Digraph big(15);
  CHECK_THROWS_AS(brute_force_sw2l(big, LinkageQuery{0, 1, 0, 1, 0, 0}), LimitError);
  OracleLimits relaxed;
  relaxed.max_n = 20;
  CHECK_FALSE(brute_force_sw2l(big, LinkageQuery{0, 1, 0, 1, 0, 0}, relaxed).has_value());
}

TEST_CASE("brute force: swapped sides agree") {
  // two independent search orders: pair 1 outer vs pair 2 outer
  for (std::uint64_t seed = 700; seed < 760; ++seed) {
    auto [g, base] = gen_random_instance(seed, 6, 0.3, 0, 0);
    LinkageQuery q = base;
    q.k1 = static_cast<std::int64_t>(seed % 3);
    q.k2 = static_cast<std::int64_t>((seed / 3) % 3);
    LinkageQuery swapped{q.s2, q.t2, q.s1, q.t1, q.k2, q.k1};
    auto a = brute_force_sw2l(g, q);
    auto b = brute_force_sw2l(g, swapped);
    CHECK(a.has_value() == b.has_value());
    if (a) {
      CHECK(verify_solution(g, q, a->first, a->second).ok);
      CHECK(verify_solution(g, swapped, b->first, b->second).ok);
    }
  }
}

TEST_CASE("ssw2l: unbounded side two") {
  // side 1 must stay near-shortest; side 2 may wander
  Digraph g(5);
  g.add_arc(0, 1);
  g.add_arc(1, 4);  // short (0,4)
  g.add_arc(0, 2);
  g.add_arc(2, 3);
  g.add_arc(3, 4);  // long (0,4)
  auto pair = ssw2l_solve(g, 0, 4, 0, 4, 0);
  REQUIRE(pair.has_value());
  CHECK(pair->first.length() == 2);
  CHECK(pair->second.length() == 3);
  CHECK(testutil::arcs_disjoint(g, pair->first, pair->second));
}

TEST_CASE("ssw2l: disconnected side two") {
  Digraph g(4);
  g.add_arc(0, 1);
  g.add_arc(1, 2);
  // vertex 3 isolated
  CHECK_FALSE(ssw2l_solve(g, 0, 2, 0, 3, 10).has_value());
}

TEST_CASE("ssw2l: agrees with the double-capped oracle when side 2 is free") {
  for (std::uint64_t seed = 800; seed < 840; ++seed) {
    auto [g, base] = gen_random_instance(seed, 6, 0.3, 0, 0);
    LinkageQuery q = base;
    q.k1 = static_cast<std::int64_t>(seed % 3);
    q.k2 = g.vertex_count();  // cap beyond any simple path: unconstrained
    auto semi = ssw2l_solve(g, q.s1, q.t1, q.s2, q.t2, q.k1);
    auto full = brute_force_sw2l(g, q);
    CHECK(semi.has_value() == full.has_value());
    if (semi)
      CHECK(verify_with_caps(g, q.s1, q.t1, q.s2, q.t2,
                             bfs_dist_from(g, q.s1)[static_cast<size_t>(q.t1)] + q.k1,
                             std::nullopt, semi->first, semi->second)
                .ok);
  }
}

TEST_CASE("acyclic linkage: diamond twice, path cut") {
  Digraph dia = testutil::diamond_graph();
  WeakLinkageInstance inst;
  inst.graph = dia;
  inst.pairs = {{0, 3, std::nullopt}, {0, 3, std::nullopt}};
  auto sol = acyclic_weak_k_linkage(inst);
  REQUIRE(sol.has_value());
  REQUIRE(sol->size() == 2);
  CHECK(testutil::arcs_disjoint(dia, (*sol)[0], (*sol)[1]));
  CHECK((*sol)[0].source() == 0);
  CHECK((*sol)[0].target() == 3);
  CHECK(testutil::exhaustive_linkage(dia, inst.pairs));

  Digraph path(3);
  path.add_arc(0, 1);
  path.add_arc(1, 2);
  WeakLinkageInstance cut;
  cut.graph = path;
  cut.pairs = {{0, 2, std::nullopt}, {0, 2, std::nullopt}};
  CHECK_FALSE(acyclic_weak_k_linkage(cut).has_value());
  CHECK_FALSE(testutil::exhaustive_linkage(path, cut.pairs));
}

TEST_CASE("acyclic linkage: cyclic input is rejected") {
  Digraph cyc(2);
  cyc.add_arc(0, 1);
  cyc.add_arc(1, 0);
  WeakLinkageInstance inst;
  inst.graph = cyc;
  inst.pairs = {{0, 1, std::nullopt}};
  CHECK_THROWS_WITH_AS(acyclic_weak_k_linkage(inst), doctest::Contains("not acyclic"),
                       InputError);
}

TEST_CASE("acyclic linkage: coincident terminals use empty paths") {
  Digraph dia = testutil::diamond_graph();
  WeakLinkageInstance inst;
  inst.graph = dia;
  inst.pairs = {{1, 1, std::nullopt}, {0, 3, std::nullopt}};
  auto sol = acyclic_weak_k_linkage(inst);
  REQUIRE(sol.has_value());
  CHECK((*sol)[0] == Path({1}));
  CHECK((*sol)[1].source() == 0);
  CHECK((*sol)[1].target() == 3);
}

TEST_CASE("acyclic linkage: caps bite") {
  // two (0,3)-routes of lengths 2 and 3; a cap of 2 on both pairs kills one
  Digraph g(5);
  g.add_arc(0, 1);
  g.add_arc(1, 4);
  g.add_arc(0, 2);
  g.add_arc(2, 3);
  g.add_arc(3, 4);
  WeakLinkageInstance inst;
  inst.graph = g;
  inst.pairs = {{0, 4, 2}, {0, 4, 3}};
  CHECK(acyclic_weak_k_linkage(inst).has_value());
  inst.pairs = {{0, 4, 2}, {0, 4, 2}};
  CHECK_FALSE(acyclic_weak_k_linkage(inst).has_value());
  inst.pairs = {{0, 4, 1}, {0, 4, 3}};  // cap below the shortest distance
  CHECK_THROWS_AS(acyclic_weak_k_linkage(inst), InputError);
}

TEST_CASE("acyclic linkage: random DAGs agree with tuple enumeration") {
  sw2l::SplitMix64 rng(9090);
  for (std::uint64_t seed = 900; seed < 960; ++seed) {
    int n = 5 + static_cast<int>(seed % 4);
    Digraph g = testutil::random_dag(seed, n, 0.35);
    WeakLinkageInstance inst;
    inst.graph = g;
    int pair_count = 1 + static_cast<int>(seed % 3);
    bool degenerate = false;
    for (int i = 0; i < pair_count; ++i) {
      Vertex s = static_cast<Vertex>(rng.below(static_cast<std::uint64_t>(n)));
      Vertex t = static_cast<Vertex>(rng.below(static_cast<std::uint64_t>(n)));
      std::optional<std::int64_t> cap;
      std::int64_t d = bfs_dist_from(g, s)[static_cast<size_t>(t)];
      if (rng.below(2) == 0 && reachable(d)) cap = d + static_cast<std::int64_t>(rng.below(3));
      if (!reachable(d) && cap) degenerate = true;
      inst.pairs.push_back({s, t, cap});
    }
    if (degenerate) continue;
    bool expected = testutil::exhaustive_linkage(g, inst.pairs);
    std::optional<std::vector<Path>> got;
    bool threw = false;
    try {
      got = acyclic_weak_k_linkage(inst);
    } catch (const InputError&) {
      threw = true;  // cap below distance on an unreachable pair
    }
    if (threw) continue;
    CHECK(got.has_value() == expected);
    if (got) {
      for (size_t i = 0; i < inst.pairs.size(); ++i) {
        const Path& p = (*got)[i];
        CHECK(p.source() == inst.pairs[i].s);
        CHECK(p.target() == inst.pairs[i].t);
        CHECK(p.arc_ids_in(g).has_value());
        if (inst.pairs[i].cap) CHECK(p.length() <= *inst.pairs[i].cap);
        for (size_t j = i + 1; j < inst.pairs.size(); ++j)
          CHECK(testutil::arcs_disjoint(g, p, (*got)[j]));
      }
    }
  }
}

TEST_CASE("sat brute force: fixture formula") {
  // (x2 v x3 v x4)(~x1 v x3 v ~x4)(x1 v ~x2 v ~x3)(x1 v x2 v ~x4)
  std::vector<std::vector<int>> clauses{{2, 3, 4}, {-1, 3, -4}, {1, -2, -3}, {1, 2, -4}};
  auto a = sat_brute_force(4, clauses);
  REQUIRE(a.has_value());
  // first satisfying assignment in ascending binary order is x2 alone
  CHECK(a->value == std::vector<bool>{false, true, false, false});

  // the assignment x1=x2=x3=1, x4=0 also satisfies
  Assignment b;
  b.value = {true, true, true, false};
  CnfFormula f = make_cnf(4, {{2, 3, 4}, {-1, 3, -4}, {1, -2, -3}, {1, 2, -4}});
  CHECK(b.satisfies(f));
  CHECK(sat_brute_force(f).has_value());
}

TEST_CASE("sat brute force: degenerate clause lists") {
  CHECK_FALSE(sat_brute_force(2, {{1, 2}, {}}).has_value());  // empty clause
  auto empty = sat_brute_force(3, {});
  REQUIRE(empty.has_value());  // no clauses: all-false works
  CHECK(empty->value == std::vector<bool>{false, false, false});
  CHECK_THROWS_AS(sat_brute_force(25, {}), LimitError);
  CHECK_THROWS_AS(sat_brute_force(2, {{0}}), InputError);
  CHECK_THROWS_AS(sat_brute_force(2, {{3}}), InputError);
}

TEST_CASE("sat brute force: unsatisfiable full formula") {
  // all eight clauses over three variables
  std::vector<std::vector<int>> clauses;
  for (int mask = 0; mask < 8; ++mask)
    clauses.push_back({(mask & 1) ? 1 : -1, (mask & 2) ? 2 : -2, (mask & 4) ? 3 : -3});
  CHECK_FALSE(sat_brute_force(3, clauses).has_value());
}
