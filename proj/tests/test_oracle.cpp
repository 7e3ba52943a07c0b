#include "forestcalc/oracle.hpp"

#include "forestcalc/forest_calculus.hpp"
#include "fixtures.hpp"

#include <doctest.h>

#include <random>

using namespace forestcalc;
using namespace forestcalc::testing;

TEST_CASE("k = 0 family is the single empty forest of weight 1") {
  std::mt19937_64 rng(61);
  for (int rep = 0; rep < 10; ++rep) {
    WeightedDigraph g = random_digraph(rng, 5);
    ForestFamily fam = enumerate_out_forests(g, 0);
    REQUIRE(fam.forests.size() == 1);
    CHECK(fam.total_weight == 1);
    CHECK(fam.forests[0].roots.size() == static_cast<std::size_t>(g.order()));
    CHECK(oracle_Qk(g, 0) == Matrix<Rational>::identity(g.order()));
  }
}

TEST_CASE("path fixture families match the appendix") {
  WeightedDigraph g = path_fixture();

  ForestFamily f3 = enumerate_out_forests(g, 3);
  REQUIRE(f3.forests.size() == 1);  // only the full path
  CHECK(f3.total_weight == 4);

  ForestFamily f2 = enumerate_out_forests(g, 2);
  CHECK(f2.forests.size() == 3);
  CHECK(f2.total_weight == 9);

  ForestFamily f1 = enumerate_out_forests(g, 1);
  CHECK(f1.total_weight == 6);  // sum of the arc weights

  CHECK(oracle_Qk(g, 3) == imat({{4, 0, 0, 0}, {4, 0, 0, 0}, {4, 0, 0, 0}, {4, 0, 0, 0}}));
  CHECK(oracle_Qk(g, 2) == imat({{9, 0, 0, 0}, {8, 1, 0, 0}, {4, 1, 4, 0}, {0, 1, 4, 4}}));
}

TEST_CASE("transit fixture: the unique 3-arc forest weighs 16") {
  WeightedDigraph g = transit_fixture();
  Matrix<Rational> q3 = oracle_Qk(g, 3);
  CHECK(q3(g.vertex("j"), g.vertex("i")) == 16);  // P1(1) entry 0.32 = 16/50
  ForestFamily f3 = enumerate_out_forests(g, 3);
  CHECK(f3.forests.size() == 1);
  CHECK(f3.total_weight == 16);
}

TEST_CASE("guardrail rejects oversized inputs") {
  std::vector<std::string> labels;
  std::vector<Arc> arcs;
  for (int i = 0; i < 11; ++i) labels.push_back("v" + std::to_string(i));
  for (int i = 0; i + 1 < 11; ++i) arcs.push_back({i, i + 1, Rational(1)});
  WeightedDigraph big(labels, arcs);
  CHECK_THROWS_AS(enumerate_out_forests(big, 1), Error);
  CHECK_THROWS_AS(oracle_Qk(big, 1), Error);
  WeightedDigraph g = path_fixture();
  CHECK_THROWS_AS(enumerate_out_forests(g, -1), Error);
  CHECK_THROWS_AS(enumerate_out_forests(g, 4), Error);  // beyond |E|
}

TEST_CASE("row sums of oracle Q_k equal sigma_k") {
  std::mt19937_64 rng(67);
  for (int rep = 0; rep < 25; ++rep) {
    WeightedDigraph g = random_digraph(rng, 5, 10);
    int d = g.order() - oracle_out_dimension(g);
    for (int k = 0; k <= d; ++k) {
      ForestFamily fam = enumerate_out_forests(g, k);
      Matrix<Rational> q = oracle_Qk(g, k);
      for (const Rational& s : q.row_sums()) CHECK(s == fam.total_weight);
    }
  }
}

TEST_CASE("knot factorization on the path fixture") {
  WeightedDigraph g = path_fixture();
  // Single-vertex knot {j}; for i = t the factorization gives 1 = 1.
  KnotFactorization f = knot_factorization_check(g, {0}, 0, 3);
  CHECK(f.lhs == 1);
  CHECK(f.rhs == 1);
  CHECK(f.basin_clause_checked);
  CHECK(f.basin_clause_holds);
  CHECK(f.columns_proportional);
}

TEST_CASE("an undominated vertex j has Jbar_jj = 1") {
  WeightedDigraph g = transit_fixture();
  int j = g.vertex("i");  // i has no incoming arcs
  KnotFactorization f = knot_factorization_check(g, {j}, j, j);
  CHECK(f.lhs == 1);
  CHECK(f.rhs == 1);
}

TEST_CASE("knot factorization rejects bad arguments") {
  WeightedDigraph g = path_fixture();
  CHECK_THROWS_AS(knot_factorization_check(g, {0}, 1, 2), Error);  // j not in K
  CHECK_THROWS_AS(knot_factorization_check(g, {1}, 1, 2), Error);  // {i} is dominated
}

TEST_CASE("knot factorization holds on random multi-knot digraphs") {
  std::mt19937_64 rng(71);
  int checked = 0;
  for (int rep = 0; rep < 200 && checked < 60; ++rep) {
    WeightedDigraph g = random_digraph(rng, 6, 10);
    StructureReport r = analyze_structure(g);
    if (r.undominated_knots.size() < 2) continue;
    for (const auto& knot : r.undominated_knots)
      for (int j : knot)
        for (int i = 0; i < g.order(); ++i) {
          KnotFactorization f = knot_factorization_check(g, knot, j, i);
          CHECK(f.lhs == f.rhs);
          CHECK(f.basin_clause_holds);
          CHECK(f.columns_proportional);
          ++checked;
        }
  }
  CHECK(checked >= 60);
}

TEST_CASE("dense forest coverage on the path fixture") {
  WeightedDigraph g = path_fixture();
  DenseForestReport rep = dense_forest_checks(g);
  CHECK(!rep.vacuous);
  CHECK(rep.every_vertex_rootable);
  CHECK(rep.diag_q_positive);
  CHECK(rep.every_arc_in_dense_forest);
  // diag(Q_{n-v-1}) = (9, 1, 4, 4) per the appendix
  Matrix<Rational> q2 = oracle_Qk(g, 2);
  CHECK(q2(0, 0) == 9);
  CHECK(q2(1, 1) == 1);
  CHECK(q2(2, 2) == 4);
  CHECK(q2(3, 3) == 4);
}

TEST_CASE("every arc of a chorded 3-cycle appears in a dense forest") {
  WeightedDigraph g(
      {"a", "b", "c"},
      {{0, 1, Rational(1)}, {1, 2, Rational(1)}, {2, 0, Rational(1)}, {0, 2, Rational(1)}});
  DenseForestReport rep = dense_forest_checks(g);
  CHECK(rep.every_vertex_rootable);
  CHECK(rep.every_arc_in_dense_forest);
}

TEST_CASE("arcless digraph: dense checks pass vacuously") {
  DenseForestReport rep = dense_forest_checks(empty_digraph(3));
  CHECK(rep.vacuous);
  CHECK(rep.every_vertex_rootable);
  CHECK(rep.every_arc_in_dense_forest);
}

TEST_CASE("dense forest properties hold on random digraphs") {
  std::mt19937_64 rng(73);
  for (int rep = 0; rep < 40; ++rep) {
    WeightedDigraph g = random_digraph(rng, 6, 10);
    DenseForestReport r = dense_forest_checks(g);
    CHECK(r.every_vertex_rootable);
    CHECK(r.every_arc_in_dense_forest);
  }
}

TEST_CASE("maximum forest roots are unreachable from other trees") {
  CHECK(max_forest_reachability_check(path_fixture()));  // single tree, vacuous
  WeightedDigraph two_arcs({"a", "b", "c", "d"}, {{0, 1, Rational(1)}, {2, 3, Rational(1)}});
  CHECK(max_forest_reachability_check(two_arcs));
  std::mt19937_64 rng(79);
  for (int rep = 0; rep < 100; ++rep)
    CHECK(max_forest_reachability_check(random_digraph(rng, 6, 10)));
}
