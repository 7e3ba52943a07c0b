#include "forestcalc/forest_calculus.hpp"

#include "forestcalc/oracle.hpp"
#include "fixtures.hpp"

#include <doctest.h>

#include <random>

using namespace forestcalc;
using namespace forestcalc::testing;

TEST_CASE("path fixture: sigma and the printed Q matrices") {
  ForestSequence<Rational> seq = forest_sequence<Rational>(path_fixture());
  CHECK(seq.v == 1);
  REQUIRE(seq.sigma.size() == 4);
  CHECK(seq.sigma[0] == 1);
  CHECK(seq.sigma[1] == 6);
  CHECK(seq.sigma[2] == 9);
  CHECK(seq.sigma[3] == 4);
  CHECK(seq.s == 20);
  CHECK(seq.s_partial == std::vector<Rational>{1, 7, 16, 20});
  CHECK(seq.Q[0] == Matrix<Rational>::identity(4));
  CHECK(seq.Q[2] == imat({{9, 0, 0, 0}, {8, 1, 0, 0}, {4, 1, 4, 0}, {0, 1, 4, 4}}));
  CHECK(seq.Q[3] == imat({{4, 0, 0, 0}, {4, 0, 0, 0}, {4, 0, 0, 0}, {4, 0, 0, 0}}));
}

TEST_CASE("arcless digraph: sigma = (1), Q = (I)") {
  ForestSequence<Rational> seq = forest_sequence<Rational>(empty_digraph(3));
  CHECK(seq.v == 3);
  CHECK(seq.sigma == std::vector<Rational>{1});
  REQUIRE(seq.Q.size() == 1);
  CHECK(seq.Q[0] == Matrix<Rational>::identity(3));
}

TEST_CASE("recurrence equals the enumeration oracle on random digraphs") {
  std::mt19937_64 rng(101);
  for (int rep = 0; rep < 100; ++rep) {
    WeightedDigraph g = random_digraph(rng, 6, 12);
    ForestSequence<Rational> seq = forest_sequence<Rational>(g);
    for (int k = 0; k < static_cast<int>(seq.Q.size()); ++k) {
      CHECK(seq.Q[k] == oracle_Qk(g, k));
      CHECK(seq.sigma[k] == enumerate_out_forests(g, k).total_weight);
    }
  }
}

TEST_CASE("polynomial form of Q_k matches the recurrence") {
  ForestSequence<Rational> seq = forest_sequence<Rational>(path_fixture());
  CHECK(forest_matrix_polynomial(seq, 0) == Matrix<Rational>::identity(4));
  CHECK(forest_matrix_polynomial(seq, 2) ==
        imat({{9, 0, 0, 0}, {8, 1, 0, 0}, {4, 1, 4, 0}, {0, 1, 4, 4}}));
  CHECK_THROWS_AS(forest_matrix_polynomial(seq, -1), Error);
  CHECK_THROWS_AS(forest_matrix_polynomial(seq, 4), Error);

  std::mt19937_64 rng(103);
  for (int rep = 0; rep < 30; ++rep) {
    WeightedDigraph g = random_digraph(rng, 5);
    ForestSequence<Rational> s = forest_sequence<Rational>(g);
    for (int k = 0; k < static_cast<int>(s.Q.size()); ++k)
      CHECK(forest_matrix_polynomial(s, k) == s.Q[k]);
  }
}

TEST_CASE("Q(tau) routes agree and reproduce the printed P1(1)") {
  WeightedDigraph g = transit_fixture();
  Matrix<Rational> q = q_tau(g, Rational(1));
  Matrix<Rational> p1 = q.transposed();
  Matrix<Rational> expected = rmat({{Rational(1), Rational(8, 25), Rational(4, 5), Rational(2, 5)},
                                    {Rational(0), Rational(1, 5), Rational(0), Rational(0)},
                                    {Rational(0), Rational(2, 25), Rational(1, 5), Rational(1, 10)},
                                    {Rational(0), Rational(2, 5), Rational(0), Rational(1, 2)}});
  CHECK(p1 == expected);

  ForestSequence<Rational> seq = forest_sequence<Rational>(g);
  CHECK(q_tau_inverse(g, Rational(1)) == q);
  CHECK(q_tau_series(seq, Rational(1)) == q);
  CHECK(q_tau_polynomial(seq, Rational(1)) == q);
}

TEST_CASE("Q(tau) of the arcless digraph is the identity") {
  WeightedDigraph g = empty_digraph(3);
  CHECK(q_tau(g, Rational(1)) == Matrix<Rational>::identity(3));
  CHECK(q_tau(g, Rational(1000000)) == Matrix<Rational>::identity(3));
}

TEST_CASE("q_tau rejects nonpositive tau") {
  CHECK_THROWS_AS(q_tau(path_fixture(), Rational(0)), Error);
  CHECK_THROWS_AS(q_tau(path_fixture(), Rational(-1)), Error);
}

TEST_CASE("Q(tau) tends to Jbar as tau grows") {
  WeightedDigraph g = path_fixture();
  ForestSequence<Rational> seq = forest_sequence<Rational>(g);
  NormalizedForests<Rational> nf = max_forest_matrix(seq);
  Matrix<Rational> q = q_tau(g, Rational(1000000));
  CHECK(max_abs_diff(q, nf.Jbar) < Rational(1, 10000));
}

TEST_CASE("three q_tau routes agree exactly on random digraphs and rational taus") {
  std::mt19937_64 rng(107);
  std::vector<Rational> taus{Rational(1), Rational(1, 3), Rational(7, 2), Rational(10)};
  for (int rep = 0; rep < 30; ++rep) {
    WeightedDigraph g = random_digraph(rng, 5);
    ForestSequence<Rational> seq = forest_sequence<Rational>(g);
    for (const Rational& tau : taus) {
      Matrix<Rational> a = q_tau_inverse(g, tau);
      CHECK(a == q_tau_series(seq, tau));
      CHECK(a == q_tau_polynomial(seq, tau));
      for (const Rational& rs : a.row_sums()) CHECK(rs == 1);
    }
  }
}

TEST_CASE("maximum forest matrix of the path fixture: column j of ones") {
  ForestSequence<Rational> seq = forest_sequence<Rational>(path_fixture());
  NormalizedForests<Rational> nf = max_forest_matrix(seq);
  CHECK(nf.Jbar == imat({{1, 0, 0, 0}, {1, 0, 0, 0}, {1, 0, 0, 0}, {1, 0, 0, 0}}));
  CHECK(nf.J[0] == Matrix<Rational>::identity(4));
}

TEST_CASE("Jbar of the arcless digraph is the identity") {
  ForestSequence<Rational> seq = forest_sequence<Rational>(empty_digraph(4));
  CHECK(max_forest_matrix(seq).Jbar == Matrix<Rational>::identity(4));
}

TEST_CASE("per-knot diagonal mass of Jbar is 1") {
  WeightedDigraph g = dimension_fixture(5, 2, 2);
  StructureReport rep = analyze_structure(g);
  REQUIRE(rep.undominated_knots.size() == 2);
  NormalizedForests<Rational> nf = max_forest_matrix(forest_sequence<Rational>(g));
  for (const auto& knot : rep.undominated_knots) {
    Rational mass(0);
    for (int v : knot) mass += nf.Jbar(v, v);
    CHECK(mass == 1);
  }
  // Zero pattern: Jbar_ij != 0 iff j in K~ and i reachable from j.
  std::mt19937_64 rng(109);
  for (int rep2 = 0; rep2 < 40; ++rep2) {
    WeightedDigraph h = random_digraph(rng, 6, 10);
    StructureReport r = analyze_structure(h);
    NormalizedForests<Rational> m = max_forest_matrix(forest_sequence<Rational>(h));
    std::vector<char> in_ktilde(h.order(), 0);
    for (int v : r.k_tilde) in_ktilde[v] = 1;
    for (int i = 0; i < h.order(); ++i)
      for (int j = 0; j < h.order(); ++j) {
        bool nonzero = !m.Jbar(i, j).is_zero();
        CHECK(nonzero == (in_ktilde[j] && h.reachable(j, i)));
      }
  }
}

TEST_CASE("identity battery: stochasticity, idempotency, annihilation, commutation") {
  std::mt19937_64 rng(113);
  for (int rep = 0; rep < 40; ++rep) {
    WeightedDigraph g = random_digraph(rng, 6, 10);
    const int n = g.order();
    ForestSequence<Rational> seq = forest_sequence<Rational>(g);
    NormalizedForests<Rational> nf = max_forest_matrix(seq);
    const Matrix<Rational>& l = seq.L;
    const Matrix<Rational>& jbar = nf.Jbar;
    Matrix<Rational> zero(n);

    CHECK(jbar * jbar == jbar);
    CHECK(l * jbar == zero);
    CHECK(jbar * l == zero);
    CHECK(l * seq.Q.back() == zero);
    CHECK(seq.Q.back() * l == zero);

    // Each L Q_k is a Kirchhoff matrix: zero row sums, nonpositive off-diagonal.
    for (const auto& qk : seq.Q) {
      Matrix<Rational> lq = l * qk;
      for (const Rational& s : lq.row_sums()) CHECK(s == 0);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (i != j)
            CHECK(lq(i, j) <= 0);
          else
            CHECK(lq(i, i) >= 0);
      // Q_k commutes with L and with every Q_m.
      CHECK(lq == qk * l);
    }
    for (const auto& qa : seq.Q)
      for (const auto& qb : seq.Q) CHECK(qa * qb == qb * qa);

    // J_k Jbar = Jbar J_k = Jbar, and the same for Q(tau).
    for (const auto& jk : nf.J) {
      CHECK(jk * jbar == jbar);
      CHECK(jbar * jk == jbar);
    }
    Matrix<Rational> q1 = q_tau_series(seq, Rational(2, 3));
    CHECK(q1 * jbar == jbar);
    CHECK(jbar * q1 == jbar);

    // Rank decomposition: rank L = n - v, rank Jbar = v.
    CHECK(rank(l) == n - seq.v);
    CHECK(rank(jbar) == seq.v);
  }
}

TEST_CASE("characteristic polynomial coefficients come from sigma") {
  ForestSequence<Rational> seq = forest_sequence<Rational>(path_fixture());
  // lambda (lambda^3 - 6 lambda^2 + 9 lambda - 4)
  std::vector<Rational> c = char_poly_coeffs(seq);
  CHECK(c == std::vector<Rational>{1, -6, 9, -4, 0});

  ForestSequence<Rational> seq0 = forest_sequence<Rational>(empty_digraph(3));
  CHECK(char_poly_coeffs(seq0) == std::vector<Rational>{1, 0, 0, 0});
}

TEST_CASE("principal minor sums match sigma on random digraphs") {
  std::mt19937_64 rng(127);
  for (int rep = 0; rep < 25; ++rep) {
    WeightedDigraph g = random_digraph(rng, 4, 8);
    ForestSequence<Rational> seq = forest_sequence<Rational>(g);
    const int n = g.order();
    const int d = static_cast<int>(seq.sigma.size()) - 1;
    // Independent cofactor-expansion determinants over every principal minor.
    for (int order = 1; order <= n; ++order) {
      Rational total(0);
      std::vector<int> pick(order);
      for (int i = 0; i < order; ++i) pick[i] = i;
      while (true) {
        Matrix<Rational> sub(order);
        for (int r = 0; r < order; ++r)
          for (int c2 = 0; c2 < order; ++c2) sub(r, c2) = seq.L(pick[r], pick[c2]);
        total += cofactor_det(sub);
        int i = order - 1;
        while (i >= 0 && pick[i] == n - order + i) --i;
        if (i < 0) break;
        ++pick[i];
        for (int j2 = i + 1; j2 < order; ++j2) pick[j2] = pick[j2 - 1] + 1;
      }
      CHECK(total == (order <= d ? seq.sigma[order] : Rational(0)));
    }
  }
}

TEST_CASE("annihilating polynomial evaluates to zero") {
  CHECK(annihilating_poly_check(forest_sequence<Rational>(path_fixture())).is_zero());
  CHECK(annihilating_poly_check(forest_sequence<Rational>(empty_digraph(3))).is_zero());
  std::mt19937_64 rng(131);
  for (int rep = 0; rep < 50; ++rep)
    CHECK(annihilating_poly_check(forest_sequence<Rational>(random_digraph(rng, 6))).is_zero());
}

TEST_CASE("gershgorin discs of the path fixture") {
  GershgorinReport rep = gershgorin(path_fixture());
  REQUIRE(rep.discs.size() == 4);
  CHECK(rep.discs[0].center == 0);  // vertex j is undominated
  CHECK(rep.discs[1].center == 4);
  CHECK(rep.discs[2].center == 1);
  CHECK(rep.discs[3].center == 1);
  for (const auto& d : rep.discs) CHECK(d.center == d.radius);
  CHECK(rep.all_in_right_half_plane);
  CHECK(rep.every_disc_touches_zero);
  CHECK(rep.intersection_is_zero);
  CHECK(rep.has_undominated_vertex);
}

TEST_CASE("gershgorin: arcless digraph gives degenerate discs") {
  GershgorinReport rep = gershgorin(empty_digraph(3));
  for (const auto& d : rep.discs) {
    CHECK(d.center == 0);
    CHECK(d.radius == 0);
  }
  CHECK(rep.intersection_is_zero);
}

TEST_CASE("gershgorin: strongly connected cycle leaves a fat intersection") {
  WeightedDigraph g({"a", "b", "c"},
                    {{0, 1, Rational(1)}, {1, 2, Rational(1)}, {2, 0, Rational(1)}});
  GershgorinReport rep = gershgorin(g);
  CHECK(!rep.has_undominated_vertex);
  CHECK(!rep.intersection_is_zero);
  CHECK(rep.all_in_right_half_plane);
}

TEST_CASE("gershgorin geometric and structural routes agree on random digraphs") {
  std::mt19937_64 rng(137);
  for (int rep = 0; rep < 60; ++rep) {
    GershgorinReport r = gershgorin(random_digraph(rng, 6));
    CHECK(r.intersection_is_zero == r.has_undominated_vertex);
    CHECK(r.all_in_right_half_plane);
    CHECK(r.every_disc_touches_zero);
  }
}

TEST_CASE("float mode agrees with rational mode within 1e-9") {
  std::mt19937_64 rng(139);
  for (int rep = 0; rep < 20; ++rep) {
    WeightedDigraph g = random_digraph(rng, 5, 8);
    ForestSequence<Rational> sr = forest_sequence<Rational>(g);
    ForestSequence<double> sf = forest_sequence<double>(g);
    REQUIRE(sr.Q.size() == sf.Q.size());
    for (std::size_t k = 0; k < sr.Q.size(); ++k) {
      // Scale-aware comparison: sigma can reach the hundreds at n = 5.
      double scale = std::max(1.0, scalar_traits<Rational>::to_double(sr.sigma[k]));
      CHECK(max_abs_diff(to_double_matrix(sr.Q[k]), sf.Q[k]) <= 1e-9 * scale);
    }
    Matrix<double> qf = q_tau(g, 1.0);
    Matrix<Rational> qr = q_tau(g, Rational(1));
    CHECK(max_abs_diff(to_double_matrix(qr), qf) < 1e-9);
  }
}
