#pragma once

#include "forestcalc/digraph.hpp"
#include "forestcalc/matrix.hpp"

#include <random>
#include <vector>

namespace forestcalc::testing {

// Appendix path digraph: j -> i -> k -> t with weights 4, 1, 1.
// sigma = (1, 6, 9, 4), v = 1.
inline WeightedDigraph path_fixture() {
  return WeightedDigraph({"j", "i", "k", "t"},
                         {{0, 1, Rational(4)}, {1, 2, Rational(1)}, {2, 3, Rational(1)}});
}

// Appendix digraph with arcs (i,k) = 4, (k,t) = 1, (t,j) = 4; vertex order
// (i, j, k, t) matches the printed P1(1). s(1) = 50.
inline WeightedDigraph transit_fixture() {
  return WeightedDigraph({"i", "j", "k", "t"},
                         {{0, 2, Rational(4)}, {2, 3, Rational(1)}, {3, 1, Rational(4)}});
}

// Appendix 4-cycle i -> j -> k -> t -> i with weights 1, 10, 10, 1.
inline WeightedDigraph cycle_fixture() {
  return WeightedDigraph({"i", "j", "k", "t"},
                         {{0, 1, Rational(1)},
                          {1, 2, Rational(10)},
                          {2, 3, Rational(10)},
                          {3, 0, Rational(1)}});
}

inline WeightedDigraph empty_digraph(int n) {
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) labels.push_back("v" + std::to_string(i + 1));
  return WeightedDigraph(std::move(labels), {});
}

inline Matrix<Rational> rmat(const std::vector<std::vector<Rational>>& rows) {
  Matrix<Rational> m(static_cast<int>(rows.size()));
  for (int i = 0; i < m.order(); ++i)
    for (int j = 0; j < m.order(); ++j) m(i, j) = rows[i][j];
  return m;
}

inline Matrix<Rational> imat(const std::vector<std::vector<long long>>& rows) {
  Matrix<Rational> m(static_cast<int>(rows.size()));
  for (int i = 0; i < m.order(); ++i)
    for (int j = 0; j < m.order(); ++j) m(i, j) = Rational(rows[i][j]);
  return m;
}

// Random simple digraph within the oracle guardrails: n in [2, max_n], at most
// max_arcs arcs, integer weights in 1..max_weight.
inline WeightedDigraph random_digraph(std::mt19937_64& rng, int max_n = 6, int max_arcs = 12,
                                      int max_weight = 5) {
  std::uniform_int_distribution<int> n_dist(2, max_n);
  int n = n_dist(rng);
  std::vector<std::pair<int, int>> pairs;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (a != b) pairs.emplace_back(a, b);
  std::shuffle(pairs.begin(), pairs.end(), rng);
  int cap = std::min<int>(max_arcs, static_cast<int>(pairs.size()));
  std::uniform_int_distribution<int> count_dist(0, cap);
  int m = count_dist(rng);
  std::uniform_int_distribution<int> w_dist(1, max_weight);
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) labels.push_back("v" + std::to_string(i + 1));
  std::vector<Arc> arcs;
  for (int i = 0; i < m; ++i)
    arcs.push_back({pairs[i].first, pairs[i].second, Rational(w_dist(rng))});
  return WeightedDigraph(std::move(labels), std::move(arcs));
}

// Random digraph with a symmetric Kirchhoff matrix: arcs come in equal-weight
// opposite pairs.
inline WeightedDigraph random_symmetric_digraph(std::mt19937_64& rng, int max_n = 5,
                                                int max_weight = 5) {
  std::uniform_int_distribution<int> n_dist(2, max_n);
  int n = n_dist(rng);
  std::uniform_int_distribution<int> w_dist(1, max_weight);
  std::uniform_int_distribution<int> coin(0, 1);
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) labels.push_back("v" + std::to_string(i + 1));
  std::vector<Arc> arcs;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (coin(rng)) {
        Rational w(w_dist(rng));
        arcs.push_back({a, b, w});
        arcs.push_back({b, a, w});
      }
  return WeightedDigraph(std::move(labels), std::move(arcs));
}

// Independent determinant for cross-checks: plain cofactor expansion, no
// elimination shared with the production code.
inline Rational cofactor_det(const Matrix<Rational>& a) {
  const int n = a.order();
  if (n == 0) return Rational(1);
  if (n == 1) return a(0, 0);
  Rational acc(0);
  for (int c = 0; c < n; ++c) {
    if (a(0, c).is_zero()) continue;
    Matrix<Rational> sub(n - 1);
    for (int i = 1; i < n; ++i) {
      int cc = 0;
      for (int j = 0; j < n; ++j) {
        if (j == c) continue;
        sub(i - 1, cc++) = a(i, j);
      }
    }
    Rational term = a(0, c) * cofactor_det(sub);
    acc += (c % 2 == 0) ? term : -term;
  }
  return acc;
}

}  // namespace forestcalc::testing
