#pragma once

#include "forestcalc/matrix.hpp"
#include "forestcalc/scalar.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace forestcalc {

struct Arc {
  int tail = 0;
  int head = 0;
  Rational weight;
};

// Weighted digraph without loops, at most one arc per ordered pair, all weights
// positive, at least two vertices. Immutable after construction.
class WeightedDigraph {
 public:
  WeightedDigraph(std::vector<std::string> labels, std::vector<Arc> arcs);

  int order() const { return static_cast<int>(labels_.size()); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<Arc>& arcs() const { return arcs_; }

  // -1 when the label is unknown.
  int vertex(std::string_view label) const;

  // Zero when the arc is absent.
  const Rational& weight(int tail, int head) const;
  bool has_arc(int tail, int head) const { return !weight(tail, head).is_zero(); }

  const std::vector<int>& out_neighbors(int v) const { return out_[v]; }
  const std::vector<int>& in_neighbors(int v) const { return in_[v]; }

  bool reachable(int from, int to) const;
  // Characteristic vector of everything reachable from `from` (including itself).
  std::vector<char> reachable_set(int from) const;

 private:
  std::vector<std::string> labels_;
  std::vector<Arc> arcs_;
  std::vector<std::vector<int>> out_, in_;
  std::vector<Rational> weight_by_pair_;  // n*n lookup
};

// Edge-list document: lines "tail head weight", "vertex NAME" for isolated
// vertices, '#' starts a comment. Vertices are indexed by first appearance.
WeightedDigraph parse_digraph(std::string_view text);

// The same document format back out (used by the fixture subcommand).
std::string to_edge_list(const WeightedDigraph& g);

// All arcs reversed, weights kept. Involution.
WeightedDigraph reverse(const WeightedDigraph& g);

// Copy of g with arc (tail,head) set to `weight` (added if absent).
WeightedDigraph with_arc_weight(const WeightedDigraph& g, int tail, int head, const Rational& weight);

// Copy of g with every weight multiplied by c > 0.
WeightedDigraph scale_weights(const WeightedDigraph& g, const Rational& c);

// Kirchhoff matrix: l_ij = -eps_ji for j != i, l_ii makes every row sum to zero.
template <class S>
Matrix<S> kirchhoff(const WeightedDigraph& g) {
  Matrix<S> l(g.order());
  for (const Arc& a : g.arcs()) l(a.head, a.tail) -= scalar_traits<S>::from_rational(a.weight);
  for (int i = 0; i < g.order(); ++i) {
    S diag(0);
    for (int j = 0; j < g.order(); ++j)
      if (j != i) diag -= l(i, j);
    l(i, i) = diag;
  }
  return l;
}

struct StructureReport {
  std::vector<std::vector<int>> weak_components;
  // Source strong components = undominated knots K_1..K_u, each sorted,
  // ordered by smallest member.
  std::vector<std::vector<int>> undominated_knots;
  std::vector<int> k_tilde;                  // union of the knots
  std::vector<std::vector<int>> k_plus;      // per knot: reachable from it and from no other knot
  int out_dim = 0;                           // v  = number of source components
  int in_dim = 0;                            // v' = number of sink components
};

StructureReport analyze_structure(const WeightedDigraph& g);

// Digraph on n vertices with out dimension k and in dimension k'
// (star + path + isolated vertices construction, unit weights).
WeightedDigraph dimension_fixture(int n, int k, int k_prime);

}  // namespace forestcalc
