#pragma once

#include "forestcalc/digraph.hpp"
#include "forestcalc/matrix.hpp"

#include <vector>

namespace forestcalc {

// One spanning diverging forest: an arc subset with indegree <= 1 everywhere
// and no circuits. Weight is the product of its arc weights (1 for no arcs).
struct Forest {
  std::vector<int> arc_ids;   // indices into g.arcs()
  Rational weight;
  std::vector<int> roots;     // vertices with indegree 0, |roots| = n - |arcs|
  std::vector<int> parent;    // per vertex, the tail of its in-arc or -1
};

struct ForestFamily {
  int k = 0;
  std::vector<Forest> forests;
  Rational total_weight;      // = sigma_k; 0 for an empty family
};

// Brute force over all k-subsets of arcs. Guardrail: n <= 10 and |E| <= 20.
ForestFamily enumerate_out_forests(const WeightedDigraph& g, int k);

// Entry (i, j): total weight of k-arc out forests in which i belongs to the
// tree diverging from j.
Matrix<Rational> oracle_Qk(const WeightedDigraph& g, int k);

// Forest dimension by enumeration: n minus the largest k with a nonempty F_k.
int oracle_out_dimension(const WeightedDigraph& g);

// Theorem-1-item-3 factorization of Jbar entries over an undominated knot.
struct KnotFactorization {
  Rational lhs;                     // Jbar_ij from the forest calculus
  Rational rhs;                     // eps(T^j) * eps(P^{K->i}) / eps(F_{n-v})
  bool basin_clause_checked = false;
  bool basin_clause_holds = true;   // i in K+  =>  Jbar_ij = Jbar_jj = eps(T^j)/eps(T)
  bool columns_proportional = true; // item 5 across all of K's columns
};
KnotFactorization knot_factorization_check(const WeightedDigraph& g, const std::vector<int>& knot,
                                           int j, int i);

struct DenseForestReport {
  bool every_vertex_rootable = true;       // some (n-v-1)-arc forest has each vertex as a root
  bool diag_q_positive = true;             // the equivalent diag(Q_{n-v-1}) > 0 statement
  bool every_arc_in_dense_forest = true;   // each arc occurs in F_{n-v-1} or F_{n-v}
  bool vacuous = false;                    // n-v = 0: nothing to check
};
DenseForestReport dense_forest_checks(const WeightedDigraph& g);

// Prop. 2: in every maximum out forest, a root j of a tree not containing i is
// unreachable from i in the digraph itself.
bool max_forest_reachability_check(const WeightedDigraph& g);

}  // namespace forestcalc
