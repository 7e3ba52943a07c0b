#include "forestcalc/oracle.hpp"

#include <algorithm>
#include <optional>

namespace forestcalc {

namespace {

constexpr int kMaxVertices = 10;
constexpr int kMaxArcs = 20;

void check_guardrail(const WeightedDigraph& g) {
  if (g.order() > kMaxVertices || static_cast<int>(g.arcs().size()) > kMaxArcs)
    throw Error("oracle guardrail exceeded (n <= 10, |E| <= 20)");
}

// Out-forest test for an arc subset: indegree <= 1 and no directed circuit.
// With indegree <= 1 the in-arc tails form partial parent pointers, so a
// circuit shows up as a parent walk returning to its start.
std::optional<Forest> try_forest(const WeightedDigraph& g, const std::vector<int>& arc_ids) {
  const int n = g.order();
  std::vector<int> parent(n, -1);
  Rational weight(1);
  for (int id : arc_ids) {
    const Arc& a = g.arcs()[id];
    if (parent[a.head] != -1) return std::nullopt;
    parent[a.head] = a.tail;
    weight *= a.weight;
  }
  for (int v = 0; v < n; ++v) {
    int u = parent[v];
    int steps = 0;
    while (u != -1) {
      if (u == v) return std::nullopt;
      u = parent[u];
      if (++steps > n) return std::nullopt;
    }
  }
  Forest f;
  f.arc_ids = arc_ids;
  f.weight = weight;
  f.parent = parent;
  for (int v = 0; v < n; ++v)
    if (parent[v] == -1) f.roots.push_back(v);
  return f;
}

int root_of(const Forest& f, int v) {
  while (f.parent[v] != -1) v = f.parent[v];
  return v;
}

// Enumerates k-subsets of `pool` and keeps the ones passing the forest test.
ForestFamily enumerate_from_pool(const WeightedDigraph& g, const std::vector<int>& pool, int k) {
  ForestFamily fam;
  fam.k = k;
  fam.total_weight = Rational(0);
  const int m = static_cast<int>(pool.size());
  if (k > m) return fam;

  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  std::vector<int> subset(k);
  while (true) {
    for (int i = 0; i < k; ++i) subset[i] = pool[idx[i]];
    if (auto f = try_forest(g, subset)) {
      fam.total_weight += f->weight;
      fam.forests.push_back(std::move(*f));
    }
    // next lexicographic combination
    int i = k - 1;
    while (i >= 0 && idx[i] == m - k + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return fam;
}

std::vector<int> all_arc_ids(const WeightedDigraph& g) {
  std::vector<int> ids(g.arcs().size());
  for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = static_cast<int>(i);
  return ids;
}

int max_forest_size(const WeightedDigraph& g, const std::vector<int>& pool) {
  for (int k = static_cast<int>(pool.size()); k > 0; --k) {
    ForestFamily fam = enumerate_from_pool(g, pool, k);
    if (!fam.forests.empty()) return k;
  }
  return 0;
}

}  // namespace

ForestFamily enumerate_out_forests(const WeightedDigraph& g, int k) {
  check_guardrail(g);
  if (k < 0 || k > static_cast<int>(g.arcs().size()))
    throw Error("forest size out of range");
  return enumerate_from_pool(g, all_arc_ids(g), k);
}

Matrix<Rational> oracle_Qk(const WeightedDigraph& g, int k) {
  ForestFamily fam = enumerate_out_forests(g, k);
  Matrix<Rational> q(g.order());
  for (const Forest& f : fam.forests)
    for (int v = 0; v < g.order(); ++v) q(v, root_of(f, v)) += f.weight;
  return q;
}

int oracle_out_dimension(const WeightedDigraph& g) {
  check_guardrail(g);
  return g.order() - max_forest_size(g, all_arc_ids(g));
}

KnotFactorization knot_factorization_check(const WeightedDigraph& g, const std::vector<int>& knot,
                                           int j, int i) {
  check_guardrail(g);
  const int n = g.order();
  if (std::find(knot.begin(), knot.end(), j) == knot.end())
    throw Error("vertex j does not belong to the given knot");

  StructureReport rep = analyze_structure(g);
  auto sorted = knot;
  std::sort(sorted.begin(), sorted.end());
  std::size_t which = 0;
  for (; which < rep.undominated_knots.size(); ++which)
    if (rep.undominated_knots[which] == sorted) break;
  if (which == rep.undominated_knots.size()) throw Error("the given set is not an undominated knot");

  std::vector<char> in_knot(n, 0);
  for (int v : sorted) in_knot[v] = 1;

  // Spanning diverging trees of the restriction to K: |K|-1 arcs inside K.
  std::vector<int> knot_arcs;
  for (int id = 0; id < static_cast<int>(g.arcs().size()); ++id) {
    const Arc& a = g.arcs()[id];
    if (in_knot[a.tail] && in_knot[a.head]) knot_arcs.push_back(id);
  }
  const int tree_size = static_cast<int>(sorted.size()) - 1;
  ForestFamily trees_all = enumerate_from_pool(g, knot_arcs, tree_size);
  Rational eps_trees(0), eps_trees_j(0);
  std::vector<Rational> eps_trees_by_root(n, Rational(0));
  for (const Forest& f : trees_all.forests) {
    // Spanning tree of K <=> exactly one root inside K and no arc touching K's
    // outside (the pool already guarantees the latter).
    int roots_in_knot = 0, the_root = -1;
    for (int r : f.roots)
      if (in_knot[r]) {
        ++roots_in_knot;
        the_root = r;
      }
    if (roots_in_knot != 1) continue;
    eps_trees += f.weight;
    eps_trees_by_root[the_root] += f.weight;
    if (the_root == j) eps_trees_j += f.weight;
  }

  // Maximum out forests of Gamma_{-K} where i is reachable from K inside the
  // forest (i itself in K counts).
  std::vector<int> minus_k_arcs;
  for (int id = 0; id < static_cast<int>(g.arcs().size()); ++id) {
    const Arc& a = g.arcs()[id];
    if (!(in_knot[a.tail] && in_knot[a.head])) minus_k_arcs.push_back(id);
  }
  int max_minus = max_forest_size(g, minus_k_arcs);
  ForestFamily maxual = enumerate_from_pool(g, minus_k_arcs, max_minus);
  Rational eps_reaching(0);
  for (const Forest& f : maxual.forests) {
    int v = i;
    bool reached = false;
    while (v != -1) {
      if (in_knot[v]) {
        reached = true;
        break;
      }
      v = f.parent[v];
    }
    if (reached) eps_reaching += f.weight;
  }

  int full_max = max_forest_size(g, all_arc_ids(g));
  ForestFamily fmax = enumerate_out_forests(g, full_max);

  Matrix<Rational> q = oracle_Qk(g, full_max);
  Rational sigma_max = fmax.total_weight;

  KnotFactorization out;
  out.lhs = q(i, j) / sigma_max;
  out.rhs = eps_trees_j * eps_reaching / sigma_max;

  const std::vector<int>& basin = rep.k_plus[which];
  if (std::find(basin.begin(), basin.end(), i) != basin.end()) {
    out.basin_clause_checked = true;
    Rational jbar_ij = q(i, j) / sigma_max;
    Rational jbar_jj = q(j, j) / sigma_max;
    out.basin_clause_holds = jbar_ij == jbar_jj && jbar_jj == eps_trees_j / eps_trees;
  }

  // Item 5: columns of Jbar indexed inside K are proportional with the
  // tree-weight ratio.
  for (int j2 : sorted) {
    for (int r = 0; r < n; ++r) {
      if (q(r, j2) * eps_trees_j != q(r, j) * eps_trees_by_root[j2]) {
        out.columns_proportional = false;
        break;
      }
    }
    if (!out.columns_proportional) break;
  }
  return out;
}

DenseForestReport dense_forest_checks(const WeightedDigraph& g) {
  check_guardrail(g);
  DenseForestReport rep;
  const int n = g.order();
  int max_k = max_forest_size(g, all_arc_ids(g));
  if (max_k == 0) {
    rep.vacuous = true;
    return rep;
  }

  ForestFamily dense_lo = enumerate_out_forests(g, max_k - 1);
  ForestFamily dense_hi = enumerate_out_forests(g, max_k);

  std::vector<char> rootable(n, 0);
  for (const Forest& f : dense_lo.forests)
    for (int r : f.roots) rootable[r] = 1;
  for (int v = 0; v < n; ++v)
    if (!rootable[v]) rep.every_vertex_rootable = false;

  Matrix<Rational> q_lo = oracle_Qk(g, max_k - 1);
  for (int v = 0; v < n; ++v)
    if (q_lo(v, v).is_zero()) rep.diag_q_positive = false;
  if (rep.diag_q_positive != rep.every_vertex_rootable)
    throw ConsistencyError("diag(Q_{n-v-1}) positivity disagrees with root enumeration");

  std::vector<char> covered(g.arcs().size(), 0);
  for (const ForestFamily* fam : {&dense_lo, &dense_hi})
    for (const Forest& f : fam->forests)
      for (int id : f.arc_ids) covered[id] = 1;
  for (char c : covered)
    if (!c) rep.every_arc_in_dense_forest = false;
  return rep;
}

bool max_forest_reachability_check(const WeightedDigraph& g) {
  check_guardrail(g);
  const int n = g.order();
  std::vector<std::vector<char>> reach;
  reach.reserve(n);
  for (int i = 0; i < n; ++i) reach.push_back(g.reachable_set(i));

  int max_k = max_forest_size(g, all_arc_ids(g));
  ForestFamily fam = enumerate_out_forests(g, max_k);
  for (const Forest& f : fam.forests) {
    for (int i = 0; i < n; ++i) {
      for (int j : f.roots) {
        if (root_of(f, i) == j) continue;  // same tree
        if (j != i && reach[i][j]) return false;
      }
    }
  }
  return true;
}

}  // namespace forestcalc
