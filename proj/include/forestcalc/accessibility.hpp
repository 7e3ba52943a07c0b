#pragma once

#include "forestcalc/forest_calculus.hpp"
#include "forestcalc/inverses.hpp"

#include <optional>
#include <string>
#include <vector>

namespace forestcalc {

enum class MeasureKind { forest, dense };

// P1, P2, P3 for one parameter value. Forest kind: P1 = Q(tau)^T. Dense kind:
// P1 = R(alpha)^T with R = (L + alpha Jbar)^{-1}. P2 is always the dual
// (the same construction on the reversed digraph, transposed), and
// P3 = (P1 + P2 + P1^T + P2^T)/4 is the symmetrized index.
template <class S>
struct AccessibilityMatrices {
  MeasureKind kind = MeasureKind::forest;
  S parameter = S(0);
  Matrix<S> p1, p2, p3;
  std::optional<S> alpha_upper;  // sigma_{n-v}/sigma_{n-v-1}, dense kind only
};

// R(alpha) = (L + alpha Jbar)^{-1}, by direct inversion and by the
// group-inverse combination of J_{n-v-1} and Jbar; both must agree. Valid for
// any alpha != 0 (the matrix is nonsingular); the dense-measure interval is
// enforced by dense_accessibility, not here.
template <class S>
Matrix<S> dense_r_matrix(const WeightedDigraph& g, const S& alpha) {
  if (scalar_traits<S>::is_zero(alpha)) throw Error("alpha must be nonzero");
  ForestSequence<S> seq = forest_sequence<S>(g);
  if (static_cast<int>(seq.sigma.size()) < 2)
    throw Error("dense forests need at least one arc (n - v >= 1)");
  NormalizedForests<S> nf = max_forest_matrix(seq);
  const int d = static_cast<int>(seq.sigma.size()) - 1;

  Matrix<S> by_inversion = inverse(seq.L + alpha * nf.Jbar);
  S ratio = seq.sigma[d - 1] / seq.sigma[d];
  Matrix<S> by_combination = ratio * nf.J[d - 1] + (S(1) / alpha - ratio) * nf.Jbar;
  detail::require_consistent<S>(near(by_inversion, by_combination),
                                "R(alpha): inversion and forest-combination routes disagree");
  return by_combination;
}

namespace detail {

template <class S>
AccessibilityMatrices<S> symmetrize(AccessibilityMatrices<S> m) {
  S quarter = S(1) / S(4);
  m.p3 = quarter * (m.p1 + m.p2 + m.p1.transposed() + m.p2.transposed());
  return m;
}

}  // namespace detail

template <class S>
AccessibilityMatrices<S> forest_accessibility(const WeightedDigraph& g, const S& tau) {
  if (!(tau > 0)) throw Error("tau must be positive");
  AccessibilityMatrices<S> m;
  m.kind = MeasureKind::forest;
  m.parameter = tau;
  m.p1 = q_tau(g, tau).transposed();
  // Duality: P2(G) = P1(reverse G)^T, and the transposes cancel into Q_rev(tau).
  // Entry (i, j) is then the weight of in forests where i converges to sink j.
  m.p2 = q_tau(reverse(g), tau);
  return detail::symmetrize(std::move(m));
}

template <class S>
AccessibilityMatrices<S> dense_accessibility(const WeightedDigraph& g, const S& alpha) {
  ForestSequence<S> seq = forest_sequence<S>(g);
  const int d = static_cast<int>(seq.sigma.size()) - 1;
  if (d < 1) throw Error("dense accessibility needs at least one arc (n - v >= 1)");
  S upper = seq.sigma[d] / seq.sigma[d - 1];
  if (!(alpha > 0) || !(alpha < upper))
    throw Error("alpha must lie strictly inside (0, sigma_{n-v}/sigma_{n-v-1})");

  AccessibilityMatrices<S> m;
  m.kind = MeasureKind::dense;
  m.parameter = alpha;
  m.alpha_upper = upper;
  m.p1 = dense_r_matrix(g, alpha).transposed();
  m.p2 = dense_r_matrix(reverse(g), alpha);  // dual: P1(reverse G)^T, transposes cancelled
  if constexpr (scalar_traits<S>::exact) {
    // Nonnegativity inside the admissible interval (spec invariant for R(alpha)).
    for (int i = 0; i < g.order(); ++i)
      for (int j = 0; j < g.order(); ++j)
        detail::require_consistent<S>(m.p1(i, j) >= 0, "R(alpha) went negative inside the interval");
  }
  return detail::symmetrize(std::move(m));
}

// One evaluated condition. `values` accompany `vertices` so a failure can be
// re-checked by hand against the matrices.
template <class S>
struct AxiomRecord {
  std::string condition;
  std::string matrix;  // "P1", "P2", or "P3"
  std::string item;    // condition-specific item tag, may be empty
  bool strict = true;
  bool passed = true;
  std::vector<int> witness_vertices;
  std::vector<S> witness_values;
};

template <class S>
struct AxiomReport {
  std::vector<AxiomRecord<S>> records;
  bool all_passed() const {
    for (const auto& r : records)
      if (!r.passed) return false;
    return true;
  }
};

namespace detail {

template <class S>
bool cmp_greater(const S& a, const S& b, bool strict) {
  return strict ? a > b : a >= b;
}

// Eligibility of (i, k, t) for the transit property: paths i -> k and i -> t
// exist and every path i -> t passes through k (checked as: t unreachable from
// i once k is deleted). Vertices pairwise distinct. Requiring an actual i -> t
// path keeps the hypothesis non-vacuous; with no such path at all, p_kt and
// p_it can tie at zero and the condition would fail for trivial reasons.
inline bool transit_eligible(const WeightedDigraph& g, int i, int k, int t,
                             const std::vector<std::vector<char>>& reach) {
  if (i == k || k == t || i == t) return false;
  if (!reach[i][k] || !reach[i][t]) return false;
  // BFS from i avoiding k.
  std::vector<char> seen(g.order(), 0);
  std::vector<int> stack{i};
  seen[i] = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w : g.out_neighbors(v)) {
      if (w == k || seen[w]) continue;
      seen[w] = 1;
      stack.push_back(w);
    }
  }
  return !seen[t];
}

}  // namespace detail

// Static conditions of the axiom battery for one measure. `strict` evaluates
// the conditions as stated (strict inequalities); otherwise their nonstrict
// forms. Triangle inequality applies to P3 only and requires symmetry.
template <class S>
AxiomReport<S> axiom_check(const AccessibilityMatrices<S>& m, const WeightedDigraph& g,
                           bool strict = true) {
  const int n = g.order();
  if (m.p1.order() != n) throw Error("measure and digraph orders disagree");
  AxiomReport<S> report;

  std::vector<std::vector<char>> reach;
  reach.reserve(n);
  for (int v = 0; v < n; ++v) reach.push_back(g.reachable_set(v));

  auto add = [&report](AxiomRecord<S> r) { report.records.push_back(std::move(r)); };

  for (const auto& [name, mat] : {std::pair<std::string, const Matrix<S>*>{"P1", &m.p1},
                                  std::pair<std::string, const Matrix<S>*>{"P2", &m.p2}}) {
    const Matrix<S>& p = *mat;

    AxiomRecord<S> nonneg{"nonnegativity", name, "", strict, true, {}, {}};
    for (int i = 0; i < n && nonneg.passed; ++i)
      for (int j = 0; j < n; ++j)
        if (p(i, j) < 0) {
          nonneg.passed = false;
          nonneg.witness_vertices = {i, j};
          nonneg.witness_values = {p(i, j)};
          break;
        }
    add(std::move(nonneg));

    for (int item = 1; item <= 2; ++item) {
      AxiomRecord<S> diag{"diagonal_maximality", name, std::to_string(item), strict, true, {}, {}};
      for (int i = 0; i < n && diag.passed; ++i)
        for (int j = 0; j < n; ++j) {
          if (i == j) continue;
          const S& other = item == 1 ? p(i, j) : p(j, i);
          if (!detail::cmp_greater(p(i, i), other, strict)) {
            diag.passed = false;
            diag.witness_vertices = {i, j};
            diag.witness_values = {p(i, i), other};
            break;
          }
        }
      add(std::move(diag));
    }

    AxiomRecord<S> disc{"disconnection", name, "", strict, true, {}, {}};
    for (int i = 0; i < n && disc.passed; ++i)
      for (int j = 0; j < n; ++j) {
        bool zero = scalar_traits<S>::is_zero(p(i, j));
        bool unreachable = !reach[i][j];
        if (zero != unreachable) {
          disc.passed = false;
          disc.witness_vertices = {i, j};
          disc.witness_values = {p(i, j)};
          break;
        }
      }
    add(std::move(disc));

    for (int item = 1; item <= 2; ++item) {
      AxiomRecord<S> transit{"transit", name, std::to_string(item), strict, true, {}, {}};
      for (int i = 0; i < n && transit.passed; ++i)
        for (int k = 0; k < n && transit.passed; ++k)
          for (int t = 0; t < n; ++t) {
            if (!detail::transit_eligible(g, i, k, t, reach)) continue;
            const S& lhs = item == 1 ? p(i, k) : p(k, t);
            const S& rhs = p(i, t);
            if (!detail::cmp_greater(lhs, rhs, strict)) {
              transit.passed = false;
              transit.witness_vertices = {i, k, t};
              transit.witness_values = {lhs, rhs};
              break;
            }
          }
      add(std::move(transit));
    }
  }

  if (!m.p3.is_symmetric()) throw Error("triangle inequality needs a symmetric matrix");
  const Matrix<S>& p3 = m.p3;
  AxiomRecord<S> tri{"triangle", "P3", "all-triples", strict, true, {}, {}};
  for (int i = 0; i < n && tri.passed; ++i)
    for (int j = 0; j < n && tri.passed; ++j)
      for (int k = 0; k < n; ++k) {
        if (p3(i, j) + p3(i, k) - p3(j, k) > p3(i, i)) {
          tri.passed = false;
          tri.witness_vertices = {i, j, k};
          tri.witness_values = {p3(i, j), p3(i, k), p3(j, k), p3(i, i)};
          break;
        }
      }
  add(std::move(tri));

  AxiomRecord<S> trid{"triangle", "P3", "strict-at-j-equals-k", strict, true, {}, {}};
  for (int i = 0; i < n && trid.passed; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      // p_ij + p_ij - p_jj < p_ii, strictly when requested
      S lhs = p3(i, j) + p3(i, j) - p3(j, j);
      if (!detail::cmp_greater(p3(i, i), lhs, strict)) {
        trid.passed = false;
        trid.witness_vertices = {i, j};
        trid.witness_values = {lhs, p3(i, i)};
        break;
      }
    }
  add(std::move(trid));

  return report;
}

// Closed-form increments of P1(tau) and P2(tau) when arc (k, t) gains weight
// delta_eps, against an independent perturb-and-recompute evaluation. The two
// must agree (exactly in rational mode).
template <class S>
struct DeltaMatrices {
  Matrix<S> p1_closed, p1_recomputed;
  Matrix<S> p2_closed, p2_recomputed;
};

template <class S>
DeltaMatrices<S> monotonicity_delta(const WeightedDigraph& g, const S& tau, int k, int t,
                                    const Rational& delta_eps) {
  if (!(delta_eps > 0)) throw Error("delta eps must be positive");
  if (k == t) throw Error("loop arcs are not allowed");
  const int n = g.order();
  if (k < 0 || k >= n || t < 0 || t >= n) throw Error("arc endpoint out of range");

  AccessibilityMatrices<S> base = forest_accessibility(g, tau);
  S de = scalar_traits<S>::from_rational(delta_eps);

  DeltaMatrices<S> out;
  out.p1_closed = Matrix<S>(n);
  out.p2_closed = Matrix<S>(n);
  const Matrix<S>& p1 = base.p1;
  const Matrix<S>& p2 = base.p2;
  S denom1 = S(1) / (de * tau) + p1(t, t) - p1(t, k);
  S denom2 = S(1) / (de * tau) + p2(k, k) - p2(t, k);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      out.p1_closed(i, j) = p1(t, j) * (p1(i, k) - p1(i, t)) / denom1;
      out.p2_closed(i, j) = p2(i, k) * (p2(t, j) - p2(k, j)) / denom2;
    }

  WeightedDigraph bumped = with_arc_weight(g, k, t, g.weight(k, t) + delta_eps);
  AccessibilityMatrices<S> after = forest_accessibility(bumped, tau);
  out.p1_recomputed = after.p1 - base.p1;
  out.p2_recomputed = after.p2 - base.p2;

  detail::require_consistent<S>(near(out.p1_closed, out.p1_recomputed),
                                "Delta P1 closed form disagrees with recomputation");
  detail::require_consistent<S>(near(out.p2_closed, out.p2_recomputed),
                                "Delta P2 closed form disagrees with recomputation");
  return out;
}

// Monotonicity sweep for the forest measures: every existing arc is bumped by
// delta in {1, 1/2} and the six items are judged from the Delta matrices.
template <class S>
AxiomReport<S> monotonicity_check(const WeightedDigraph& g, const S& tau, bool strict = true) {
  const int n = g.order();
  AxiomReport<S> report;
  std::vector<std::vector<char>> reach;
  reach.reserve(n);
  for (int v = 0; v < n; ++v) reach.push_back(g.reachable_set(v));

  const char* items[] = {"1-first", "1-second", "2a", "2b", "3a", "3b"};
  for (const char* matrix_name : {"P1", "P2"})
    for (const char* item : items)
      report.records.push_back(
          AxiomRecord<S>{"monotonicity", matrix_name, item, strict, true, {}, {}});

  auto record = [&report](const std::string& matrix_name, const std::string& item) -> AxiomRecord<S>& {
    for (auto& r : report.records)
      if (r.matrix == matrix_name && r.item == item) return r;
    throw ConsistencyError("unknown monotonicity record");
  };

  auto fail = [](AxiomRecord<S>& r, std::vector<int> vertices, std::vector<S> values) {
    if (!r.passed) return;  // keep the first witness
    r.passed = false;
    r.witness_vertices = std::move(vertices);
    r.witness_values = std::move(values);
  };

  for (const Arc& arc : g.arcs()) {
    const int k = arc.tail, t = arc.head;
    for (const Rational& de : {Rational(1), Rational(1, 2)}) {
      DeltaMatrices<S> deltas = monotonicity_delta(g, tau, k, t, de);
      for (const auto& [matrix_name, dp] :
           {std::pair<const char*, const Matrix<S>*>{"P1", &deltas.p1_closed},
            std::pair<const char*, const Matrix<S>*>{"P2", &deltas.p2_closed}}) {
        const Matrix<S>& d = *dp;
        auto& first = record(matrix_name, "1-first");
        if (!detail::cmp_greater(d(k, t), S(0), strict)) fail(first, {k, t}, {d(k, t)});
        auto& second = record(matrix_name, "1-second");
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) {
            if (i == k && j == t) continue;
            if (!detail::cmp_greater(d(k, t), d(i, j), strict))
              fail(second, {k, t, i, j}, {d(k, t), d(i, j)});
          }
        for (int i = 0; i < n; ++i) {
          if (i == k || i == t) continue;
          // Item 2: a path k -> i exists and every one runs through t.
          if (detail::transit_eligible(g, k, t, i, reach)) {
            if (!detail::cmp_greater(d(k, t), d(k, i), strict))
              fail(record(matrix_name, "2a"), {k, t, i}, {d(k, t), d(k, i)});
            if (!detail::cmp_greater(d(k, i), d(t, i), strict))
              fail(record(matrix_name, "2b"), {k, t, i}, {d(k, i), d(t, i)});
          }
          // Item 3: a path i -> k exists and every path i -> t runs through k.
          if (detail::transit_eligible(g, i, k, t, reach)) {
            if (!detail::cmp_greater(d(k, t), d(i, t), strict))
              fail(record(matrix_name, "3a"), {k, t, i}, {d(k, t), d(i, t)});
            if (!detail::cmp_greater(d(i, t), d(i, k), strict))
              fail(record(matrix_name, "3b"), {k, t, i}, {d(i, t), d(i, k)});
          }
        }
      }
    }
  }
  return report;
}

}  // namespace forestcalc
