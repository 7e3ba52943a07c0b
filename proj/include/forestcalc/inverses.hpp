#pragma once

#include "forestcalc/forest_calculus.hpp"

#include <vector>

namespace forestcalc {

struct PenroseFlags {
  bool c1 = false;  // A X A = A
  bool c2 = false;  // X A X = X
  bool c3 = false;  // A X symmetric
  bool c4 = false;  // X A symmetric
  bool c5 = false;  // A X = X A
};

template <class S>
PenroseFlags penrose_report(const Matrix<S>& a, const Matrix<S>& x) {
  detail::require_same_order(a, x);
  PenroseFlags f;
  Matrix<S> ax = a * x;
  Matrix<S> xa = x * a;
  f.c1 = near(ax * a, a);
  f.c2 = near(xa * x, x);
  f.c3 = ax.is_symmetric();
  f.c4 = xa.is_symmetric();
  f.c5 = near(ax, xa);
  return f;
}

namespace detail {

// (L + alpha Jbar)^{-1} - alpha^{-1} Jbar, the inversion route to the group inverse.
template <class S>
Matrix<S> group_inverse_at(const Matrix<S>& l, const Matrix<S>& jbar, const S& alpha) {
  Matrix<S> shifted = l + alpha * jbar;
  return inverse(shifted) - (S(1) / alpha) * jbar;
}

}  // namespace detail

// Group inverse of the Kirchhoff matrix. Evaluates the inversion formula and
// the dense-forest form, checks they agree and that the result does not depend
// on alpha, and that L L# = L# L = I - Jbar.
template <class S>
Matrix<S> group_inverse(const WeightedDigraph& g, const S& alpha = S(1)) {
  if (scalar_traits<S>::is_zero(alpha)) throw Error("alpha must be nonzero");
  ForestSequence<S> seq = forest_sequence<S>(g);
  NormalizedForests<S> nf = max_forest_matrix(seq);
  const int n = g.order();
  const int d = static_cast<int>(seq.sigma.size()) - 1;  // n - v

  Matrix<S> by_inversion = detail::group_inverse_at(seq.L, nf.Jbar, alpha);

  // Dense-forest form; for the arcless digraph (d = 0) the quotient sequence is
  // empty and the group inverse is the zero matrix.
  Matrix<S> by_forests(n);
  if (d >= 1) {
    S ratio = seq.sigma[d - 1] / seq.sigma[d];
    by_forests = ratio * (nf.J[d - 1] - nf.Jbar);
  }
  detail::require_consistent<S>(near(by_inversion, by_forests),
                                "group inverse: inversion and dense-forest routes disagree");

  S alpha2 = scalar_traits<S>::near(alpha, S(1)) ? S(2) : S(1);
  detail::require_consistent<S>(near(detail::group_inverse_at(seq.L, nf.Jbar, alpha2), by_forests),
                                "group inverse depends on alpha");

  Matrix<S> complement = Matrix<S>::identity(n) - nf.Jbar;
  detail::require_consistent<S>(near(seq.L * by_forests, complement), "L L# != I - Jbar");
  detail::require_consistent<S>(near(by_forests * seq.L, complement), "L# L != I - Jbar");
  return by_forests;
}

template <class S>
struct LimitReport {
  std::vector<S> taus;
  std::vector<S> distances;      // max-entry |tau (Q(tau) - Jbar) - L#|
  bool monotone = true;          // distances never increase along the schedule
  bool final_below_tol = false;  // last distance < 1e-6
};

// L# = lim_{tau->inf} tau (Q(tau) - Jbar), evaluated along a tau schedule.
template <class S>
LimitReport<S> group_inverse_limit(const WeightedDigraph& g, const std::vector<S>& schedule) {
  if (schedule.empty()) throw Error("empty tau schedule");
  for (std::size_t i = 0; i < schedule.size(); ++i) {
    if (!(schedule[i] > 0)) throw Error("tau schedule must be positive");
    if (i > 0 && !(schedule[i - 1] < schedule[i])) throw Error("tau schedule must increase");
  }
  ForestSequence<S> seq = forest_sequence<S>(g);
  NormalizedForests<S> nf = max_forest_matrix(seq);
  Matrix<S> lsharp = group_inverse<S>(g);

  LimitReport<S> rep;
  const S tol = S(1) / S(1000000);
  for (const S& tau : schedule) {
    Matrix<S> approx = tau * (q_tau_series(seq, tau) - nf.Jbar);
    S dist = max_abs_diff(approx, lsharp);
    if (!rep.distances.empty() && dist > rep.distances.back()) rep.monotone = false;
    rep.taus.push_back(tau);
    rep.distances.push_back(dist);
  }
  rep.final_below_tol = rep.distances.back() < tol;
  return rep;
}

inline std::vector<Rational> default_tau_schedule() {
  std::vector<Rational> taus;
  Rational t(1);
  for (int i = 0; i <= 8; ++i) {
    taus.push_back(t);
    t *= 10;
  }
  return taus;
}

// L+ = L^T (Jbar^T Jbar + L L^T)^{-1}. Verifies the Penrose conditions and the
// commutation facts behind the formula.
template <class S>
Matrix<S> moore_penrose(const WeightedDigraph& g) {
  ForestSequence<S> seq = forest_sequence<S>(g);
  NormalizedForests<S> nf = max_forest_matrix(seq);

  Matrix<S> z = seq.L + nf.Jbar.transposed();
  Matrix<S> zzt = z * z.transposed();
  Matrix<S> llt = seq.L * seq.L.transposed();
  Matrix<S> jtj = nf.Jbar.transposed() * nf.Jbar;
  detail::require_consistent<S>(near(zzt, jtj + llt), "Z Z^T != Jbar^T Jbar + L L^T");

  Matrix<S> zzt_inv;
  try {
    zzt_inv = inverse(zzt);
  } catch (const SingularMatrixError&) {
    throw ConsistencyError("Z Z^T singular, contradicting the nonsingularity of Z");
  }
  Matrix<S> lplus = seq.L.transposed() * zzt_inv;

  detail::require_consistent<S>(near(zzt_inv * llt, llt * zzt_inv),
                                "(Z Z^T)^{-1} must commute with L L^T");
  detail::require_consistent<S>(near(zzt_inv * jtj, jtj * zzt_inv),
                                "(Z Z^T)^{-1} must commute with Jbar^T Jbar");
  detail::require_consistent<S>((llt * zzt_inv).is_symmetric(),
                                "L L^T (Z Z^T)^{-1} must be symmetric");

  PenroseFlags f = penrose_report(seq.L, lplus);
  detail::require_consistent<S>(f.c1 && f.c2 && f.c3 && f.c4,
                                "Moore-Penrose conditions (1)-(4) failed");
  return lplus;
}

template <class S>
struct InverseBundle {
  Matrix<S> group_inverse;
  Matrix<S> moore_penrose;
  Matrix<S> z_matrix;         // Z = L + Jbar^T
  S alpha_used = S(1);
  PenroseFlags group_flags;   // expected pattern: 1, 2, 5
  PenroseFlags mp_flags;      // expected pattern: 1, 2, 3, 4
};

template <class S>
InverseBundle<S> inverse_bundle(const WeightedDigraph& g, const S& alpha = S(1)) {
  ForestSequence<S> seq = forest_sequence<S>(g);
  NormalizedForests<S> nf = max_forest_matrix(seq);
  InverseBundle<S> b;
  b.alpha_used = alpha;
  b.group_inverse = group_inverse(g, alpha);
  b.moore_penrose = moore_penrose<S>(g);
  b.z_matrix = seq.L + nf.Jbar.transposed();
  b.group_flags = penrose_report(seq.L, b.group_inverse);
  b.mp_flags = penrose_report(seq.L, b.moore_penrose);
  return b;
}

}  // namespace forestcalc
