#pragma once

#include "forestcalc/digraph.hpp"
#include "forestcalc/matrix.hpp"

#include <vector>

namespace forestcalc {

// sigma_k and Q_k for k = 0..n-v, built by the Faddeev-style recurrence
//   Q_0 = I,  sigma_{k+1} = tr(L Q_k)/(k+1),  Q_{k+1} = sigma_{k+1} I - L Q_k.
template <class S>
struct ForestSequence {
  int v = 0;                  // out forest dimension
  Matrix<S> L;                // Kirchhoff matrix the sequence was built from
  std::vector<S> sigma;       // sigma_0..sigma_{n-v}, sigma_0 = 1
  std::vector<Matrix<S>> Q;   // Q_0..Q_{n-v}
  S s = S(0);                 // total forest weight, sum of sigmas
  std::vector<S> s_partial;   // s_k = sigma_0 + ... + sigma_k
};

template <class S>
struct NormalizedForests {
  std::vector<Matrix<S>> J;   // J_k = Q_k / sigma_k
  Matrix<S> Jbar;             // J_{n-v}, the matrix of maximum out forests
};

struct GershgorinDisc {
  Rational center;   // l_ii
  Rational radius;   // equals the center: every disc passes through 0
};

struct GershgorinReport {
  std::vector<GershgorinDisc> discs;
  bool all_in_right_half_plane = true;
  bool every_disc_touches_zero = true;
  bool intersection_is_zero = false;    // via real-axis interval geometry
  bool has_undominated_vertex = false;  // structural route to the same fact
};

namespace detail {

template <class S>
void require_consistent(bool ok, const char* what) {
  if (!ok) throw ConsistencyError(what);
}

// near-zero test scaled to the magnitudes that produced the matrix.
template <class S>
bool approx_zero(const Matrix<S>& m, const S& scale) {
  if constexpr (scalar_traits<S>::exact) {
    (void)scale;
    return m.is_zero();
  } else {
    S bound = scalar_traits<S>::near_tol * std::max(S(1), scale);
    return max_abs_entry(m) <= bound;
  }
}

}  // namespace detail

template <class S>
ForestSequence<S> forest_sequence(const WeightedDigraph& g) {
  const int n = g.order();
  ForestSequence<S> seq;
  seq.v = analyze_structure(g).out_dim;
  seq.L = kirchhoff<S>(g);
  seq.sigma.push_back(S(1));
  seq.Q.push_back(Matrix<S>::identity(n));

  for (int k = 0; k < n - seq.v; ++k) {
    Matrix<S> lq = seq.L * seq.Q.back();
    S sigma_next = lq.trace() / S(k + 1);
    Matrix<S> q_next = sigma_next * Matrix<S>::identity(n) - lq;
    detail::require_consistent<S>(
        scalar_traits<S>::near(q_next.trace(), S(n - k - 1) * sigma_next),
        "trace(Q_k) != (n-k) sigma_k");
    if constexpr (scalar_traits<S>::exact) {
      detail::require_consistent<S>(sigma_next > 0, "sigma_k must be positive for k <= n-v");
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          detail::require_consistent<S>(q_next(i, j) >= 0, "Q_k entries must be nonnegative");
    }
    seq.sigma.push_back(sigma_next);
    seq.Q.push_back(std::move(q_next));
  }

  // With the structural v, the next step must vanish: L Q_{n-v} = 0.
  S scale = max_abs_entry(seq.L) * max_abs_entry(seq.Q.back());
  detail::require_consistent<S>(detail::approx_zero(seq.L * seq.Q.back(), scale),
                                "L Q_{n-v} != 0: out dimension disagrees with the recurrence");

  for (const S& s_k : seq.sigma) {
    seq.s += s_k;
    seq.s_partial.push_back(seq.s);
  }
  return seq;
}

// Eq. form Q_k = sum_{i<=k} sigma_{k-i} (-L)^i, evaluated by Horner; must match
// the recurrence output.
template <class S>
Matrix<S> forest_matrix_polynomial(const ForestSequence<S>& seq, int k) {
  if (k < 0 || k >= static_cast<int>(seq.Q.size())) throw Error("forest matrix index out of range");
  const int n = seq.L.order();
  Matrix<S> minus_l = S(-1) * seq.L;
  Matrix<S> acc = seq.sigma[0] * Matrix<S>::identity(n);
  for (int i = 1; i <= k; ++i) acc = acc * minus_l + seq.sigma[i] * Matrix<S>::identity(n);
  detail::require_consistent<S>(near(acc, seq.Q[k]),
                                "polynomial form of Q_k disagrees with the recurrence");
  return acc;
}

template <class S>
Matrix<S> q_tau_inverse(const WeightedDigraph& g, const S& tau) {
  Matrix<S> l = kirchhoff<S>(g);
  return inverse(Matrix<S>::identity(g.order()) + tau * l);
}

template <class S>
S s_of_tau(const ForestSequence<S>& seq, const S& tau) {
  S acc(0), power(1);
  for (const S& sig : seq.sigma) {
    acc += power * sig;
    power *= tau;
  }
  return acc;
}

template <class S>
Matrix<S> q_tau_series(const ForestSequence<S>& seq, const S& tau) {
  const int n = seq.L.order();
  Matrix<S> acc(n);
  S power(1);
  for (const Matrix<S>& qk : seq.Q) {
    acc = acc + power * qk;
    power *= tau;
  }
  return (S(1) / s_of_tau(seq, tau)) * acc;
}

template <class S>
Matrix<S> q_tau_polynomial(const ForestSequence<S>& seq, const S& tau) {
  const int n = seq.L.order();
  const int d = static_cast<int>(seq.sigma.size()) - 1;  // n - v
  // s_k(tau) = sum_{j<=k} tau^j sigma_j
  std::vector<S> s_tau;
  S acc(0), power(1);
  for (const S& sig : seq.sigma) {
    acc += power * sig;
    s_tau.push_back(acc);
    power *= tau;
  }
  Matrix<S> x = (S(-1) * tau) * seq.L;
  Matrix<S> poly = s_tau[0] * Matrix<S>::identity(n);  // coefficient of x^d is s_0
  for (int i = d - 1; i >= 0; --i) poly = poly * x + s_tau[d - i] * Matrix<S>::identity(n);
  return (S(1) / s_tau[d]) * poly;
}

// Q(tau) = (I + tau L)^{-1}, computed by all three routes, which must agree
// (exactly so in rational mode). Row-stochastic.
template <class S>
Matrix<S> q_tau(const WeightedDigraph& g, const S& tau) {
  if (!(tau > 0)) throw Error("tau must be positive");
  ForestSequence<S> seq = forest_sequence<S>(g);
  Matrix<S> by_series = q_tau_series(seq, tau);
  Matrix<S> by_inverse = q_tau_inverse(g, tau);
  Matrix<S> by_polynomial = q_tau_polynomial(seq, tau);
  detail::require_consistent<S>(near(by_series, by_inverse),
                                "Q(tau): series and inverse routes disagree");
  detail::require_consistent<S>(near(by_series, by_polynomial),
                                "Q(tau): series and polynomial routes disagree");
  for (const S& rs : by_series.row_sums())
    detail::require_consistent<S>(scalar_traits<S>::near(rs, S(1)), "Q(tau) must be row-stochastic");
  if constexpr (scalar_traits<S>::exact) {
    for (int i = 0; i < g.order(); ++i)
      for (int j = 0; j < g.order(); ++j)
        detail::require_consistent<S>(by_series(i, j) >= 0, "Q(tau) entries must be nonnegative");
  }
  return by_series;
}

template <class S>
NormalizedForests<S> max_forest_matrix(const ForestSequence<S>& seq) {
  NormalizedForests<S> nf;
  for (std::size_t k = 0; k < seq.Q.size(); ++k)
    nf.J.push_back((S(1) / seq.sigma[k]) * seq.Q[k]);
  nf.Jbar = nf.J.back();

  for (const Matrix<S>& jk : nf.J)
    for (const S& rs : jk.row_sums())
      detail::require_consistent<S>(scalar_traits<S>::near(rs, S(1)), "J_k must be row-stochastic");
  detail::require_consistent<S>(near(nf.Jbar * nf.Jbar, nf.Jbar), "Jbar must be idempotent");
  S scale = max_abs_entry(seq.L);
  detail::require_consistent<S>(detail::approx_zero(seq.L * nf.Jbar, scale), "L Jbar != 0");
  detail::require_consistent<S>(detail::approx_zero(nf.Jbar * seq.L, scale), "Jbar L != 0");
  return nf;
}

// Coefficients of the characteristic polynomial p_L(lambda): entry i is the
// coefficient of lambda^{n-i}, i.e. (-1)^i sigma_i while i <= n-v, then zeros.
// Cross-checked against principal-minor sums for small orders.
template <class S>
std::vector<S> char_poly_coeffs(const ForestSequence<S>& seq) {
  const int n = seq.L.order();
  const int d = static_cast<int>(seq.sigma.size()) - 1;
  std::vector<S> coeffs(n + 1, S(0));
  for (int i = 0; i <= d; ++i) coeffs[i] = (i % 2 == 0 ? seq.sigma[i] : -seq.sigma[i]);

  for (int order = 1; order <= std::min(3, n); ++order) {
    S minor_sum(0);
    std::vector<int> pick(order);
    for (int i = 0; i < order; ++i) pick[i] = i;
    while (true) {
      Matrix<S> sub(order);
      for (int r = 0; r < order; ++r)
        for (int c = 0; c < order; ++c) sub(r, c) = seq.L(pick[r], pick[c]);
      minor_sum += det(sub);
      int i = order - 1;
      while (i >= 0 && pick[i] == n - order + i) --i;
      if (i < 0) break;
      ++pick[i];
      for (int j = i + 1; j < order; ++j) pick[j] = pick[j - 1] + 1;
    }
    S expected = order <= d ? seq.sigma[order] : S(0);
    detail::require_consistent<S>(scalar_traits<S>::near(minor_sum, expected),
                                  "principal minor sum E_i(L) != sigma_i");
  }
  return coeffs;
}

// p'_L(lambda) = lambda sum_i sigma_{n-v-i} (-lambda)^i annihilates L; returns
// the evaluated matrix, which must be zero.
template <class S>
Matrix<S> annihilating_poly_check(const ForestSequence<S>& seq) {
  const int n = seq.L.order();
  const int d = static_cast<int>(seq.sigma.size()) - 1;
  Matrix<S> minus_l = S(-1) * seq.L;
  Matrix<S> poly = seq.sigma[0] * Matrix<S>::identity(n);  // sigma_{n-v-i} at i = d
  for (int i = d - 1; i >= 0; --i) poly = poly * minus_l + seq.sigma[d - i] * Matrix<S>::identity(n);
  Matrix<S> value = seq.L * poly;
  S scale = max_abs_entry(seq.L) * max_abs_entry(poly);
  detail::require_consistent<S>(detail::approx_zero(value, scale),
                                "annihilating polynomial evaluated nonzero");
  return value;
}

GershgorinReport gershgorin(const WeightedDigraph& g);

}  // namespace forestcalc
