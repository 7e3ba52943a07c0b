#pragma once

#include "forestcalc/forest_calculus.hpp"

#include <cstdint>
#include <future>
#include <random>
#include <vector>

namespace forestcalc {

// A Markov chain related to g: P = I - alpha L. The chain is a genuine
// stochastic matrix only when 0 < alpha <= 1/max_i l_ii; the flag records that.
template <class S>
struct RelatedChain {
  WeightedDigraph g;
  Matrix<S> P;
  S alpha = S(0);
  bool stochastic = false;
};

template <class S>
RelatedChain<S> related_chain(const WeightedDigraph& g, const S& alpha) {
  if (scalar_traits<S>::is_zero(alpha)) throw Error("alpha must be nonzero");
  Matrix<S> l = kirchhoff<S>(g);
  Matrix<S> p = Matrix<S>::identity(g.order()) - alpha * l;
  bool stochastic = true;
  for (int i = 0; i < g.order(); ++i)
    for (int j = 0; j < g.order(); ++j)
      if (p(i, j) < 0 || p(i, j) > 1) stochastic = false;
  return RelatedChain<S>{g, std::move(p), alpha, stochastic};
}

template <class S>
struct ObservationResult {
  S q = S(0);
  S tau = S(0);        // (1/q - 1) alpha
  Matrix<S> matrix;    // q (I - (1-q) P)^{-1}
};

// Unconditional transition matrix of the geometric observation model, with the
// multistep epoch drawn as geometric(q) on {0, 1, 2, ...}. Must coincide with
// Q(tau) at tau = (1/q - 1) alpha, which needs alpha > 0.
template <class S>
ObservationResult<S> observation_matrix(const RelatedChain<S>& chain, const S& q) {
  if (!(q > 0) || !(q < 1)) throw Error("q must lie strictly between 0 and 1");
  if (!(chain.alpha > 0)) throw Error("observation model needs a positive alpha");
  const int n = chain.P.order();
  S one_minus_q = S(1) - q;
  Matrix<S> ptilde =
      q * inverse(Matrix<S>::identity(n) - one_minus_q * chain.P);
  S tau = (S(1) / q - S(1)) * chain.alpha;
  detail::require_consistent<S>(near(ptilde, q_tau(chain.g, tau)),
                                "observation matrix disagrees with Q(tau)");
  return ObservationResult<S>{q, tau, std::move(ptilde)};
}

struct EmpiricalRow {
  int start = 0;
  double q = 0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  int partitions = 1;
  std::vector<std::uint64_t> counts;
  std::vector<double> probabilities;
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline double uniform01(std::mt19937_64& eng) {
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

}  // namespace detail

// Monte-Carlo version of the observation model: draw the epoch k ~ geom(q),
// walk the chain k steps from `start`, tally the final state. Partition p of
// the trial budget runs on an engine seeded with splitmix64(seed ^ p), so the
// result depends only on (seed, partitions), not on scheduling.
template <class S>
EmpiricalRow simulate_observation(const RelatedChain<S>& chain, double q, int start,
                                  std::uint64_t trials, std::uint64_t seed, int partitions = 1) {
  if (!chain.stochastic) throw Error("simulation needs a stochastic chain");
  if (!(q > 0.0 && q < 1.0)) throw Error("q must lie strictly between 0 and 1");
  if (trials < 1) throw Error("at least one trial required");
  if (partitions < 1) throw Error("at least one partition required");
  const int n = chain.P.order();
  if (start < 0 || start >= n) throw Error("start vertex out of range");

  // Cumulative transition rows in double precision.
  std::vector<std::vector<double>> cum(n, std::vector<double>(n));
  for (int i = 0; i < n; ++i) {
    double acc = 0;
    for (int j = 0; j < n; ++j) {
      acc += scalar_traits<S>::to_double(chain.P(i, j));
      cum[i][j] = acc;
    }
    cum[i][n - 1] = 1.0;  // guard against rounding at the top
  }

  const double log_one_minus_q = std::log1p(-q);
  auto run_partition = [&](std::uint64_t count, std::uint64_t engine_seed) {
    std::mt19937_64 eng(engine_seed);
    std::vector<std::uint64_t> tally(n, 0);
    for (std::uint64_t t = 0; t < count; ++t) {
      double w = 1.0 - detail::uniform01(eng);  // in (0, 1]
      auto steps = static_cast<std::uint64_t>(std::log(w) / log_one_minus_q);
      int state = start;
      for (std::uint64_t s = 0; s < steps; ++s) {
        double u = detail::uniform01(eng);
        const auto& row = cum[state];
        int next = 0;
        while (next < n - 1 && row[next] <= u) ++next;
        state = next;
      }
      ++tally[state];
    }
    return tally;
  };

  std::vector<std::future<std::vector<std::uint64_t>>> parts;
  std::uint64_t base = trials / partitions, extra = trials % partitions;
  for (int p = 0; p < partitions; ++p) {
    std::uint64_t count = base + (static_cast<std::uint64_t>(p) < extra ? 1 : 0);
    std::uint64_t engine_seed = detail::splitmix64(seed ^ static_cast<std::uint64_t>(p));
    parts.push_back(std::async(partitions > 1 ? std::launch::async : std::launch::deferred,
                               run_partition, count, engine_seed));
  }

  EmpiricalRow row;
  row.start = start;
  row.q = q;
  row.trials = trials;
  row.seed = seed;
  row.partitions = partitions;
  row.counts.assign(n, 0);
  for (auto& part : parts) {
    auto tally = part.get();
    for (int j = 0; j < n; ++j) row.counts[j] += tally[j];
  }
  row.probabilities.resize(n);
  for (int j = 0; j < n; ++j)
    row.probabilities[j] = static_cast<double>(row.counts[j]) / static_cast<double>(trials);
  return row;
}

namespace detail {

// (P^m, I + P + ... + P^{m-1}) by pair doubling; log m matrix products.
template <class S>
std::pair<Matrix<S>, Matrix<S>> power_and_sum(const Matrix<S>& p, long long m) {
  const int n = p.order();
  if (m == 0) return {Matrix<S>::identity(n), Matrix<S>(n)};
  if (m % 2 == 1) {
    auto [h, t] = power_and_sum(p, m - 1);
    return {h * p, t + h};
  }
  auto [h, t] = power_and_sum(p, m / 2);
  return {h * h, t + h * t};
}

}  // namespace detail

// Cesaro average (1/k) sum_{p<k} P^p, exact in rational mode.
template <class S>
Matrix<S> cesaro_limit(const RelatedChain<S>& chain, long long k) {
  if (!chain.stochastic) throw Error("Cesaro limit needs a stochastic chain");
  if (k < 1) throw Error("k must be at least 1");
  auto [power, sum] = detail::power_and_sum(chain.P, k);
  (void)power;
  return (S(1) / S(k)) * sum;
}

}  // namespace forestcalc
