#pragma once

#include <cstddef>
#include <cstdint>

#include "align/graph.hpp"
#include "align/permutation.hpp"

namespace align {

/// Parameters (n, q, s) of the correlated Erdos-Renyi model: a parent graph
/// ER(n, q/s) is subsampled twice with retention probability s, so each copy
/// is marginally ER(n, q).
///
/// validate() accepts 0 <= q <= s <= 1 with s > 0 and n >= 2 so the boundary
/// cases q = 0, s = q and s = 1 can be fed to the closed-form evaluators.
/// Sampling additionally needs q > 0; see generate().
struct ModelParams {
  std::size_t n = 0;
  double q = 0.0;
  double s = 1.0;

  void validate() const;
  /// True when s > q, i.e. matched edges are positively correlated.
  bool correlated() const { return s > q; }

  double nqs() const { return static_cast<double>(n) * q * s; }
  /// Parent edge probability q / s.
  double parent_density() const { return q / s; }
  /// Cov(A_ij, B'_ij) = q (s - q).
  double covariance() const { return q * (s - q); }
  /// Corr(A_ij, B'_ij) = (s - q) / (1 - q).
  double correlation() const;

  friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

/// Joint law of a pair of edge indicators (x, y) in {0,1}^2.
struct PairDistribution {
  double p00 = 0.0;
  double p01 = 0.0;
  double p10 = 0.0;
  double p11 = 0.0;

  double sum() const { return p00 + p01 + p10 + p11; }
  /// p00 p11 - p01 p10, which for binary variables equals the covariance.
  double covariance() const { return p00 * p11 - p01 * p10; }
};

/// Law of a matched pair (A_ij, B'_ij).
PairDistribution dist_p(const ModelParams& params);
/// Law of an unmatched pair (A_ij, B'_kl), {i,j} != {k,l}.
PairDistribution dist_q(const ModelParams& params);

/// D(p || q) in nats, with 0 log(0 / x) = 0. Throws DomainError if some
/// outcome has positive mass under p and zero mass under q.
double kl_divergence(const PairDistribution& p, const PairDistribution& q);

/// One draw of the model. g_b is g_b_prime relabeled by pi_star, so
/// B[pi*(i)][pi*(j)] = B'[i][j].
struct CorrelatedInstance {
  Graph g_a;
  Graph g_b;
  Graph g_b_prime;
  Permutation pi_star;
  ModelParams params;
  std::uint64_t seed = 0;
};

/// Deterministic in (params, seed). The random stream is consumed in a fixed
/// order: parent slots are visited in row order (v = 1..n-1, u = 0..v-1) by
/// geometric skipping; each parent edge takes one Bernoulli(s) draw for G_A
/// then one for G_B'; finally pi* is drawn by Fisher-Yates.
///
/// Throws ParameterError for invalid params or q = 0, CapacityError when the
/// expected edge count is beyond what the adjacency storage can address.
CorrelatedInstance generate(const ModelParams& params, std::uint64_t seed);

}  // namespace align
