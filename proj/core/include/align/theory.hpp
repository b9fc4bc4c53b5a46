#pragma once

#include <cstddef>
#include <optional>

#include "align/model.hpp"

namespace align {

// ---------------------------------------------------------------------------
// Poisson tails and k-core thresholds
// ---------------------------------------------------------------------------

/// Evaluates psi_x(mu) = P(Po(mu) >= ceil(x)) for real x >= 0. Non-integer
/// indices are rounded up, which leaves the probability unchanged for an
/// integer-valued variable.
///
/// The pmf is generated in log space at the starting index and then stepped
/// by the ratio recursion away from the mode, so only the smaller tail is
/// ever summed; the larger one is obtained by complement.
class PoissonSolver {
 public:
  explicit PoissonSolver(double tolerance = 1e-12, std::size_t max_terms = 100000)
      : tolerance_(tolerance), max_terms_(max_terms) {}

  double tolerance() const { return tolerance_; }
  std::size_t max_terms() const { return max_terms_; }

  /// Throws DomainError for mu <= 0 or x < 0.
  double psi(double x, double mu) const;

 private:
  double tolerance_;
  std::size_t max_terms_;
};

double psi(double x, double mu);

struct CkResult {
  double value = 0.0;   // inf_mu mu / psi_{k-1}(mu)
  double argmin = 0.0;
};

/// c_k for k >= 3 (real k allowed; the index is k - 1 rounded up). Coarse
/// grid over (0, 10k] followed by golden-section refinement.
CkResult c_k(double k);

/// Largest root of mu - lambda psi_{k-1}(mu). Scans down from mu = lambda in
/// steps of lambda / 1000 to find the topmost sign change, then bisects.
/// Throws DomainError when lambda <= c_k.
double mu_k(double k, double lambda);

/// 1 - Phi((j - mu)/sqrt(mu)) - 0.55 / sqrt(ceil(mu)); a normal-approximation
/// lower bound on psi_j(mu). May be negative.
double berry_esseen_lower(double j, double mu);

double standard_normal_cdf(double x);

// ---------------------------------------------------------------------------
// Impossibility side
// ---------------------------------------------------------------------------

struct FanoBound {
  double raw = 0.0;        // 1 - (C(n,2) D(P||Q) + 1) / log(M / M_alpha)
  double clamped = 0.0;    // max(0, raw), capped at 1
  double kl = 0.0;
  double log_m_ratio = 0.0;
  bool exact_counting = false;
};

FanoBound fano_bound(const ModelParams& params, double alpha);

/// (n / log n) D(P||Q) / alpha. A finite-n diagnostic for an asymptotic
/// condition; it has no pass/fail verdict.
double thm1_ratio(const ModelParams& params, double alpha);

// ---------------------------------------------------------------------------
// Possibility side
// ---------------------------------------------------------------------------

struct Thm2Conditions {
  // c1: nqs >= max{20, 84 log(2/(1-alpha)), 16/(min(gamma,beta)(1-alpha))}
  bool c1 = false;
  // c2: s > 8q/(1-alpha)
  bool c2 = false;
  // c3: 2q(1-s^2)/s <= n^-beta
  bool c3 = false;
  // c4: qs <= n^-(2 gamma)
  bool c4 = false;

  double c1_threshold = 0.0;
  // Each margin is (allowed side) - (constrained side); >= 0 iff satisfied
  // (c2 needs > 0).
  double c1_margin = 0.0;
  double c2_margin = 0.0;
  double c3_margin = 0.0;
  double c4_margin = 0.0;

  bool all() const { return c1 && c2 && c3 && c4; }
};

Thm2Conditions thm2_conditions(const ModelParams& params, double alpha, double beta,
                               double gamma);

/// E[exp(t W)] for W = A_0 B_1 + A_1 B_2 + ... + A_{k-1} B_0 over k_pairs
/// independent pairs with law dist_p(params):
///   ((T + sqrt(T^2 - 4D)) / 2)^k + ((T - sqrt(T^2 - 4D)) / 2)^k,
/// with T = p11 (e^t - 1) + 1 and D = sigma^2 (e^t - 1).
double mgf_zk(std::size_t k_pairs, double t, const ModelParams& params);
/// log of mgf_zk, for large k_pairs.
double log_mgf_zk(std::size_t k_pairs, double t, const ModelParams& params);

struct ChernoffZeta {
  double zeta = 0.0;      // max{sqrt(2) e q1 / tau, 4 e sqrt(q2 / tau)}
  double z_star = 0.0;    // positive root of 2 q2 z^2 + q1 z - tau
  double residual = 0.0;  // |2 q2 z*^2 + q1 z* - tau|
  double objective = 0.0; // f(z*)
};

/// f(z) = z^-tau exp(q2 (z^2 - 1) + q1 (z - 1)).
double chernoff_objective(double z, double tau, double q1, double q2);

/// Requires tau > 0, q1 >= 0, q2 > 0 (q2 = 0 degenerates to a linear
/// equation and is rejected). Throws DomainError if the root fails its
/// residual or z*^2 <= tau / (2 q2) check.
ChernoffZeta chernoff_zeta(double tau, double q1, double q2);

/// Values with log below this are reported only as logs.
inline constexpr double kLogUnderflow = -700.0;

struct GoodProbBound {
  double tau = 0.0;
  double q1 = 0.0;
  double q2 = 0.0;
  double zeta = 0.0;
  // log of e^{n(1-alpha)/16} zeta^{n(1-alpha) n p11 / 8}
  double log_bound = 0.0;
  // min(1, exp(log_bound)); empty when log_bound < kLogUnderflow.
  std::optional<double> bound;
  // log n! + log_bound: union bound over all permutations.
  double log_union = 0.0;
  // n log n + n(1-alpha)/16 - n(1-alpha) n p11 min(gamma,beta) log n / 8,
  // the exponent obtained once log(1/zeta) is replaced by its asymptotic
  // lower bound min(gamma,beta) log n. Only set when beta and gamma are.
  std::optional<double> asymptotic_exponent;
};

/// Upper bound on P(pi good) for a fixed pi with overlap <= alpha.
/// Throws DomainError when p11 = 0.
GoodProbBound good_prob_bound(const ModelParams& params, double alpha,
                              std::optional<double> beta = std::nullopt,
                              std::optional<double> gamma = std::nullopt);

/// (a^k + b^k)^{n/k} <= (a^2 + b^2)^{n/2}, evaluated in log space with a
/// relative slack of 1e-12. Requires a, b > 0 and 2 <= k <= n.
bool power_mean_check(double a, double b, double k, double n);

// ---------------------------------------------------------------------------
// Aggregate report
// ---------------------------------------------------------------------------

/// k-core view of pi*: the intersection graph under pi* is ER(n, qs), whose
/// (nqs/2)-core holds a fraction psi_{nqs/2}(mu_{nqs/2}(nqs)) of the nodes
/// once nqs > c_{nqs/2}.
struct CoreDiagnostics {
  double k = 0.0;  // nqs / 2
  double c_k = 0.0;
  bool above_threshold = false;      // nqs > c_k
  std::optional<double> mu;          // mu_k(nqs) when above threshold
  std::optional<double> core_fraction;
  double target_fraction = 0.0;      // (1 + alpha) / 2
  double chernoff_floor = 0.0;       // 1 - e^{-nqs/84}
  double psi_at_two_thirds = 0.0;    // psi_{nqs/2 - 1}(2 nqs / 3)
};

/// Defined for nqs/2 >= 3; nullopt below that.
std::optional<CoreDiagnostics> core_diagnostics(const ModelParams& params, double alpha);

struct TheoryReport {
  ModelParams params;
  double alpha = 0.0;
  std::optional<double> beta;
  std::optional<double> gamma;
  double nqs = 0.0;
  double kl = 0.0;
  double fano_raw = 0.0;
  double fano_clamped = 0.0;
  double log_m_ratio = 0.0;
  double thm1_ratio = 0.0;
  std::optional<Thm2Conditions> thm2;   // needs beta and gamma
  std::optional<GoodProbBound> good_prob;  // needs p11 > 0
  std::optional<CoreDiagnostics> core;
};

TheoryReport evaluate_theory(const ModelParams& params, double alpha,
                             std::optional<double> beta = std::nullopt,
                             std::optional<double> gamma = std::nullopt);

}  // namespace align
