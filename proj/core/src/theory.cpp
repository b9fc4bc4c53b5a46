#include "align/theory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "align/errors.hpp"
#include "align/perm_struct.hpp"

namespace align {
namespace {

// ceil(x) with values within 1e-9 of an integer snapped to it, so that an
// index such as 130 * 0.5 - 1 computed in floating point lands on 64.
std::size_t ceil_index(double x) {
  const double nearest = std::round(x);
  if (std::abs(x - nearest) < 1e-9) return static_cast<std::size_t>(std::max(nearest, 0.0));
  return static_cast<std::size_t>(std::ceil(x));
}

double log_poisson_pmf(std::size_t i, double mu) {
  const auto di = static_cast<double>(i);
  return -mu + di * std::log(mu) - std::lgamma(di + 1.0);
}

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw ParameterError("alpha must lie in (0, 1)");
}

}  // namespace

double standard_normal_cdf(double x) {
  return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

double PoissonSolver::psi(double x, double mu) const {
  if (!(mu > 0.0) || !std::isfinite(mu)) {
    throw DomainError("psi: need mu > 0 (got " + std::to_string(mu) + ")");
  }
  if (!(x >= 0.0)) throw DomainError("psi: need a nonnegative index");
  const std::size_t j = ceil_index(x);
  if (j == 0) return 1.0;

  if (static_cast<double>(j) > mu) {
    // Upper tail, terms shrink by mu / (i + 1) < 1.
    double term = std::exp(log_poisson_pmf(j, mu));
    double sum = term;
    for (std::size_t i = j, steps = 0; steps < max_terms_; ++i, ++steps) {
      term *= mu / static_cast<double>(i + 1);
      sum += term;
      if (term <= tolerance_ * sum) break;
    }
    return std::clamp(sum, 0.0, 1.0);
  }

  // Lower tail P(Po <= j - 1), terms shrink by i / mu <= 1 going down.
  std::size_t i = j - 1;
  double term = std::exp(log_poisson_pmf(i, mu));
  double sum = term;
  for (std::size_t steps = 0; i > 0 && steps < max_terms_; ++steps) {
    term *= static_cast<double>(i) / mu;
    --i;
    sum += term;
    if (term <= tolerance_ * sum) break;
  }
  return std::clamp(1.0 - sum, 0.0, 1.0);
}

double psi(double x, double mu) { return PoissonSolver{}.psi(x, mu); }

CkResult c_k(double k) {
  if (!(k >= 3.0) || !std::isfinite(k)) {
    throw ParameterError("c_k: need k >= 3");
  }
  const PoissonSolver solver;
  const double index = k - 1.0;
  auto ratio = [&](double mu) {
    const double tail = solver.psi(index, mu);
    return tail > 0.0 ? mu / tail : std::numeric_limits<double>::infinity();
  };

  constexpr int kGrid = 2000;
  const double upper = 10.0 * k;
  const double step = upper / kGrid;
  int best = 1;
  double best_value = ratio(step);
  for (int i = 2; i <= kGrid; ++i) {
    const double v = ratio(step * i);
    if (v < best_value) {
      best_value = v;
      best = i;
    }
  }

  // Golden-section search on the bracket around the grid minimum.
  double lo = std::max(step * (best - 1), step * 1e-3);
  double hi = step * std::min(best + 1, kGrid);
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = ratio(x1);
  double f2 = ratio(x2);
  while (hi - lo > 1e-9 * std::max(1.0, std::abs(x1))) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = ratio(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = ratio(x2);
    }
  }
  CkResult out{f1 < f2 ? f1 : f2, f1 < f2 ? x1 : x2};
  if (best_value < out.value) out = {best_value, step * best};
  return out;
}

double mu_k(double k, double lambda) {
  const CkResult ck = c_k(k);
  if (!(lambda > ck.value)) {
    throw DomainError("mu_k: lambda = " + std::to_string(lambda) +
                      " does not exceed c_k = " + std::to_string(ck.value));
  }
  const PoissonSolver solver;
  const double index = k - 1.0;
  auto f = [&](double mu) { return mu - lambda * solver.psi(index, mu); };

  const double step = lambda / 1000.0;
  double hi = lambda;
  double lo = ck.argmin;  // f < 0 here since lambda > c_k
  for (int i = 1; i <= 1000; ++i) {
    const double mu = lambda - step * i;
    if (mu <= 0.0) break;
    if (f(mu) < 0.0) {
      lo = mu;
      hi = mu + step;
      break;
    }
  }
  for (int iter = 0; iter < 200 && hi - lo > 1e-12 * lambda; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (f(mid) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double berry_esseen_lower(double j, double mu) {
  if (!(mu > 0.0)) throw DomainError("berry_esseen_lower: need mu > 0");
  return 1.0 - standard_normal_cdf((j - mu) / std::sqrt(mu)) -
         0.55 / std::sqrt(std::ceil(mu));
}

FanoBound fano_bound(const ModelParams& params, double alpha) {
  params.validate();
  check_alpha(alpha);
  const MAlpha counting = m_alpha(params.n, alpha);
  FanoBound out;
  out.kl = kl_divergence(dist_p(params), dist_q(params));
  out.log_m_ratio = counting.log_ratio;
  out.exact_counting = counting.exact;
  const auto n = static_cast<double>(params.n);
  const double information = n * (n - 1.0) / 2.0 * out.kl;
  out.raw = 1.0 - (information + 1.0) / out.log_m_ratio;
  out.clamped = std::clamp(out.raw, 0.0, 1.0);
  return out;
}

double thm1_ratio(const ModelParams& params, double alpha) {
  params.validate();
  check_alpha(alpha);
  const auto n = static_cast<double>(params.n);
  const double kl = kl_divergence(dist_p(params), dist_q(params));
  return n / std::log(n) * kl / alpha;
}

Thm2Conditions thm2_conditions(const ModelParams& params, double alpha, double beta,
                               double gamma) {
  params.validate();
  check_alpha(alpha);
  if (!(beta > 0.0) || !(gamma > 0.0)) {
    throw ParameterError("thm2_conditions: need beta > 0 and gamma > 0");
  }
  const auto n = static_cast<double>(params.n);
  const double q = params.q;
  const double s = params.s;
  const double nqs = params.nqs();

  Thm2Conditions c;
  c.c1_threshold = std::max({20.0, 84.0 * std::log(2.0 / (1.0 - alpha)),
                             16.0 / (std::min(gamma, beta) * (1.0 - alpha))});
  c.c1_margin = nqs - c.c1_threshold;
  c.c1 = nqs >= c.c1_threshold;

  const double c2_rhs = 8.0 / (1.0 - alpha) * q;
  c.c2_margin = s - c2_rhs;
  c.c2 = s > c2_rhs;

  const double c3_lhs = 2.0 * q * (1.0 - s * s) / s;
  const double c3_rhs = std::pow(n, -beta);
  c.c3_margin = c3_rhs - c3_lhs;
  c.c3 = c3_lhs <= c3_rhs;

  const double c4_rhs = std::pow(n, -2.0 * gamma);
  c.c4_margin = c4_rhs - q * s;
  c.c4 = q * s <= c4_rhs;
  return c;
}

double log_mgf_zk(std::size_t k_pairs, double t, const ModelParams& params) {
  params.validate();
  if (k_pairs < 1) throw ParameterError("mgf_zk: need k_pairs >= 1");
  if (!(t >= 0.0) || !std::isfinite(t)) throw ParameterError("mgf_zk: need t >= 0");
  const double p11 = params.q * params.s;
  const double growth = std::expm1(t);
  const double trace = p11 * growth + 1.0;
  const double det = params.covariance() * growth;
  const double disc = trace * trace - 4.0 * det;
  if (!(disc > 0.0)) {
    throw DomainError("mgf_zk: non-positive discriminant");
  }
  const double root = std::sqrt(disc);
  const double top = (trace + root) / 2.0;
  // The smaller eigenvalue from top * bottom = det, avoiding cancellation.
  const double bottom = det / top;
  const auto k = static_cast<double>(k_pairs);
  return k * std::log(top) + std::log1p(std::pow(bottom / top, k));
}

double mgf_zk(std::size_t k_pairs, double t, const ModelParams& params) {
  return std::exp(log_mgf_zk(k_pairs, t, params));
}

double chernoff_objective(double z, double tau, double q1, double q2) {
  return std::exp(-tau * std::log(z) + q2 * (z * z - 1.0) + q1 * (z - 1.0));
}

ChernoffZeta chernoff_zeta(double tau, double q1, double q2) {
  if (!(tau > 0.0) || !(q1 >= 0.0)) {
    throw ParameterError("chernoff_zeta: need tau > 0 and q1 >= 0");
  }
  if (q2 == 0.0) {
    throw DomainError("chernoff_zeta: q2 = 0 leaves a linear stationarity equation");
  }
  if (!(q2 > 0.0)) throw ParameterError("chernoff_zeta: need q2 > 0");

  ChernoffZeta out;
  out.z_star = 2.0 * tau / (q1 + std::sqrt(q1 * q1 + 8.0 * tau * q2));
  out.residual = std::abs(2.0 * q2 * out.z_star * out.z_star + q1 * out.z_star - tau);
  if (out.residual > 1e-9 * std::max(1.0, tau)) {
    throw DomainError("chernoff_zeta: stationarity residual too large");
  }
  if (out.z_star * out.z_star > tau / (2.0 * q2) * (1.0 + 1e-12)) {
    throw DomainError("chernoff_zeta: z*^2 exceeds tau / (2 q2)");
  }
  constexpr double e = std::numbers::e;
  out.zeta = std::max(std::numbers::sqrt2 * e * q1 / tau, 4.0 * e * std::sqrt(q2 / tau));
  out.objective = chernoff_objective(out.z_star, tau, q1, q2);
  return out;
}

GoodProbBound good_prob_bound(const ModelParams& params, double alpha,
                              std::optional<double> beta, std::optional<double> gamma) {
  params.validate();
  check_alpha(alpha);
  const PairDistribution p = dist_p(params);
  const PairDistribution q = dist_q(params);
  if (p.p11 <= 0.0) throw DomainError("good_prob_bound: p11 = 0");

  GoodProbBound out;
  out.tau = (1.0 - alpha) / 2.0;
  out.q1 = 2.0 * (q.p11 - p.p11 * p.p11) / p.p11;
  out.q2 = p.p11;
  out.zeta = chernoff_zeta(out.tau, std::max(out.q1, 0.0), out.q2).zeta;

  const auto n = static_cast<double>(params.n);
  const double exponent = n * (1.0 - alpha) * n * p.p11 / 8.0;
  out.log_bound = n * (1.0 - alpha) / 16.0 + exponent * std::log(out.zeta);
  if (out.log_bound >= 0.0) {
    out.bound = 1.0;
  } else if (out.log_bound >= kLogUnderflow) {
    out.bound = std::exp(out.log_bound);
  }
  out.log_union = std::lgamma(n + 1.0) + out.log_bound;
  if (beta && gamma) {
    out.asymptotic_exponent = n * std::log(n) + n * (1.0 - alpha) / 16.0 -
                              exponent * std::min(*beta, *gamma) * std::log(n);
  }
  return out;
}

bool power_mean_check(double a, double b, double k, double n) {
  if (!(a > 0.0 && b > 0.0)) throw ParameterError("power_mean_check: need a, b > 0");
  if (!(k >= 2.0 && k <= n)) throw ParameterError("power_mean_check: need 2 <= k <= n");
  const double hi = std::max(a, b);
  const double ratio = std::min(a, b) / hi;
  const double lhs = n / k * (k * std::log(hi) + std::log1p(std::pow(ratio, k)));
  const double rhs = n / 2.0 * (2.0 * std::log(hi) + std::log1p(ratio * ratio));
  return lhs <= rhs + 1e-12 * std::max(1.0, std::abs(rhs));
}

std::optional<CoreDiagnostics> core_diagnostics(const ModelParams& params, double alpha) {
  params.validate();
  check_alpha(alpha);
  const double nqs = params.nqs();
  CoreDiagnostics d;
  d.k = nqs / 2.0;
  if (d.k < 3.0) return std::nullopt;
  d.c_k = c_k(d.k).value;
  d.above_threshold = nqs > d.c_k;
  if (d.above_threshold) {
    d.mu = mu_k(d.k, nqs);
    d.core_fraction = psi(d.k, *d.mu);
  }
  d.target_fraction = (1.0 + alpha) / 2.0;
  d.chernoff_floor = -std::expm1(-nqs / 84.0);
  d.psi_at_two_thirds = psi(d.k - 1.0, 2.0 * nqs / 3.0);
  return d;
}

TheoryReport evaluate_theory(const ModelParams& params, double alpha,
                             std::optional<double> beta, std::optional<double> gamma) {
  params.validate();
  check_alpha(alpha);
  TheoryReport r;
  r.params = params;
  r.alpha = alpha;
  r.beta = beta;
  r.gamma = gamma;
  r.nqs = params.nqs();
  const FanoBound fano = fano_bound(params, alpha);
  r.kl = fano.kl;
  r.fano_raw = fano.raw;
  r.fano_clamped = fano.clamped;
  r.log_m_ratio = fano.log_m_ratio;
  r.thm1_ratio = thm1_ratio(params, alpha);
  if (beta && gamma) r.thm2 = thm2_conditions(params, alpha, *beta, *gamma);
  if (params.q > 0.0) r.good_prob = good_prob_bound(params, alpha, beta, gamma);
  r.core = core_diagnostics(params, alpha);
  return r;
}

}  // namespace align
