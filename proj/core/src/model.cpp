#include "align/model.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "align/errors.hpp"

namespace align {
namespace {

// Expected parent edges above this are refused: three graphs of this size in
// CSR form already take tens of gigabytes.
constexpr double kMaxExpectedParentEdges = 2.0e9;

}  // namespace

void ModelParams::validate() const {
  auto fail = [this](const char* why) {
    std::ostringstream os;
    os << "invalid model parameters (n=" << n << ", q=" << q << ", s=" << s
       << "): " << why;
    throw ParameterError(os.str());
  };
  if (n < 2) fail("need n >= 2");
  if (!std::isfinite(q) || !std::isfinite(s)) fail("q and s must be finite");
  if (!(s > 0.0 && s <= 1.0)) fail("need 0 < s <= 1");
  if (!(q >= 0.0 && q <= s)) fail("need 0 <= q <= s");
}

double ModelParams::correlation() const {
  if (q >= 1.0) return 0.0;
  return (s - q) / (1.0 - q);
}

PairDistribution dist_p(const ModelParams& params) {
  params.validate();
  const double q = params.q;
  const double s = params.s;
  return {1.0 - 2.0 * q + q * s, q * (1.0 - s), q * (1.0 - s), q * s};
}

PairDistribution dist_q(const ModelParams& params) {
  params.validate();
  const double q = params.q;
  return {1.0 - 2.0 * q + q * q, q * (1.0 - q), q * (1.0 - q), q * q};
}

double kl_divergence(const PairDistribution& p, const PairDistribution& q) {
  const double ps[4] = {p.p00, p.p01, p.p10, p.p11};
  const double qs[4] = {q.p00, q.p01, q.p10, q.p11};
  double total = 0.0;
  for (int i = 0; i < 4; ++i) {
    if (ps[i] < 0.0 || qs[i] < 0.0) {
      throw DomainError("kl_divergence: negative probability");
    }
    if (ps[i] == 0.0) continue;
    if (qs[i] == 0.0) {
      throw DomainError("kl_divergence: p has mass where q has none");
    }
    total += ps[i] * std::log(ps[i] / qs[i]);
  }
  // Rounding can leave a tiny negative value when p == q.
  return total < 0.0 ? 0.0 : total;
}

CorrelatedInstance generate(const ModelParams& params, std::uint64_t seed) {
  params.validate();
  if (params.q <= 0.0) {
    throw ParameterError("generate: need q > 0");
  }
  const std::size_t n = params.n;
  if (n >= std::numeric_limits<NodeId>::max()) {
    throw CapacityError("generate: n exceeds the node id range");
  }
  const double slots = static_cast<double>(n) * static_cast<double>(n - 1) / 2.0;
  const double parent_p = params.parent_density();
  if (slots * parent_p > kMaxExpectedParentEdges) {
    throw CapacityError("generate: expected edge count too large");
  }

  Rng rng = make_rng(seed);
  std::vector<Edge> edges_a;
  std::vector<Edge> edges_b_prime;
  const auto reserve = static_cast<std::size_t>(slots * params.q * 1.1) + 16;
  edges_a.reserve(reserve);
  edges_b_prime.reserve(reserve);

  auto keep = [&](NodeId u, NodeId v) {
    if (bernoulli(rng, params.s)) edges_a.emplace_back(u, v);
    if (bernoulli(rng, params.s)) edges_b_prime.emplace_back(u, v);
  };

  if (parent_p >= 1.0) {
    for (NodeId v = 1; v < n; ++v) {
      for (NodeId u = 0; u < v; ++u) keep(u, v);
    }
  } else {
    // Geometric skipping over the slot sequence (u, v), u < v, ordered by v
    // then u. Each skip is the number of empty slots before the next edge.
    const double log_miss = std::log1p(-parent_p);
    std::int64_t v = 1;
    std::int64_t w = -1;
    const auto nn = static_cast<std::int64_t>(n);
    while (v < nn) {
      const double r = uniform01(rng);
      const double skip = std::floor(std::log1p(-r) / log_miss);
      if (skip >= slots) break;
      w += 1 + static_cast<std::int64_t>(skip);
      while (w >= v && v < nn) {
        w -= v;
        ++v;
      }
      if (v < nn) keep(static_cast<NodeId>(w), static_cast<NodeId>(v));
    }
  }

  CorrelatedInstance inst;
  inst.params = params;
  inst.seed = seed;
  inst.g_a = Graph(n, edges_a);
  inst.g_b_prime = Graph(n, edges_b_prime);
  inst.pi_star = Permutation::random(n, rng);
  inst.g_b = relabel(inst.g_b_prime, inst.pi_star);
  return inst;
}

}  // namespace align
