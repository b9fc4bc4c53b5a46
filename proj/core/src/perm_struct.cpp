#include "align/perm_struct.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "align/errors.hpp"

namespace align {

Overlap overlap(const Permutation& pi, const Permutation& pi_star) {
  if (pi.size() != pi_star.size()) {
    throw ParameterError("overlap: permutation sizes differ (" +
                         std::to_string(pi.size()) + " vs " +
                         std::to_string(pi_star.size()) + ")");
  }
  Overlap o{0, pi.size()};
  for (NodeId i = 0; i < pi.size(); ++i) o.matches += (pi(i) == pi_star(i));
  return o;
}

BigInt factorial(std::size_t n) {
  BigInt f = 1;
  for (std::size_t i = 2; i <= n; ++i) f *= i;
  return f;
}

BigInt derangements(std::size_t m) {
  // D_0 = 1, D_1 = 0, D_m = (m - 1)(D_{m-1} + D_{m-2}).
  BigInt prev2 = 1;
  BigInt prev1 = 0;
  if (m == 0) return prev2;
  for (std::size_t i = 2; i <= m; ++i) {
    BigInt next = (i - 1) * (prev1 + prev2);
    prev2 = std::move(prev1);
    prev1 = std::move(next);
  }
  return prev1;
}

namespace {

BigInt binomial(std::size_t n, std::size_t k) {
  k = std::min(k, n - k);
  BigInt c = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    c *= n - k + i;
    c /= i;
  }
  return c;
}

// log(D_m / m!) = log sum_{i=0}^{m} (-1)^i / i!.
double log_derangement_fraction(std::size_t m) {
  if (m == 1) return -std::numeric_limits<double>::infinity();
  double term = 1.0;
  double sum = 1.0;
  for (std::size_t i = 1; i <= m && term > 1e-20; ++i) {
    term /= static_cast<double>(i);
    sum += (i % 2 == 1) ? -term : term;
  }
  return std::log(sum);
}

void check_k(std::size_t n, std::size_t k) {
  if (k > n) {
    throw ParameterError("rencontres: k = " + std::to_string(k) +
                         " exceeds n = " + std::to_string(n));
  }
}

}  // namespace

BigInt rencontres(std::size_t n, std::size_t k) {
  check_k(n, k);
  return binomial(n, k) * derangements(n - k);
}

double log_rencontres(std::size_t n, std::size_t k) {
  check_k(n, k);
  const auto lg = [](std::size_t x) { return std::lgamma(static_cast<double>(x) + 1.0); };
  return lg(n) - lg(k) + log_derangement_fraction(n - k);
}

std::size_t ceil_fraction(std::size_t n, double alpha) {
  const double x = static_cast<double>(n) * alpha;
  const double nearest = std::round(x);
  if (std::abs(x - nearest) < 1e-9) return static_cast<std::size_t>(nearest);
  return static_cast<std::size_t>(std::ceil(x));
}

MAlpha m_alpha(std::size_t n, double alpha) {
  if (n < 1) throw ParameterError("m_alpha: need n >= 1");
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw ParameterError("m_alpha: need 0 < alpha < 1");
  }
  MAlpha out;
  out.n = n;
  out.min_fixed = ceil_fraction(n, alpha);
  if (out.min_fixed > n) throw ParameterError("m_alpha: ceil(n alpha) > n");

  if (n <= kExactCountingLimit) {
    out.exact = true;
    out.value = 0;
    for (std::size_t k = out.min_fixed; k <= n; ++k) out.value += rencontres(n, k);
    const auto total = factorial(n).convert_to<long double>();
    const auto part = out.value.convert_to<long double>();
    out.log_value = static_cast<double>(std::log(part));
    out.log_ratio = static_cast<double>(std::log(total / part));
    return out;
  }

  // log-sum-exp over the surviving terms.
  std::vector<double> logs;
  for (std::size_t k = out.min_fixed; k <= n; ++k) {
    const double lv = log_rencontres(n, k);
    if (std::isfinite(lv)) logs.push_back(lv);
  }
  const double top = *std::max_element(logs.begin(), logs.end());
  double acc = 0.0;
  for (double lv : logs) acc += std::exp(lv - top);
  out.log_value = top + std::log(acc);
  out.log_ratio = std::lgamma(static_cast<double>(n) + 1.0) - out.log_value;
  return out;
}

std::string_view to_string(CycleGroup g) {
  switch (g) {
    case CycleGroup::kPaired: return "G1";
    case CycleGroup::kTwin: return "G2";
    case CycleGroup::kStar: return "G3";
  }
  return "?";
}

CycleDecomposition decompose(const Permutation& pi, const Permutation& pi_star) {
  if (pi.size() != pi_star.size()) {
    throw ParameterError("decompose: permutation sizes differ");
  }
  const std::size_t n = pi.size();
  const Permutation p = compose(pi, pi_star.inverse());

  CycleDecomposition out;
  out.n = n;
  out.eps = overlap(pi, pi_star);

  // orbit[i * n + j]: index of the S2^2 cycle holding (i, j), or -1.
  std::vector<std::int64_t> orbit(n * n, -1);
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId j = 0; j < n; ++j) {
      if (i == j) continue;
      if (p(i) == i) {
        out.s1.emplace_back(i, j);
      } else if (p(i) == j && p(j) == i) {
        out.s21.emplace_back(i, j);
      } else if (orbit[i * n + j] < 0) {
        const auto id = static_cast<std::int64_t>(out.cycles.size());
        PairCycle cycle;
        OrderedPair cur{i, j};
        do {
          cycle.members.push_back(cur);
          orbit[cur.first * n + cur.second] = id;
          cur = {p(cur.first), p(cur.second)};
        } while (cur != OrderedPair{i, j});

        const bool all_same_second =
            std::all_of(cycle.members.begin(), cycle.members.end(),
                        [j](const OrderedPair& m) { return m.second == j; });
        if (orbit[j * n + i] == id) {
          cycle.group = CycleGroup::kPaired;
        } else if (all_same_second) {
          cycle.group = CycleGroup::kStar;
        } else {
          cycle.group = CycleGroup::kTwin;
        }
        out.cycles.push_back(std::move(cycle));
      }
    }
  }

  for (const auto& c : out.cycles) {
    auto& entry = out.census[c.size()];
    switch (c.group) {
      case CycleGroup::kPaired: ++entry.paired; break;
      case CycleGroup::kTwin: ++entry.twin; break;
      case CycleGroup::kStar: ++entry.star; break;
    }
  }
  return out;
}

}  // namespace align
