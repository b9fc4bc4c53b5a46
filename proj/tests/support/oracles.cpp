#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace oracle {

void for_each_permutation(std::size_t n, const std::function<void(const Image&)>& visit) {
  Image a(n);
  std::iota(a.begin(), a.end(), 0u);
  std::vector<std::size_t> c(n, 0);
  visit(a);
  std::size_t i = 1;
  while (i < n) {
    if (c[i] < i) {
      if (i % 2 == 0) {
        std::swap(a[0], a[i]);
      } else {
        std::swap(a[c[i]], a[i]);
      }
      visit(a);
      ++c[i];
      i = 1;
    } else {
      c[i] = 0;
      ++i;
    }
  }
}

std::vector<std::uint64_t> fixed_point_histogram(std::size_t n) {
  std::vector<std::uint64_t> counts(n + 1, 0);
  for_each_permutation(n, [&](const Image& p) {
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) k += (p[i] == i);
    ++counts[k];
  });
  return counts;
}

std::uint64_t factorial(std::size_t n) {
  std::uint64_t f = 1;
  for (std::size_t i = 2; i <= n; ++i) f *= i;
  return f;
}

long double kl_pq(long double q, long double s) {
  const long double p[4] = {1 - 2 * q + q * s, q - q * s, q - q * s, q * s};
  const long double r[4] = {(1 - q) * (1 - q), q * (1 - q), q * (1 - q), q * q};
  long double sum = 0;
  for (int i = 0; i < 4; ++i) {
    if (p[i] > 0) sum += p[i] * std::log(p[i] / r[i]);
  }
  return sum;
}

long double mgf_enumerate(std::size_t k_pairs, long double t, long double q, long double s) {
  // outcome code per pair: bit 0 = A_i, bit 1 = B_i
  const long double law[4] = {1 - 2 * q + q * s, q - q * s, q - q * s, q * s};
  std::size_t total = 1;
  for (std::size_t i = 0; i < k_pairs; ++i) total *= 4;
  long double sum = 0;
  for (std::size_t code = 0; code < total; ++code) {
    std::vector<int> a(k_pairs), b(k_pairs);
    long double prob = 1;
    std::size_t rest = code;
    for (std::size_t i = 0; i < k_pairs; ++i) {
      const std::size_t o = rest % 4;
      rest /= 4;
      a[i] = static_cast<int>(o & 1);
      b[i] = static_cast<int>((o >> 1) & 1);
      // index (a, b) -> (0,0)=p00, (0,1)=p01, (1,0)=p10, (1,1)=p11
      prob *= law[a[i] * 2 + b[i]];
    }
    int w = 0;
    for (std::size_t i = 0; i < k_pairs; ++i) w += a[i] * b[(i + 1) % k_pairs];
    sum += prob * std::exp(t * w);
  }
  return sum;
}

Census pair_census(const Image& pi, const Image& pistar) {
  const std::size_t n = pi.size();
  Image inv(n);
  for (std::size_t i = 0; i < n; ++i) inv[pistar[i]] = static_cast<std::uint32_t>(i);
  Image p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = pi[inv[i]];

  using P = std::pair<std::uint32_t, std::uint32_t>;
  Census out;
  std::set<P> rest;
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t j = 0; j < n; ++j) {
      if (i == j) continue;
      if (p[i] == i) {
        ++out.s1;
      } else if (p[i] == j && p[j] == i) {
        ++out.s21;
      } else {
        rest.insert({i, j});
      }
    }
  }
  while (!rest.empty()) {
    std::set<P> orbit;
    P cur = *rest.begin();
    while (!orbit.count(cur)) {
      orbit.insert(cur);
      cur = {p[cur.first], p[cur.second]};
    }
    bool has_reverse = false;
    bool same_second = true;
    for (const auto& [i, j] : orbit) {
      if (orbit.count({j, i})) has_reverse = true;
      if (j != orbit.begin()->second) same_second = false;
    }
    auto& [g1, g2, g3] = out.cycles[orbit.size()];
    if (has_reverse) {
      ++g1;
    } else if (same_second) {
      ++g3;
    } else {
      ++g2;
    }
    for (const auto& e : orbit) rest.erase(e);
  }
  return out;
}

std::vector<std::uint32_t> exhaustive_core(const AdjMatrix& adj, double k) {
  const std::size_t n = adj.size();
  std::uint64_t best = 0;
  int best_size = -1;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      if (!(mask >> i & 1)) continue;
      int d = 0;
      for (std::size_t j = 0; j < n; ++j) d += (mask >> j & 1) && adj[i][j];
      ok = d >= k;
    }
    const int size = __builtin_popcountll(mask);
    if (ok && size > best_size) {
      best_size = size;
      best = mask;
    }
  }
  std::vector<std::uint32_t> members;
  for (std::size_t i = 0; i < n; ++i) {
    if (best >> i & 1) members.push_back(static_cast<std::uint32_t>(i));
  }
  return members;
}

AdjMatrix random_adjacency(std::size_t n, double p, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  AdjMatrix adj(n, std::vector<char>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (u(rng) < p) adj[i][j] = adj[j][i] = 1;
    }
  }
  return adj;
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> edge_list(const AdjMatrix& adj) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  for (std::uint32_t i = 0; i < adj.size(); ++i) {
    for (std::uint32_t j = i + 1; j < adj.size(); ++j) {
      if (adj[i][j]) edges.emplace_back(i, j);
    }
  }
  return edges;
}

std::pair<Image, std::size_t> brute_force_map(const AdjMatrix& a, const AdjMatrix& b) {
  const std::size_t n = a.size();
  Image best;
  std::size_t best_score = 0;
  for_each_permutation(n, [&](const Image& pi) {
    std::size_t score = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) score += a[i][j] && b[pi[i]][pi[j]];
    }
    if (best.empty() || score > best_score || (score == best_score && pi < best)) {
      best = pi;
      best_score = score;
    }
  });
  return {best, best_score};
}

bool good_by_definition(const AdjMatrix& a, const AdjMatrix& b, const Image& pi, double n_q_s,
                        double alpha) {
  const std::size_t n = a.size();
  double count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double d = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) d += a[i][j] * b[pi[i]][pi[j]];
    }
    if (d >= n_q_s / 2) count += 1;
  }
  return count >= n * (1 + alpha) / 2;
}

double c3_fine_grid(double step) {
  double best = INFINITY;
  for (double mu = step; mu <= 30.0; mu += step) {
    const double psi2 = -std::expm1(-mu) - mu * std::exp(-mu);
    best = std::min(best, mu / psi2);
  }
  return best;
}

double mu3_bisection(double lambda) {
  auto f = [lambda](double mu) { return mu - lambda * (1 - std::exp(-mu) * (1 + mu)); };
  double lo = lambda / 2, hi = lambda;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (f(mid) < 0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace oracle
