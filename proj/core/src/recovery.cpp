#include "align/recovery.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "align/errors.hpp"

namespace align {
namespace {

void check_sizes(const Graph& g_a, const Graph& g_b, std::size_t pi_size) {
  if (g_a.num_nodes() != g_b.num_nodes() || g_a.num_nodes() != pi_size) {
    throw ParameterError("graph/permutation sizes differ (" +
                         std::to_string(g_a.num_nodes()) + ", " +
                         std::to_string(g_b.num_nodes()) + ", " +
                         std::to_string(pi_size) + ")");
  }
}

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw ParameterError("alpha must lie in (0, 1)");
  }
}

void check_exhaustive(std::size_t n, bool force_large) {
  if (n > kExhaustiveLimit && !force_large) {
    throw CapacityError("exhaustive search over " + std::to_string(n) +
                        "! permutations refused (limit n <= " +
                        std::to_string(kExhaustiveLimit) +
                        "; pass the force-large override)");
  }
}

// Adjacency of g_b as one 64-bit row per node, for n <= 64.
class BitRows {
 public:
  explicit BitRows(const Graph& g) : rows_(g.num_nodes(), 0) {
    for (NodeId u = 0; u < g.num_nodes(); ++u) {
      for (NodeId v : g.neighbors(u)) rows_[u] |= std::uint64_t{1} << v;
    }
  }
  bool has_edge(NodeId u, NodeId v) const { return (rows_[u] >> v) & 1U; }

 private:
  std::vector<std::uint64_t> rows_;
};

class SortedRows {
 public:
  explicit SortedRows(const Graph& g) : g_(g) {}
  bool has_edge(NodeId u, NodeId v) const { return g_.has_edge(u, v); }

 private:
  const Graph& g_;
};

struct Thresholds {
  double degree;
  double required;
};

Thresholds thresholds(const ModelParams& params, double alpha) {
  const auto n = static_cast<double>(params.n);
  return {params.nqs() / 2.0, n * (1.0 + alpha) / 2.0};
}

template <typename Probe>
void accumulate_degrees(std::span<const Edge> edges_a, const Probe& b,
                        std::span<const NodeId> image, std::vector<std::size_t>& deg) {
  std::fill(deg.begin(), deg.end(), 0);
  for (const auto& [u, v] : edges_a) {
    if (b.has_edge(image[u], image[v])) {
      ++deg[u];
      ++deg[v];
    }
  }
}

template <typename Probe>
std::size_t count_overlap(std::span<const Edge> edges_a, const Probe& b,
                          std::span<const NodeId> image) {
  std::size_t kept = 0;
  for (const auto& [u, v] : edges_a) kept += b.has_edge(image[u], image[v]);
  return kept;
}

template <typename Probe>
SearchResult search_with(const std::vector<Edge>& edges_a, const Probe& b, std::size_t n,
                         Thresholds th, const SearchOptions& options) {
  SearchResult result;
  std::vector<NodeId> image(n);
  std::iota(image.begin(), image.end(), NodeId{0});
  std::vector<std::size_t> deg(n);
  do {
    if (options.limit && result.tested >= *options.limit) break;
    ++result.tested;
    accumulate_degrees(edges_a, b, image, deg);
    std::size_t high = 0;
    for (std::size_t d : deg) high += (static_cast<double>(d) >= th.degree);
    if (static_cast<double>(high) >= th.required) {
      result.found = Permutation(image);
      break;
    }
  } while (std::next_permutation(image.begin(), image.end()));
  return result;
}

template <typename Probe>
MapResult map_with(const std::vector<Edge>& edges_a, const Probe& b, std::size_t n) {
  std::vector<NodeId> image(n);
  std::iota(image.begin(), image.end(), NodeId{0});
  std::vector<NodeId> best = image;
  std::size_t best_value = 0;
  std::uint64_t tested = 0;
  bool first = true;
  do {
    ++tested;
    const std::size_t value = count_overlap(edges_a, b, image);
    if (first || value > best_value) {
      best_value = value;
      best = image;
      first = false;
    }
  } while (std::next_permutation(image.begin(), image.end()));
  return {Permutation(std::move(best)), best_value, tested};
}

}  // namespace

std::vector<std::size_t> intersection_degrees(const Graph& g_a, const Graph& g_b,
                                              const Permutation& pi) {
  check_sizes(g_a, g_b, pi.size());
  std::vector<std::size_t> deg(g_a.num_nodes(), 0);
  for (NodeId u = 0; u < g_a.num_nodes(); ++u) {
    const NodeId pu = pi(u);
    for (NodeId v : g_a.neighbors(u)) {
      if (u < v && g_b.has_edge(pu, pi(v))) {
        ++deg[u];
        ++deg[v];
      }
    }
  }
  return deg;
}

Graph intersection_graph(const Graph& g_a, const Graph& g_b, const Permutation& pi) {
  check_sizes(g_a, g_b, pi.size());
  std::vector<Edge> kept;
  for (const auto& [u, v] : g_a.edges()) {
    if (g_b.has_edge(pi(u), pi(v))) kept.emplace_back(u, v);
  }
  return Graph(g_a.num_nodes(), kept);
}

std::size_t edge_overlap(const Graph& g_a, const Graph& g_b, const Permutation& pi) {
  check_sizes(g_a, g_b, pi.size());
  const auto edges = g_a.edges();
  return count_overlap(edges, SortedRows(g_b), pi.image());
}

GoodnessReport is_good(const Graph& g_a, const Graph& g_b, const Permutation& pi,
                       const ModelParams& params, double alpha) {
  check_alpha(alpha);
  params.validate();
  check_sizes(g_a, g_b, pi.size());
  if (params.n != g_a.num_nodes()) {
    throw ParameterError("is_good: params.n does not match the graphs");
  }
  const Thresholds th = thresholds(params, alpha);
  GoodnessReport report;
  report.threshold_degree = th.degree;
  report.required = th.required;
  for (std::size_t d : intersection_degrees(g_a, g_b, pi)) {
    ++report.degree_histogram[d];
    report.count_high_degree += (static_cast<double>(d) >= th.degree);
  }
  report.is_good = static_cast<double>(report.count_high_degree) >= th.required;
  return report;
}

SearchResult find_good(const Graph& g_a, const Graph& g_b, const ModelParams& params,
                       double alpha, const SearchOptions& options) {
  check_alpha(alpha);
  params.validate();
  check_sizes(g_a, g_b, g_b.num_nodes());
  if (params.n != g_a.num_nodes()) {
    throw ParameterError("find_good: params.n does not match the graphs");
  }
  const std::size_t n = g_a.num_nodes();
  check_exhaustive(n, options.force_large);
  const auto edges_a = g_a.edges();
  const Thresholds th = thresholds(params, alpha);
  if (n <= 64) return search_with(edges_a, BitRows(g_b), n, th, options);
  return search_with(edges_a, SortedRows(g_b), n, th, options);
}

MapResult map_estimate(const Graph& g_a, const Graph& g_b, bool force_large) {
  check_sizes(g_a, g_b, g_b.num_nodes());
  const std::size_t n = g_a.num_nodes();
  check_exhaustive(n, force_large);
  const auto edges_a = g_a.edges();
  if (n <= 64) return map_with(edges_a, BitRows(g_b), n);
  return map_with(edges_a, SortedRows(g_b), n);
}

KCoreResult k_core(const Graph& g, double k, std::span<const NodeId> order) {
  const std::size_t n = g.num_nodes();
  if (!(k >= 0.0)) throw ParameterError("k_core: need k >= 0");
  if (order.size() != n) throw ParameterError("k_core: order must list every node");

  std::vector<std::size_t> deg(n);
  for (NodeId u = 0; u < n; ++u) deg[u] = g.degree(u);
  std::vector<bool> doomed(n, false);
  std::vector<NodeId> stack;
  for (NodeId u : order) {
    if (static_cast<double>(deg[u]) < k) {
      doomed[u] = true;
      stack.push_back(u);
    }
  }
  while (!stack.empty()) {
    const NodeId u = stack.back();
    stack.pop_back();
    for (NodeId v : g.neighbors(u)) {
      if (doomed[v]) continue;
      if (static_cast<double>(--deg[v]) < k) {
        doomed[v] = true;
        stack.push_back(v);
      }
    }
  }

  KCoreResult result;
  result.k = k;
  for (NodeId u = 0; u < n; ++u) {
    if (!doomed[u]) result.members.push_back(u);
  }
  result.fraction = n == 0 ? 0.0
                           : static_cast<double>(result.members.size()) /
                                 static_cast<double>(n);
  return result;
}

KCoreResult k_core(const Graph& g, double k) {
  std::vector<NodeId> order(g.num_nodes());
  std::iota(order.begin(), order.end(), NodeId{0});
  return k_core(g, k, order);
}

}  // namespace align
