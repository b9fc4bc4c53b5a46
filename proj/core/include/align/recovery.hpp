#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "align/graph.hpp"
#include "align/model.hpp"
#include "align/permutation.hpp"

namespace align {

/// Largest n accepted by the n! enumerations without an explicit override.
inline constexpr std::size_t kExhaustiveLimit = 10;

/// Edge {i, j} iff A_ij = 1 and B_{pi(i) pi(j)} = 1.
Graph intersection_graph(const Graph& g_a, const Graph& g_b, const Permutation& pi);

/// deg_i = sum_{j != i} A_ij B_{pi(i) pi(j)} for every node, computed by
/// probing g_b's adjacency for each edge of g_a.
std::vector<std::size_t> intersection_degrees(const Graph& g_a, const Graph& g_b,
                                              const Permutation& pi);

struct GoodnessReport {
  double threshold_degree = 0.0;  // nqs / 2
  std::size_t count_high_degree = 0;
  double required = 0.0;          // n (1 + alpha) / 2
  bool is_good = false;
  std::map<std::size_t, std::size_t> degree_histogram;
};

/// A permutation is good when at least n(1+alpha)/2 nodes of the
/// intersection graph have degree >= nqs/2. Both comparisons are over the
/// reals; nothing is rounded.
GoodnessReport is_good(const Graph& g_a, const Graph& g_b, const Permutation& pi,
                       const ModelParams& params, double alpha);

struct SearchOptions {
  std::optional<std::uint64_t> limit;  // max permutations to test
  bool force_large = false;            // allow n > kExhaustiveLimit
};

struct SearchResult {
  std::optional<Permutation> found;
  std::uint64_t tested = 0;
};

/// Tests permutations in lexicographic order of image lists and returns the
/// first good one.
SearchResult find_good(const Graph& g_a, const Graph& g_b, const ModelParams& params,
                       double alpha, const SearchOptions& options = {});

struct MapResult {
  Permutation estimate;
  std::size_t objective = 0;  // sum_{i<j} A_ij B_{pi(i) pi(j)}
  std::uint64_t tested = 0;
};

/// Exhaustive maximiser of the edge overlap; ties go to the lexicographically
/// smallest image list.
MapResult map_estimate(const Graph& g_a, const Graph& g_b, bool force_large = false);

/// Edges of g_a kept by pi: sum_{i<j} A_ij B_{pi(i) pi(j)}.
std::size_t edge_overlap(const Graph& g_a, const Graph& g_b, const Permutation& pi);

struct KCoreResult {
  double k = 0.0;
  std::vector<NodeId> members;  // sorted
  double fraction = 0.0;
};

/// Repeatedly deletes nodes of degree < k. Empty result allowed.
KCoreResult k_core(const Graph& g, double k);
/// Same fixed point, but deletion candidates are discovered by scanning
/// nodes in `order`. For checking order independence.
KCoreResult k_core(const Graph& g, double k, std::span<const NodeId> order);

}  // namespace align
