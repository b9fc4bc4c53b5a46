#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace align {

using NodeId = std::uint32_t;
using Edge = std::pair<NodeId, NodeId>;

/// Undirected simple graph on nodes 0..n-1 stored as sorted adjacency lists
/// in compressed (CSR) form. Immutable once built.
class Graph {
 public:
  Graph() = default;
  /// Empty graph on n nodes.
  explicit Graph(std::size_t n);
  /// Builds from an edge list. Each edge may be given as (u, v) or (v, u);
  /// self-loops, out-of-range ids and duplicate edges throw ParameterError.
  Graph(std::size_t n, std::span<const Edge> edges);

  std::size_t num_nodes() const { return offsets_.size() - 1; }
  std::size_t num_edges() const { return neighbors_.size() / 2; }
  std::size_t degree(NodeId u) const { return offsets_[u + 1] - offsets_[u]; }

  std::span<const NodeId> neighbors(NodeId u) const {
    return {neighbors_.data() + offsets_[u], degree(u)};
  }

  /// Binary search in the sorted neighbor list of u.
  bool has_edge(NodeId u, NodeId v) const;

  /// All edges as (u, v) with u < v, sorted lexicographically.
  std::vector<Edge> edges() const;

  /// |E| / C(n, 2).
  double density() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::vector<std::size_t> offsets_{0};
  std::vector<NodeId> neighbors_;
};

}  // namespace align
