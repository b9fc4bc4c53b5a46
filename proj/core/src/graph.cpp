#include "align/graph.hpp"

#include <algorithm>
#include <string>

#include "align/errors.hpp"

namespace align {

Graph::Graph(std::size_t n) : offsets_(n + 1, 0) {}

Graph::Graph(std::size_t n, std::span<const Edge> edges) : offsets_(n + 1, 0) {
  for (const auto& [u, v] : edges) {
    if (u >= n || v >= n) {
      throw ParameterError("edge (" + std::to_string(u) + ", " +
                           std::to_string(v) + ") out of range for n = " +
                           std::to_string(n));
    }
    if (u == v) {
      throw ParameterError("self-loop at node " + std::to_string(u));
    }
    ++offsets_[u + 1];
    ++offsets_[v + 1];
  }
  for (std::size_t i = 0; i < n; ++i) offsets_[i + 1] += offsets_[i];

  neighbors_.resize(offsets_[n]);
  std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (const auto& [u, v] : edges) {
    neighbors_[cursor[u]++] = v;
    neighbors_[cursor[v]++] = u;
  }
  for (std::size_t i = 0; i < n; ++i) {
    auto first = neighbors_.begin() + static_cast<std::ptrdiff_t>(offsets_[i]);
    auto last = neighbors_.begin() + static_cast<std::ptrdiff_t>(offsets_[i + 1]);
    std::sort(first, last);
    if (std::adjacent_find(first, last) != last) {
      throw ParameterError("duplicate edge at node " + std::to_string(i));
    }
  }
}

bool Graph::has_edge(NodeId u, NodeId v) const {
  const auto adj = neighbors(u);
  return std::binary_search(adj.begin(), adj.end(), v);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(num_edges());
  for (NodeId u = 0; u < num_nodes(); ++u) {
    for (NodeId v : neighbors(u)) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

double Graph::density() const {
  const double n = static_cast<double>(num_nodes());
  if (n < 2) return 0.0;
  return static_cast<double>(num_edges()) / (n * (n - 1) / 2.0);
}

}  // namespace align
