#include "align/permutation.hpp"

#include <numeric>
#include <string>

#include "align/errors.hpp"

namespace align {

Permutation::Permutation(std::vector<NodeId> image) : image_(std::move(image)) {
  std::vector<bool> seen(image_.size(), false);
  for (NodeId v : image_) {
    if (v >= image_.size() || seen[v]) {
      throw ParameterError("not a permutation of 0.." +
                           std::to_string(image_.size()) + "-1 (entry " +
                           std::to_string(v) + ")");
    }
    seen[v] = true;
  }
}

Permutation Permutation::identity(std::size_t n) {
  std::vector<NodeId> image(n);
  std::iota(image.begin(), image.end(), NodeId{0});
  Permutation p;
  p.image_ = std::move(image);
  return p;
}

Permutation Permutation::random(std::size_t n, Rng& rng) {
  Permutation p = identity(n);
  for (std::size_t i = n; i > 1; --i) {
    const std::size_t j = uniform_below(rng, i);
    std::swap(p.image_[i - 1], p.image_[j]);
  }
  return p;
}

Permutation Permutation::inverse() const {
  Permutation inv;
  inv.image_.resize(size());
  for (std::size_t i = 0; i < size(); ++i) {
    inv.image_[image_[i]] = static_cast<NodeId>(i);
  }
  return inv;
}

std::size_t Permutation::fixed_points() const {
  std::size_t count = 0;
  for (std::size_t i = 0; i < size(); ++i) count += (image_[i] == i);
  return count;
}

Permutation compose(const Permutation& outer, const Permutation& inner) {
  if (outer.size() != inner.size()) {
    throw ParameterError("compose: permutation sizes differ");
  }
  std::vector<NodeId> image(inner.size());
  for (std::size_t i = 0; i < inner.size(); ++i) {
    image[i] = outer(inner(static_cast<NodeId>(i)));
  }
  return Permutation(std::move(image));
}

Graph relabel(const Graph& g, const Permutation& pi) {
  if (g.num_nodes() != pi.size()) {
    throw ParameterError("relabel: graph has " + std::to_string(g.num_nodes()) +
                         " nodes but permutation has size " +
                         std::to_string(pi.size()));
  }
  std::vector<Edge> edges = g.edges();
  for (auto& [u, v] : edges) {
    u = pi(u);
    v = pi(v);
  }
  return Graph(g.num_nodes(), edges);
}

}  // namespace align
