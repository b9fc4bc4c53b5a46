#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "align/graph.hpp"
#include "align/rng.hpp"

namespace align {

/// A bijection on {0, ..., n-1} stored as its image list: image()[i] = pi(i).
class Permutation {
 public:
  Permutation() = default;
  /// Throws ParameterError unless `image` is a bijection.
  explicit Permutation(std::vector<NodeId> image);

  static Permutation identity(std::size_t n);
  /// Fisher-Yates shuffle driven by `rng`.
  static Permutation random(std::size_t n, Rng& rng);

  std::size_t size() const { return image_.size(); }
  NodeId operator()(NodeId i) const { return image_[i]; }
  std::span<const NodeId> image() const { return image_; }

  Permutation inverse() const;
  std::size_t fixed_points() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
  /// Lexicographic order of image lists.
  friend auto operator<=>(const Permutation& a, const Permutation& b) {
    return a.image_ <=> b.image_;
  }

 private:
  std::vector<NodeId> image_;
};

/// (outer o inner)(i) = outer(inner(i)).
Permutation compose(const Permutation& outer, const Permutation& inner);

/// Graph with edge {pi(u), pi(v)} for each edge {u, v} of g.
Graph relabel(const Graph& g, const Permutation& pi);

}  // namespace align
