#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "align/graph.hpp"
#include "align/permutation.hpp"

namespace align {

using BigInt = boost::multiprecision::cpp_int;

/// matches / n, kept as an exact ratio.
struct Overlap {
  std::size_t matches = 0;
  std::size_t n = 0;

  double value() const {
    return n == 0 ? 0.0 : static_cast<double>(matches) / static_cast<double>(n);
  }
  friend bool operator==(const Overlap&, const Overlap&) = default;
};

/// Fraction of indices where pi and pi_star agree; equals the fixed-point
/// fraction of pi o pi_star^-1.
Overlap overlap(const Permutation& pi, const Permutation& pi_star);

/// Exact factorial.
BigInt factorial(std::size_t n);
/// Number of derangements of m elements, D_{m,0}.
BigInt derangements(std::size_t m);
/// D_{n,k}: permutations of n elements with exactly k fixed points.
/// Throws ParameterError for k > n.
BigInt rencontres(std::size_t n, std::size_t k);
/// log D_{n,k} via log-gamma; -infinity when D_{n,k} = 0.
double log_rencontres(std::size_t n, std::size_t k);

/// Above this n exact factorials no longer fit in a double, and the
/// counting quantities switch to log-gamma evaluation.
inline constexpr std::size_t kExactCountingLimit = 170;

/// M_alpha = sum_{k >= ceil(n alpha)} D_{n,k}: the number of permutations
/// overlapping a fixed one on at least a fraction alpha of the nodes.
struct MAlpha {
  std::size_t n = 0;
  std::size_t min_fixed = 0;  // ceil(n alpha)
  bool exact = false;         // false once n > kExactCountingLimit
  BigInt value;               // only meaningful when exact
  double log_value = 0.0;     // log M_alpha
  double log_ratio = 0.0;     // log(n! / M_alpha)
};

/// ceil(n alpha), snapping products within 1e-9 of an integer so that
/// e.g. 5 * 0.6 gives 3.
std::size_t ceil_fraction(std::size_t n, double alpha);

MAlpha m_alpha(std::size_t n, double alpha);

using OrderedPair = std::pair<NodeId, NodeId>;

enum class CycleGroup {
  kPaired = 1,  // G1: contains (j, i) with every (i, j)
  kTwin = 2,    // G2: reversed pairs form a separate cycle of the same size
  kStar = 3,    // G3: constant second coordinate
};

std::string_view to_string(CycleGroup g);

struct PairCycle {
  CycleGroup group = CycleGroup::kTwin;
  std::vector<OrderedPair> members;  // members[t+1] = (p(i_t), p(j_t))

  std::size_t size() const { return members.size(); }
};

/// Cycle counts of one size: l_k (G1), m_k (G2), n_k (G3).
struct CensusEntry {
  std::size_t paired = 0;
  std::size_t twin = 0;
  std::size_t star = 0;

  friend bool operator==(const CensusEntry&, const CensusEntry&) = default;
};

/// Partition of the ordered pairs S = {(i, j) : i != j} induced by
/// p = pi o pi_star^-1:
///   S1   = pairs whose first coordinate is a fixed point of p,
///   S2^1 = pairs swapped by p, (p(i), p(j)) = (j, i),
///   S2^2 = the rest, split into orbits of (i, j) -> (p(i), p(j)).
struct CycleDecomposition {
  std::size_t n = 0;
  Overlap eps;
  std::vector<OrderedPair> s1;
  std::vector<OrderedPair> s21;
  std::vector<PairCycle> cycles;
  std::map<std::size_t, CensusEntry> census;

  std::size_t s2_size() const { return n * (n - 1) - s1.size(); }
  std::size_t s22_size() const { return s2_size() - s21.size(); }
};

CycleDecomposition decompose(const Permutation& pi, const Permutation& pi_star);

}  // namespace align
