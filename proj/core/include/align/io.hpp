#pragma once

#include <filesystem>
#include <iosfwd>

#include "align/graph.hpp"
#include "align/model.hpp"
#include "align/permutation.hpp"

namespace align {

// Graph files: a header line "n m", then m lines "u v" with 0 <= u < v < n,
// sorted lexicographically. Permutation files: one line of n images.
// Node labels are 0-indexed on disk as in memory.

void write_graph(std::ostream& out, const Graph& g);
/// Throws ParameterError on any deviation from the format.
Graph parse_graph(std::istream& in);

void write_permutation(std::ostream& out, const Permutation& pi);
Permutation parse_permutation(std::istream& in);

void save_graph(const std::filesystem::path& path, const Graph& g);
Graph load_graph(const std::filesystem::path& path);
void save_permutation(const std::filesystem::path& path, const Permutation& pi);
Permutation load_permutation(const std::filesystem::path& path);

/// Instance bundle: a directory holding ga.edges, gb.edges, pistar.perm and
/// meta.json ({"n", "q", "s", "seed"}).
void save_instance(const std::filesystem::path& dir, const CorrelatedInstance& inst);
/// Rebuilds g_b_prime from g_b and pi*. Checks that the files agree with
/// meta.json.
CorrelatedInstance load_instance(const std::filesystem::path& dir);

}  // namespace align
