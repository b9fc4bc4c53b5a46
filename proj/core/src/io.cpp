#include "align/io.hpp"

#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "align/errors.hpp"

namespace align {
namespace {

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string() + " for reading");
  return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw IoError("write to " + path.string() + " failed");
}

template <typename T>
T read_value(std::istream& in, const char* what) {
  T value{};
  if (!(in >> value)) throw ParameterError(std::string("malformed input: expected ") + what);
  return value;
}

}  // namespace

void write_graph(std::ostream& out, const Graph& g) {
  out << g.num_nodes() << ' ' << g.num_edges() << '\n';
  for (const auto& [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

Graph parse_graph(std::istream& in) {
  const auto n = read_value<std::uint64_t>(in, "node count");
  const auto m = read_value<std::uint64_t>(in, "edge count");
  if (n >= std::numeric_limits<NodeId>::max()) throw ParameterError("graph: n too large");
  if (n >= 2 && m > n * (n - 1) / 2) throw ParameterError("graph: more edges than slots");
  std::vector<Edge> edges;
  edges.reserve(m);
  for (std::uint64_t e = 0; e < m; ++e) {
    const auto u = read_value<std::uint64_t>(in, "edge endpoint");
    const auto v = read_value<std::uint64_t>(in, "edge endpoint");
    if (!(u < v && v < n)) {
      throw ParameterError("graph: edge line " + std::to_string(e + 1) +
                           " must satisfy 0 <= u < v < n");
    }
    const Edge edge{static_cast<NodeId>(u), static_cast<NodeId>(v)};
    if (!edges.empty() && !(edges.back() < edge)) {
      throw ParameterError("graph: edges must be sorted and distinct (line " +
                           std::to_string(e + 1) + ")");
    }
    edges.push_back(edge);
  }
  std::string trailing;
  if (in >> trailing) throw ParameterError("graph: trailing data after the edge list");
  return Graph(n, edges);
}

void write_permutation(std::ostream& out, const Permutation& pi) {
  const auto image = pi.image();
  for (std::size_t i = 0; i < image.size(); ++i) {
    if (i) out << ' ';
    out << image[i];
  }
  out << '\n';
}

Permutation parse_permutation(std::istream& in) {
  std::vector<NodeId> image;
  std::string token;
  while (in >> token) {
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(token, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != token.size() || token.front() == '-' ||
        v >= std::numeric_limits<NodeId>::max()) {
      throw ParameterError("permutation: bad entry '" + token + "'");
    }
    image.push_back(static_cast<NodeId>(v));
  }
  if (image.empty()) throw ParameterError("permutation: empty file");
  return Permutation(std::move(image));
}

void save_graph(const std::filesystem::path& path, const Graph& g) {
  auto out = open_out(path);
  write_graph(out, g);
  finish(out, path);
}

Graph load_graph(const std::filesystem::path& path) {
  auto in = open_in(path);
  return parse_graph(in);
}

void save_permutation(const std::filesystem::path& path, const Permutation& pi) {
  auto out = open_out(path);
  write_permutation(out, pi);
  finish(out, path);
}

Permutation load_permutation(const std::filesystem::path& path) {
  auto in = open_in(path);
  return parse_permutation(in);
}

void save_instance(const std::filesystem::path& dir, const CorrelatedInstance& inst) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
  save_graph(dir / "ga.edges", inst.g_a);
  save_graph(dir / "gb.edges", inst.g_b);
  save_permutation(dir / "pistar.perm", inst.pi_star);
  nlohmann::ordered_json meta;
  meta["n"] = inst.params.n;
  meta["q"] = inst.params.q;
  meta["s"] = inst.params.s;
  meta["seed"] = inst.seed;
  auto out = open_out(dir / "meta.json");
  out << meta.dump(2) << '\n';
  finish(out, dir / "meta.json");
}

CorrelatedInstance load_instance(const std::filesystem::path& dir) {
  nlohmann::json meta;
  {
    auto in = open_in(dir / "meta.json");
    try {
      in >> meta;
    } catch (const nlohmann::json::exception& e) {
      throw ParameterError("meta.json: " + std::string(e.what()));
    }
  }
  CorrelatedInstance inst;
  try {
    inst.params.n = meta.at("n").get<std::size_t>();
    inst.params.q = meta.at("q").get<double>();
    inst.params.s = meta.at("s").get<double>();
    inst.seed = meta.at("seed").get<std::uint64_t>();
  } catch (const nlohmann::json::exception& e) {
    throw ParameterError("meta.json: " + std::string(e.what()));
  }
  inst.params.validate();
  inst.g_a = load_graph(dir / "ga.edges");
  inst.g_b = load_graph(dir / "gb.edges");
  inst.pi_star = load_permutation(dir / "pistar.perm");
  const std::size_t n = inst.params.n;
  if (inst.g_a.num_nodes() != n || inst.g_b.num_nodes() != n || inst.pi_star.size() != n) {
    throw ParameterError("instance " + dir.string() + ": sizes disagree with meta.json");
  }
  inst.g_b_prime = relabel(inst.g_b, inst.pi_star.inverse());
  return inst;
}

}  // namespace align
