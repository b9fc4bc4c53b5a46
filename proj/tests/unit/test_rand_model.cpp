#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <numeric>
#include <sstream>

#include "align/align.hpp"
#include "oracles.hpp"

using namespace align;

namespace {

std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("align_unit_" + name);
  std::filesystem::remove_all(dir);
  return dir;
}

}  // namespace

TEST_CASE("graph construction and queries") {
  const std::vector<Edge> edges = {{2, 0}, {0, 1}, {3, 1}};
  const Graph g(4, edges);
  CHECK(g.num_nodes() == 4);
  CHECK(g.num_edges() == 3);
  CHECK(g.degree(0) == 2);
  CHECK(g.has_edge(1, 3));
  CHECK(g.has_edge(3, 1));
  CHECK_FALSE(g.has_edge(2, 3));
  CHECK(g.edges() == std::vector<Edge>{{0, 1}, {0, 2}, {1, 3}});
  CHECK(g.density() == doctest::Approx(0.5));

  CHECK_THROWS_AS(Graph(3, std::vector<Edge>{{1, 1}}), ParameterError);
  CHECK_THROWS_AS(Graph(3, std::vector<Edge>{{0, 3}}), ParameterError);
  CHECK_THROWS_AS(Graph(3, std::vector<Edge>{{0, 1}, {1, 0}}), ParameterError);
}

TEST_CASE("graph symmetry and degree sum on random graphs") {
  std::mt19937_64 rng(7);
  for (int rep = 0; rep < 20; ++rep) {
    const auto adj = oracle::random_adjacency(15, 0.3, rng);
    const auto edges = oracle::edge_list(adj);
    const Graph g(15, edges);
    std::size_t degree_sum = 0;
    for (NodeId u = 0; u < 15; ++u) {
      degree_sum += g.degree(u);
      CHECK_FALSE(g.has_edge(u, u));
      for (NodeId v : g.neighbors(u)) CHECK(g.has_edge(v, u));
    }
    CHECK(degree_sum == 2 * g.num_edges());
    CHECK(g.edges() == edges);
  }
}

TEST_CASE("permutation basics") {
  const Permutation p({2, 0, 1});
  CHECK(p(0) == 2);
  CHECK(compose(p, p.inverse()) == Permutation::identity(3));
  CHECK(compose(p.inverse(), p) == Permutation::identity(3));
  CHECK(Permutation::identity(5).fixed_points() == 5);
  CHECK(p.fixed_points() == 0);
  CHECK_THROWS_AS(Permutation({0, 0, 1}), ParameterError);
  CHECK_THROWS_AS(Permutation({0, 3, 1}), ParameterError);
  CHECK(Permutation({0, 2, 1}) < Permutation({1, 0, 2}));

  auto rng = make_rng(11);
  for (int rep = 0; rep < 50; ++rep) {
    const auto r = Permutation::random(9, rng);
    std::vector<NodeId> sorted(r.image().begin(), r.image().end());
    std::sort(sorted.begin(), sorted.end());
    std::vector<NodeId> expected(9);
    std::iota(expected.begin(), expected.end(), 0u);
    CHECK(sorted == expected);
  }
}

TEST_CASE("relabel moves edges") {
  const Graph g(3, std::vector<Edge>{{0, 1}});
  const Permutation p({2, 0, 1});
  const Graph h = relabel(g, p);
  CHECK(h.has_edge(2, 0));
  CHECK(h.num_edges() == 1);
}

TEST_CASE("model params validation") {
  CHECK_NOTHROW((ModelParams{10, 0.2, 0.6}.validate()));
  CHECK_NOTHROW((ModelParams{10, 0.0, 0.6}.validate()));
  CHECK_NOTHROW((ModelParams{10, 0.3, 0.3}.validate()));
  CHECK_THROWS_AS((ModelParams{1, 0.2, 0.6}.validate()), ParameterError);
  CHECK_THROWS_AS((ModelParams{10, 0.7, 0.6}.validate()), ParameterError);
  CHECK_THROWS_AS((ModelParams{10, 0.2, 0.0}.validate()), ParameterError);
  CHECK_THROWS_AS((ModelParams{10, 0.2, 1.5}.validate()), ParameterError);
  CHECK_THROWS_AS((ModelParams{10, -0.1, 0.5}.validate()), ParameterError);
  CHECK_THROWS_AS((ModelParams{10, std::nan(""), 0.5}.validate()), ParameterError);
}

TEST_CASE("pair distributions") {
  const ModelParams params{10, 0.2, 0.6};
  const auto p = dist_p(params);
  CHECK(p.p00 == doctest::Approx(0.72).epsilon(1e-12));
  CHECK(p.p01 == doctest::Approx(0.08).epsilon(1e-12));
  CHECK(p.p10 == doctest::Approx(0.08).epsilon(1e-12));
  CHECK(p.p11 == doctest::Approx(0.12).epsilon(1e-12));
  const auto q = dist_q(params);
  CHECK(q.p00 == doctest::Approx(0.64).epsilon(1e-12));
  CHECK(q.p01 == doctest::Approx(0.16).epsilon(1e-12));
  CHECK(q.p11 == doctest::Approx(0.04).epsilon(1e-12));

  const auto same = dist_p(ModelParams{10, 0.3, 0.3});
  const auto indep = dist_q(ModelParams{10, 0.3, 0.3});
  CHECK(same.p00 == doctest::Approx(indep.p00));
  CHECK(same.p01 == doctest::Approx(indep.p01));
  CHECK(same.p11 == doctest::Approx(indep.p11));
}

TEST_CASE("pair distribution invariants on random params") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int rep = 0; rep < 200; ++rep) {
    const double s = 0.01 + 0.99 * u(rng);
    const double q = s * u(rng);
    const ModelParams params{100, q, s};
    for (const auto& d : {dist_p(params), dist_q(params)}) {
      CHECK(std::abs(d.sum() - 1.0) <= 1e-12);
      CHECK(d.p00 >= 0.0);
      CHECK(d.p11 >= 0.0);
      CHECK(d.p01 == d.p10);
    }
    CHECK(std::abs(dist_p(params).covariance() - q * (s - q)) <= 1e-12);
  }
}

TEST_CASE("kl divergence") {
  const ModelParams params{10, 0.2, 0.6};
  const double kl = kl_divergence(dist_p(params), dist_q(params));
  CHECK(std::abs(kl - static_cast<double>(oracle::kl_pq(0.2L, 0.6L))) < 1e-14);
  CHECK(kl == doctest::Approx(0.1057).epsilon(1e-3));
  CHECK(kl_divergence(dist_q(params), dist_q(params)) == 0.0);

  const PairDistribution p{0.5, 0.0, 0.0, 0.5};
  const PairDistribution no_11{0.5, 0.25, 0.25, 0.0};
  CHECK_THROWS_AS(kl_divergence(p, no_11), DomainError);

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int rep = 0; rep < 10; ++rep) {
    const double s = 0.1 + 0.9 * u(rng);
    const double q = s * (0.05 + 0.9 * u(rng));
    const ModelParams m{50, q, s};
    CHECK(kl_divergence(dist_p(m), dist_q(m)) > 0.0);
    CHECK(kl_divergence(dist_p(m), dist_q(m)) ==
          doctest::Approx(static_cast<double>(oracle::kl_pq(q, s))).epsilon(1e-12));
  }
}

TEST_CASE("generate: structure and determinism") {
  const ModelParams params{300, 0.05, 0.5};
  const auto a = generate(params, 42);
  const auto b = generate(params, 42);
  CHECK(a.g_a == b.g_a);
  CHECK(a.g_b == b.g_b);
  CHECK(a.pi_star == b.pi_star);
  const auto c = generate(params, 43);
  CHECK_FALSE(c.g_a == a.g_a);

  CHECK(a.g_a.num_nodes() == 300);
  CHECK(a.g_b.num_nodes() == 300);
  CHECK(a.pi_star.size() == 300);
  for (const auto& [u, v] : a.g_b_prime.edges()) {
    CHECK(a.g_b.has_edge(a.pi_star(u), a.pi_star(v)));
  }
  CHECK(a.g_b.num_edges() == a.g_b_prime.num_edges());
}

TEST_CASE("generate: s = 1 gives isomorphic copies") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto inst = generate(ModelParams{2, 0.5, 1.0}, seed);
    CHECK(inst.g_a == inst.g_b_prime);
    CHECK(relabel(inst.g_a, inst.pi_star) == inst.g_b);
  }
  const auto big = generate(ModelParams{200, 0.1, 1.0}, 9);
  CHECK(big.g_a == big.g_b_prime);
}

TEST_CASE("generate: rejects q = 0 and bad params") {
  CHECK_THROWS_AS(generate(ModelParams{10, 0.0, 0.5}, 1), ParameterError);
  CHECK_THROWS_AS(generate(ModelParams{10, 0.6, 0.5}, 1), ParameterError);
  CHECK_THROWS_AS(generate(ModelParams{5'000'000, 0.5, 1.0}, 1), CapacityError);
}

TEST_CASE("generate: moments at n = 2000") {
  const ModelParams params{2000, 0.05, 0.5};
  const double slots = 2000.0 * 1999.0 / 2.0;
  const auto inst = generate(params, 2024);
  const double sd_q = std::sqrt(0.05 * 0.95 / slots);
  CHECK(std::abs(inst.g_a.density() - 0.05) <= 4 * sd_q);
  CHECK(std::abs(inst.g_b.density() - 0.05) <= 4 * sd_q);

  std::size_t both = 0;
  for (const auto& [u, v] : inst.g_a.edges()) both += inst.g_b_prime.has_edge(u, v);
  const double p11 = both / slots;
  CHECK(std::abs(p11 - 0.025) <= 3 * std::sqrt(0.025 * 0.975 / slots));

  const double pa = inst.g_a.density();
  const double pb = inst.g_b_prime.density();
  const double corr = (p11 - pa * pb) / std::sqrt(pa * (1 - pa) * pb * (1 - pb));
  CHECK(corr == doctest::Approx(0.45 / 0.95).epsilon(0.02));
  CHECK(params.correlation() == doctest::Approx(0.45 / 0.95));
}

TEST_CASE("graph and permutation files round trip") {
  const auto inst = generate(ModelParams{40, 0.2, 0.7}, 5);
  std::stringstream gs;
  write_graph(gs, inst.g_a);
  CHECK(parse_graph(gs) == inst.g_a);
  std::stringstream ps;
  write_permutation(ps, inst.pi_star);
  CHECK(parse_permutation(ps) == inst.pi_star);

  const auto dir = scratch_dir("roundtrip");
  save_instance(dir, inst);
  const auto back = load_instance(dir);
  CHECK(back.g_a == inst.g_a);
  CHECK(back.g_b == inst.g_b);
  CHECK(back.g_b_prime == inst.g_b_prime);
  CHECK(back.pi_star == inst.pi_star);
  CHECK(back.params == inst.params);
  CHECK(back.seed == inst.seed);
  std::filesystem::remove_all(dir);
}

TEST_CASE("graph file format is strict") {
  auto parse = [](const std::string& text) {
    std::istringstream in(text);
    return parse_graph(in);
  };
  CHECK(parse("3 2\n0 1\n1 2\n").num_edges() == 2);
  CHECK_THROWS_AS(parse("3 2\n1 2\n0 1\n"), ParameterError);
  CHECK_THROWS_AS(parse("3 1\n1 0\n"), ParameterError);
  CHECK_THROWS_AS(parse("3 1\n0 3\n"), ParameterError);
  CHECK_THROWS_AS(parse("3 2\n0 1\n"), ParameterError);
  CHECK_THROWS_AS(parse("3 1\n0 1\n1 2\n"), ParameterError);
  CHECK_THROWS_AS(parse("x"), ParameterError);

  std::istringstream bad_perm("0 1 x");
  CHECK_THROWS_AS(parse_permutation(bad_perm), ParameterError);
  std::istringstream dup_perm("0 0 1");
  CHECK_THROWS_AS(parse_permutation(dup_perm), ParameterError);
  CHECK_THROWS_AS(load_graph("/nonexistent/dir/g.edges"), IoError);
}
