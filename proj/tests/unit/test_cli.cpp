#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include <nlohmann/json.hpp>

#include "align/align.hpp"

namespace {

struct Outcome {
  int code = -1;
  std::string out;
};

Outcome cli(const std::string& args) {
  const std::string cmd = std::string(ALIGN_LAB_BIN) + " " + args + " 2>/dev/null";
  Outcome o;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  while (const auto n = std::fread(buf.data(), 1, buf.size(), pipe)) o.out.append(buf.data(), n);
  const int status = pclose(pipe);
  o.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return o;
}

nlohmann::json cli_json(const std::string& args) {
  const auto o = cli(args);
  REQUIRE(o.code == 0);
  return nlohmann::json::parse(o.out);
}

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("align_cli_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  return cells;
}

}  // namespace

TEST_CASE("exit codes") {
  CHECK(cli("").code == 2);
  CHECK(cli("nonsense").code == 2);
  CHECK(cli("psi --j 2").code == 2);
  CHECK(cli("psi --j 2 --mu -1").code == 2);
  CHECK(cli("theory --n 10 --q 0.7 --s 0.5 --alpha 0.5").code == 2);
  CHECK(cli("theory --n 10 --q 0.2 --s 0.5 --alpha 0.5 --beta 0.3").code == 2);
  CHECK(cli("ck --k 2").code == 2);
  CHECK(cli("muk --k 3 --lambda 2").code == 2);
  CHECK(cli("zeta --tau 1 --q1 1 --q2 0").code == 2);
  CHECK(cli("kcore --graph /nonexistent/g.edges --k 2").code == 1);
  CHECK(cli("--help").code == 0);

  const auto dir = scratch("exit");
  REQUIRE(cli("gen --n 11 --q 0.3 --s 0.7 --seed 1 --out " + (dir / "i").string()).code == 0);
  CHECK(cli("map --instance " + (dir / "i").string()).code == 3);
  CHECK(cli("search --instance " + (dir / "i").string() + " --alpha 0.5").code == 3);
  CHECK(cli("search --instance " + (dir / "i").string() + " --alpha 0.5 --force-large --limit 50")
            .code == 0);

  { std::ofstream(dir / "cfg.txt") << "mode = map-small\npoints = 12:0.3:0.7\n"; }
  CHECK(cli("run --config " + (dir / "cfg.txt").string()).code == 3);
  { std::ofstream(dir / "bad.txt") << "points = 8:0.3:0.7\ntrials = 0\n"; }
  CHECK(cli("run --config " + (dir / "bad.txt").string()).code == 2);
  std::filesystem::remove_all(dir);
}

TEST_CASE("scalar subcommands") {
  CHECK(cli_json("psi --j 2 --mu 1")["psi"].get<double>() ==
        doctest::Approx(1 - 2 * std::exp(-1.0)));
  CHECK(cli_json("ck --k 3")["c_k"].get<double>() == doctest::Approx(3.35).epsilon(2e-3));
  CHECK(cli_json("muk --k 3 --lambda 4")["mu"].get<double>() ==
        doctest::Approx(3.42).epsilon(2e-3));
  CHECK(cli_json("mgf --k-pairs 2 --t 0.6931471805599453 --q 0.2 --s 0.6")["mgf"].get<double>() ==
        doctest::Approx(1.0944).epsilon(1e-12));
  CHECK(cli_json("zeta --tau 1 --q1 1 --q2 1")["z_star"].get<double>() == doctest::Approx(0.5));
  const auto f = cli_json("fano --n 5 --q 0.2 --s 0.6 --alpha 0.6");
  CHECK(f["raw"].get<double>() == doctest::Approx(0.139).epsilon(1e-2));
  const auto t = cli_json("theory --n 20000 --q 0.013 --s 0.5 --alpha 0.5 --beta 0.32 --gamma 0.25");
  CHECK(t["thm2_conditions"]["all"].get<bool>());
  CHECK(t["nqs"].get<double>() == doctest::Approx(130.0));
}

TEST_CASE("instance workflow") {
  const auto dir = scratch("flow");
  const auto inst = (dir / "inst").string();
  REQUIRE(cli("gen --n 8 --q 0.4 --s 0.9 --seed 12 --out " + inst).code == 0);
  const auto loaded = align::load_instance(inst);
  CHECK(loaded.seed == 12);

  const auto good = cli_json("check-good --instance " + inst + " --pi " + inst +
                             "/pistar.perm --alpha 0.5");
  const auto direct =
      align::is_good(loaded.g_a, loaded.g_b, loaded.pi_star, loaded.params, 0.5);
  CHECK(good["is_good"].get<bool>() == direct.is_good);
  CHECK(good["count_high_degree"].get<std::size_t>() == direct.count_high_degree);

  const auto search = cli_json("search --instance " + inst + " --alpha 0.5");
  const auto found = align::find_good(loaded.g_a, loaded.g_b, loaded.params, 0.5);
  CHECK(search["found"].get<bool>() == found.found.has_value());
  CHECK(search["tested"].get<std::uint64_t>() == found.tested);

  const auto map = cli_json("map --instance " + inst);
  const auto est = align::map_estimate(loaded.g_a, loaded.g_b);
  CHECK(map["pi"].get<std::vector<std::uint32_t>>() ==
        std::vector<std::uint32_t>(est.estimate.image().begin(), est.estimate.image().end()));

  const auto core = cli_json("kcore --graph " + inst + "/ga.edges --k 2");
  CHECK(core["members"].get<std::vector<std::uint32_t>>() == align::k_core(loaded.g_a, 2).members);

  { std::ofstream(dir / "swap.perm") << "1 0 2\n"; }
  { std::ofstream(dir / "id.perm") << "0 1 2\n"; }
  const auto dec = cli_json("decompose --pi " + (dir / "swap.perm").string() + " --pistar " +
                            (dir / "id.perm").string());
  CHECK(dec["s1_size"] == 2);
  CHECK(dec["s21_size"] == 2);
  REQUIRE(dec["cycles"].size() == 1);
  CHECK(dec["cycles"][0]["group"] == "G3");
  CHECK(dec["cycles"][0]["k"] == 2);
  CHECK(dec["cycles"][0]["count"] == 1);
  std::filesystem::remove_all(dir);
}

TEST_CASE("csv theory columns equal the theory subcommand") {
  const auto dir = scratch("theory_cols");
  const auto csv = dir / "res.csv";
  {
    std::ofstream(dir / "cfg.txt") << "mode = sweep\nn = 400\ns = 0.6\nnqs = 4, 9.5, 30\n"
                                   << "alpha = 0.4\nbeta = 0.3\ngamma = 0.2\ntrials = 2\n"
                                   << "output = " << csv.string() << "\n";
  }
  REQUIRE(cli("run --config " + (dir / "cfg.txt").string()).code == 0);
  std::ifstream in(csv);
  std::string line;
  std::getline(in, line);
  std::getline(in, line);
  const auto header = split_csv(line);
  auto col = [&](const std::string& name) {
    return static_cast<std::size_t>(std::find(header.begin(), header.end(), name) - header.begin());
  };
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    const auto cells = split_csv(line);
    const auto t = cli_json("theory --n " + cells[col("n")] + " --q " + cells[col("q")] +
                            " --s " + cells[col("s")] + " --alpha " + cells[col("alpha")] +
                            " --beta 0.3 --gamma 0.2");
    CHECK(std::stod(cells[col("nqs")]) == t["nqs"].get<double>());
    CHECK(std::stod(cells[col("kl")]) == t["kl"].get<double>());
    CHECK(std::stod(cells[col("fano_clamped")]) == t["fano_clamped"].get<double>());
    for (const std::string c : {"c1", "c2", "c3", "c4"}) {
      CHECK((cells[col("thm2_" + c)] == "1") == t["thm2_conditions"][c].get<bool>());
    }
  }
  CHECK(rows == 6);
  std::filesystem::remove_all(dir);
}

TEST_CASE("run is byte-identical across worker counts") {
  const auto dir = scratch("repro");
  {
    std::ofstream(dir / "cfg.txt") << "mode = search-small\npoints = 7:0.4:0.8\nalpha = 0.5\n"
                                   << "trials = 8\nbase_seed = 99\nworkers = 1\n"
                                   << "output = " << (dir / "a.csv").string() << "\n";
  }
  REQUIRE(cli("run --config " + (dir / "cfg.txt").string()).code == 0);
  std::filesystem::rename(dir / "a.csv", dir / "first.csv");
  REQUIRE(cli("run --config " + (dir / "cfg.txt").string()).code == 0);
  std::filesystem::rename(dir / "a.csv", dir / "second.csv");
  REQUIRE(system(("ALIGN_LAB_WORKERS=4 " + std::string(ALIGN_LAB_BIN) + " run --config " +
                  (dir / "cfg.txt").string() + " >/dev/null")
                     .c_str()) == 0);
  auto slurp = [](const std::filesystem::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
  };
  CHECK(slurp(dir / "first.csv") == slurp(dir / "second.csv"));
  CHECK(slurp(dir / "first.csv") == slurp(dir / "a.csv"));
  CHECK(nlohmann::json::parse(slurp(dir / "a.json"))["workers"] == 4);
  std::filesystem::remove_all(dir);
}
