#include <charconv>
#include <cmath>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <functional>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "align/align.hpp"

namespace {

using align::Json;

enum ExitCode : int {
  kOk = 0,
  kIoFailure = 1,
  kValidation = 2,
  kCapacity = 3,
};

void emit(const Json& j) { std::cout << j.dump(2) << '\n'; }

double parse_real(const std::string& text, const std::string& name) {
  double v = 0.0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) throw CLI::ValidationError(name, "not a number: " + text);
  return v;
}

// Parsed with from_chars so that a shortest round-trip decimal maps back to
// the identical double.
CLI::Option* add_real(CLI::App* cmd, const std::string& name, double& target,
                      const std::string& desc) {
  return cmd->add_option_function<std::string>(
      name, [&target, name](const std::string& text) { target = parse_real(text, name); },
      desc);
}

struct ModelFlags {
  std::size_t n = 0;
  double q = 0.0;
  double s = 0.0;

  void add(CLI::App* cmd) {
    cmd->add_option("--n", n, "Number of nodes")->required();
    add_real(cmd, "--q", q, "Marginal edge density")->required();
    add_real(cmd, "--s", s, "Retention probability")->required();
  }

  align::ModelParams params() const {
    align::ModelParams p{n, q, s};
    p.validate();
    return p;
  }
};

std::optional<double> opt(const CLI::Option* flag, double value) {
  return flag->count() ? std::optional<double>(value) : std::nullopt;
}

void require_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw align::ParameterError("alpha must be in (0, 1)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Correlated Erdos-Renyi graph alignment lab"};
  app.require_subcommand(1);
  std::function<void()> action;

  // run
  auto* run = app.add_subcommand("run", "Run a Monte Carlo experiment from a config file");
  std::filesystem::path config_path;
  run->add_option("--config", config_path, "Experiment config")->required();
  run->callback([&] {
    action = [&] {
      const auto config = align::load_config(config_path);
      const auto out = align::run(config);
      emit(Json{{"csv", out.csv.string()},
                {"summary", out.summary.string()},
                {"config", out.config_json.string()},
                {"timing", out.timing.string()},
                {"workers", out.workers},
                {"rows", out.records.size()}});
    };
  });

  // gen
  auto* gen = app.add_subcommand("gen", "Sample one correlated instance");
  ModelFlags gen_model;
  gen_model.add(gen);
  std::uint64_t gen_seed = 0;
  std::filesystem::path gen_out;
  gen->add_option("--seed", gen_seed, "RNG seed")->required();
  gen->add_option("--out", gen_out, "Output directory")->required();
  gen->callback([&] {
    action = [&] {
      const auto inst = align::generate(gen_model.params(), gen_seed);
      align::save_instance(gen_out, inst);
      emit(Json{{"dir", gen_out.string()},
                {"params", align::to_json(inst.params)},
                {"seed", inst.seed},
                {"edges_a", inst.g_a.num_edges()},
                {"edges_b", inst.g_b.num_edges()}});
    };
  });

  // check-good
  auto* check = app.add_subcommand("check-good", "Goodness report for a permutation");
  std::filesystem::path check_instance, check_pi;
  double check_alpha = 0.0;
  check->add_option("--instance", check_instance, "Instance directory")->required();
  check->add_option("--pi", check_pi, "Permutation file")->required();
  add_real(check, "--alpha", check_alpha, "Target overlap")->required();
  check->callback([&] {
    action = [&] {
      require_alpha(check_alpha);
      const auto inst = align::load_instance(check_instance);
      const auto pi = align::load_permutation(check_pi);
      if (pi.size() != inst.params.n) throw align::ParameterError("permutation size mismatch");
      emit(align::to_json(align::is_good(inst.g_a, inst.g_b, pi, inst.params, check_alpha)));
    };
  });

  // search
  auto* search = app.add_subcommand("search", "Exhaustive search for a good permutation");
  std::filesystem::path search_instance;
  double search_alpha = 0.0;
  bool search_force = false;
  std::uint64_t search_limit = 0;
  search->add_option("--instance", search_instance, "Instance directory")->required();
  add_real(search, "--alpha", search_alpha, "Target overlap")->required();
  search->add_flag("--force-large", search_force, "Allow n > 10");
  auto* search_limit_flag =
      search->add_option("--limit", search_limit, "Maximum permutations to test");
  search->callback([&] {
    action = [&] {
      require_alpha(search_alpha);
      const auto inst = align::load_instance(search_instance);
      align::SearchOptions options;
      options.force_large = search_force;
      if (search_limit_flag->count()) options.limit = search_limit;
      const auto result =
          align::find_good(inst.g_a, inst.g_b, inst.params, search_alpha, options);
      Json j{{"found", result.found.has_value()}, {"tested", result.tested}};
      if (result.found) {
        j["pi"] = align::to_json(*result.found);
        j["overlap"] = align::overlap(*result.found, inst.pi_star).value();
      } else {
        j["pi"] = nullptr;
        j["overlap"] = nullptr;
      }
      emit(j);
    };
  });

  // map
  auto* map = app.add_subcommand("map", "Exhaustive MAP estimate");
  std::filesystem::path map_instance;
  bool map_force = false;
  map->add_option("--instance", map_instance, "Instance directory")->required();
  map->add_flag("--force-large", map_force, "Allow n > 10");
  map->callback([&] {
    action = [&] {
      const auto inst = align::load_instance(map_instance);
      const auto result = align::map_estimate(inst.g_a, inst.g_b, map_force);
      emit(Json{{"pi", align::to_json(result.estimate)},
                {"objective", result.objective},
                {"tested", result.tested},
                {"overlap", align::overlap(result.estimate, inst.pi_star).value()}});
    };
  });

  // kcore
  auto* kcore = app.add_subcommand("kcore", "k-core of a graph file");
  std::filesystem::path kcore_graph;
  double kcore_k = 0.0;
  kcore->add_option("--graph", kcore_graph, "Graph file")->required();
  add_real(kcore, "--k", kcore_k, "Minimum degree")->required();
  kcore->callback([&] {
    action = [&] { emit(align::to_json(align::k_core(align::load_graph(kcore_graph), kcore_k))); };
  });

  // decompose
  auto* dec = app.add_subcommand("decompose", "Pair-cycle census of pi o pistar^-1");
  std::filesystem::path dec_pi, dec_pistar;
  dec->add_option("--pi", dec_pi, "Permutation file")->required();
  dec->add_option("--pistar", dec_pistar, "Reference permutation file")->required();
  dec->callback([&] {
    action = [&] {
      const auto pi = align::load_permutation(dec_pi);
      const auto pistar = align::load_permutation(dec_pistar);
      if (pi.size() != pistar.size()) throw align::ParameterError("permutation size mismatch");
      emit(align::census_json(align::decompose(pi, pistar)));
    };
  });

  // theory
  auto* theory = app.add_subcommand("theory", "Closed-form report at (n, q, s, alpha)");
  ModelFlags theory_model;
  theory_model.add(theory);
  double theory_alpha = 0.0, theory_beta = 0.0, theory_gamma = 0.0;
  add_real(theory, "--alpha", theory_alpha, "Target overlap")->required();
  auto* beta_flag = add_real(theory, "--beta", theory_beta, "Sparsity exponent");
  auto* gamma_flag = add_real(theory, "--gamma", theory_gamma, "Sparsity exponent");
  beta_flag->needs(gamma_flag);
  gamma_flag->needs(beta_flag);
  theory->callback([&] {
    action = [&] {
      require_alpha(theory_alpha);
      emit(align::to_json(align::evaluate_theory(theory_model.params(), theory_alpha,
                                                 opt(beta_flag, theory_beta),
                                                 opt(gamma_flag, theory_gamma))));
    };
  });

  // fano
  auto* fano = app.add_subcommand("fano", "Fano lower bound on the error probability");
  ModelFlags fano_model;
  fano_model.add(fano);
  double fano_alpha = 0.0;
  add_real(fano, "--alpha", fano_alpha, "Target overlap")->required();
  fano->callback([&] {
    action = [&] {
      require_alpha(fano_alpha);
      emit(align::to_json(align::fano_bound(fano_model.params(), fano_alpha)));
    };
  });

  // psi
  auto* psi = app.add_subcommand("psi", "Poisson upper tail P(Po(mu) >= j)");
  double psi_j = 0.0, psi_mu = 0.0;
  add_real(psi, "--j", psi_j, "Tail index")->required();
  add_real(psi, "--mu", psi_mu, "Poisson mean")->required();
  psi->callback([&] {
    action = [&] {
      emit(Json{{"j", psi_j}, {"mu", psi_mu}, {"psi", align::psi(psi_j, psi_mu)}});
    };
  });

  // ck
  auto* ck = app.add_subcommand("ck", "k-core emergence threshold c_k");
  double ck_k = 0.0;
  add_real(ck, "--k", ck_k, "Core order (>= 3)")->required();
  ck->callback([&] {
    action = [&] {
      const auto r = align::c_k(ck_k);
      emit(Json{{"k", ck_k}, {"c_k", r.value}, {"argmin", r.argmin}});
    };
  });

  // muk
  auto* muk = app.add_subcommand("muk", "Largest root mu_k(lambda)");
  double muk_k = 0.0, muk_lambda = 0.0;
  add_real(muk, "--k", muk_k, "Core order (>= 3)")->required();
  add_real(muk, "--lambda", muk_lambda, "Mean degree")->required();
  muk->callback([&] {
    action = [&] {
      const double mu = align::mu_k(muk_k, muk_lambda);
      emit(Json{{"k", muk_k},
                {"lambda", muk_lambda},
                {"mu", mu},
                {"core_fraction", align::psi(muk_k, mu)}});
    };
  });

  // mgf
  auto* mgf = app.add_subcommand("mgf", "MGF of the cyclic sum Z_k");
  std::size_t mgf_k = 0;
  double mgf_t = 0.0, mgf_q = 0.0, mgf_s = 0.0;
  mgf->add_option("--k-pairs", mgf_k, "Cycle length")->required();
  add_real(mgf, "--t", mgf_t, "MGF argument (>= 0)")->required();
  add_real(mgf, "--q", mgf_q, "Marginal edge density")->required();
  add_real(mgf, "--s", mgf_s, "Retention probability")->required();
  mgf->callback([&] {
    action = [&] {
      align::ModelParams p{2, mgf_q, mgf_s};
      p.validate();
      emit(Json{{"k_pairs", mgf_k},
                {"t", mgf_t},
                {"mgf", align::mgf_zk(mgf_k, mgf_t, p)},
                {"log_mgf", align::log_mgf_zk(mgf_k, mgf_t, p)}});
    };
  });

  // zeta
  auto* zeta = app.add_subcommand("zeta", "Chernoff optimum z* and zeta");
  double zeta_tau = 0.0, zeta_q1 = 0.0, zeta_q2 = 0.0;
  add_real(zeta, "--tau", zeta_tau, "Threshold (> 0)")->required();
  add_real(zeta, "--q1", zeta_q1, "Linear coefficient (>= 0)")->required();
  add_real(zeta, "--q2", zeta_q2, "Quadratic coefficient (> 0)")->required();
  zeta->callback([&] {
    action = [&] {
      const auto r = align::chernoff_zeta(zeta_tau, zeta_q1, zeta_q2);
      emit(Json{{"zeta", r.zeta},
                {"z_star", r.z_star},
                {"residual", r.residual},
                {"objective", r.objective}});
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kValidation;
  }

  try {
    action();
  } catch (const align::CapacityError& e) {
    std::cerr << "capacity error: " << e.what() << '\n';
    return kCapacity;
  } catch (const align::IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kIoFailure;
  } catch (const align::ParameterError& e) {
    std::cerr << "invalid parameter: " << e.what() << '\n';
    return kValidation;
  } catch (const align::DomainError& e) {
    std::cerr << "domain error: " << e.what() << '\n';
    return kValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIoFailure;
  }
  return kOk;
}
