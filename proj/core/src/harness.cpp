#include "align/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "align/errors.hpp"
#include "align/perm_struct.hpp"
#include "align/recovery.hpp"
#include "align/report_json.hpp"

namespace align {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

[[noreturn]] void config_error(std::size_t line, const std::string& msg) {
  throw ParameterError("config line " + std::to_string(line) + ": " + msg);
}

double parse_real(std::string_view text, std::size_t line, std::string_view key) {
  double v = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) {
    config_error(line, "bad number '" + std::string(text) + "' for " + std::string(key));
  }
  return v;
}

std::uint64_t parse_unsigned(std::string_view text, std::size_t line, std::string_view key) {
  std::uint64_t v = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) {
    config_error(line, "bad integer '" + std::string(text) + "' for " + std::string(key));
  }
  return v;
}

bool parse_bool(std::string_view text, std::size_t line, std::string_view key) {
  if (text == "true") return true;
  if (text == "false") return false;
  config_error(line, "expected true or false for " + std::string(key));
}

std::filesystem::path sibling(const std::filesystem::path& csv, std::string_view suffix) {
  auto p = csv;
  p.replace_extension();
  p += suffix;
  return p;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << content;
  out.flush();
  if (!out) throw IoError("write to " + path.string() + " failed");
}

std::string na_or(const std::optional<double>& v) {
  return v ? format_double(*v) : "NA";
}

std::string flag(bool b) { return b ? "1" : "0"; }

// Theory columns shared by all trials of a grid point.
struct PointTheory {
  TheoryReport report;
};

TrialRecord run_trial(const ExperimentConfig& config, std::size_t point, std::size_t trial,
                      const PointTheory& theory) {
  const auto start = std::chrono::steady_clock::now();
  const ModelParams& params = config.grid[point];

  TrialRecord rec;
  rec.point = point;
  rec.trial = trial;
  rec.seed = derive_seed(config.base_seed, point, trial);
  rec.params = params;
  rec.alpha = config.alpha;
  rec.nqs = theory.report.nqs;
  rec.kl = theory.report.kl;
  rec.fano_clamped = theory.report.fano_clamped;
  rec.thm2 = theory.report.thm2;

  const CorrelatedInstance inst = generate(params, rec.seed);
  const GoodnessReport good = is_good(inst.g_a, inst.g_b, inst.pi_star, params, config.alpha);
  rec.pistar_good = good.is_good;
  rec.pistar_high_degree = good.count_high_degree;
  rec.kcore_fraction =
      k_core(intersection_graph(inst.g_a, inst.g_b, inst.pi_star), params.nqs() / 2.0)
          .fraction;

  if (config.mode == ExperimentMode::kSearchSmall) {
    SearchOptions options;
    options.limit = config.search_limit;
    options.force_large = config.force_large;
    const SearchResult found = find_good(inst.g_a, inst.g_b, params, config.alpha, options);
    rec.found_good = found.found.has_value();
    rec.perms_tested = found.tested;
    if (found.found) rec.overlap = overlap(*found.found, inst.pi_star).value();
  } else if (config.mode == ExperimentMode::kMapSmall) {
    const MapResult map = map_estimate(inst.g_a, inst.g_b, config.force_large);
    rec.overlap = overlap(map.estimate, inst.pi_star).value();
    rec.perms_tested = map.tested;
  }

  rec.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rec;
}

}  // namespace

std::string_view to_string(ExperimentMode mode) {
  switch (mode) {
    case ExperimentMode::kPistarGood: return "pistar-good";
    case ExperimentMode::kSearchSmall: return "search-small";
    case ExperimentMode::kMapSmall: return "map-small";
    case ExperimentMode::kSweep: return "sweep";
  }
  return "?";
}

ExperimentMode parse_mode(std::string_view text) {
  for (auto m : {ExperimentMode::kPistarGood, ExperimentMode::kSearchSmall,
                 ExperimentMode::kMapSmall, ExperimentMode::kSweep}) {
    if (to_string(m) == text) return m;
  }
  throw ParameterError("unknown mode '" + std::string(text) + "'");
}

void ExperimentConfig::validate() const {
  if (trials < 1) throw ParameterError("config: trials must be >= 1");
  if (workers < 1) throw ParameterError("config: workers must be >= 1");
  if (!(alpha > 0.0 && alpha < 1.0)) throw ParameterError("config: alpha must lie in (0, 1)");
  if (beta.has_value() != gamma.has_value()) {
    throw ParameterError("config: beta and gamma must be given together");
  }
  if (beta && !(*beta > 0.0 && *gamma > 0.0)) {
    throw ParameterError("config: beta and gamma must be positive");
  }
  if (grid.empty()) throw ParameterError("config: no grid points (set points or n/s/nqs)");
  const bool exhaustive =
      mode == ExperimentMode::kSearchSmall || mode == ExperimentMode::kMapSmall;
  for (const auto& p : grid) {
    p.validate();
    if (p.q <= 0.0) throw ParameterError("config: every grid point needs q > 0");
    if (exhaustive && p.n > kExhaustiveLimit && !force_large) {
      throw CapacityError("config: n = " + std::to_string(p.n) + " exceeds the exhaustive"
                          " limit (set force_large = true)");
    }
  }
}

ExperimentConfig parse_config(std::string_view text) {
  ExperimentConfig cfg;
  std::map<std::string, std::size_t> seen;
  std::optional<std::size_t> grid_n;
  std::optional<double> grid_s;
  std::vector<double> grid_nqs;
  std::vector<ModelParams> points;

  std::size_t line_no = 0;
  for (std::string_view line : split(text, '\n')) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = trim(line.substr(0, hash));
    }
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) config_error(line_no, "expected key = value");
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    if (value.empty()) config_error(line_no, "empty value for " + key);
    if (seen.count(key)) config_error(line_no, "duplicate key " + key);
    seen[key] = line_no;

    if (key == "mode") {
      try {
        cfg.mode = parse_mode(value);
      } catch (const ParameterError& e) {
        config_error(line_no, e.what());
      }
    } else if (key == "points") {
      for (auto triple : split(value, ',')) {
        const auto parts = split(triple, ':');
        if (parts.size() != 3) config_error(line_no, "points entries must be n:q:s");
        points.push_back({parse_unsigned(parts[0], line_no, key),
                          parse_real(parts[1], line_no, key),
                          parse_real(parts[2], line_no, key)});
      }
    } else if (key == "n") {
      grid_n = parse_unsigned(value, line_no, key);
    } else if (key == "s") {
      grid_s = parse_real(value, line_no, key);
    } else if (key == "nqs") {
      for (auto v : split(value, ',')) grid_nqs.push_back(parse_real(v, line_no, key));
    } else if (key == "alpha") {
      cfg.alpha = parse_real(value, line_no, key);
    } else if (key == "beta") {
      cfg.beta = parse_real(value, line_no, key);
    } else if (key == "gamma") {
      cfg.gamma = parse_real(value, line_no, key);
    } else if (key == "trials") {
      cfg.trials = parse_unsigned(value, line_no, key);
    } else if (key == "base_seed") {
      cfg.base_seed = parse_unsigned(value, line_no, key);
    } else if (key == "workers") {
      cfg.workers = parse_unsigned(value, line_no, key);
    } else if (key == "output") {
      cfg.output = std::string(value);
    } else if (key == "force_large") {
      cfg.force_large = parse_bool(value, line_no, key);
    } else if (key == "search_limit") {
      cfg.search_limit = parse_unsigned(value, line_no, key);
    } else {
      config_error(line_no, "unknown key '" + key + "'");
    }
  }

  const bool any_nqs_key = grid_n || grid_s || !grid_nqs.empty();
  if (any_nqs_key && !(grid_n && grid_s && !grid_nqs.empty())) {
    throw ParameterError("config: n, s and nqs must be given together");
  }
  cfg.grid = std::move(points);
  if (any_nqs_key) {
    for (double nqs : grid_nqs) {
      const double q = nqs / (static_cast<double>(*grid_n) * *grid_s);
      cfg.grid.push_back({*grid_n, q, *grid_s});
    }
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::uint64_t derive_seed(std::uint64_t base_seed, std::uint64_t point_index,
                          std::uint64_t trial_index) {
  return splitmix64(splitmix64(splitmix64(base_seed) ^ point_index) ^ trial_index);
}

const std::vector<std::string>& csv_columns() {
  static const std::vector<std::string> columns = {
      "point",   "trial",        "seed",    "n",       "q",
      "s",       "alpha",        "nqs",     "kl",      "fano_clamped",
      "thm2_c1", "thm2_c2",      "thm2_c3", "thm2_c4", "pistar_good",
      "pistar_high_degree",      "kcore_fraction",     "found_good",
      "overlap", "perms_tested"};
  return columns;
}

std::string format_double(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

std::vector<TrialRecord> run_trials(const ExperimentConfig& config, std::size_t workers) {
  config.validate();
  std::vector<PointTheory> theory;
  theory.reserve(config.grid.size());
  for (const auto& p : config.grid) {
    theory.push_back({evaluate_theory(p, config.alpha, config.beta, config.gamma)});
  }

  const std::size_t total = config.grid.size() * config.trials;
  std::vector<TrialRecord> records(total);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    while (true) {
      const std::size_t task = next.fetch_add(1);
      if (task >= total) return;
      const std::size_t point = task / config.trials;
      const std::size_t trial = task % config.trials;
      try {
        records[task] = run_trial(config, point, trial, theory[point]);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(total);
      }
    }
  };

  workers = std::max<std::size_t>(1, std::min(workers, total));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t i = 0; i < workers; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  std::sort(records.begin(), records.end(), [](const TrialRecord& a, const TrialRecord& b) {
    return std::tie(a.point, a.trial) < std::tie(b.point, b.trial);
  });
  return records;
}

std::vector<PointSummary> summarize(const ExperimentConfig& config,
                                    const std::vector<TrialRecord>& records) {
  std::vector<PointSummary> out(config.grid.size());
  std::vector<double> overlap_sum(config.grid.size(), 0.0);
  std::vector<std::size_t> overlap_count(config.grid.size(), 0);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i].point = i;
    out[i].params = config.grid[i];
    out[i].alpha = config.alpha;
  }
  for (const auto& r : records) {
    auto& s = out[r.point];
    ++s.trials;
    s.pistar_good += r.pistar_good;
    s.found_good += r.found_good.value_or(false);
    s.fano_clamped = r.fano_clamped;
    if (r.thm2) s.thm2_all = r.thm2->all();
    if (r.overlap) {
      overlap_sum[r.point] += *r.overlap;
      ++overlap_count[r.point];
    }
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (overlap_count[i]) {
      out[i].mean_overlap = overlap_sum[i] / static_cast<double>(overlap_count[i]);
    }
  }
  return out;
}

std::string format_csv(const std::vector<TrialRecord>& records) {
  std::ostringstream os;
  os << kCsvVersionLine << '\n';
  const auto& cols = csv_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
  os << '\n';
  for (const auto& r : records) {
    auto cond = [&](bool Thm2Conditions::*field) {
      return r.thm2 ? flag((*r.thm2).*field) : std::string("NA");
    };
    os << r.point << ',' << r.trial << ',' << r.seed << ',' << r.params.n << ','
       << format_double(r.params.q) << ',' << format_double(r.params.s) << ','
       << format_double(r.alpha) << ',' << format_double(r.nqs) << ','
       << format_double(r.kl) << ',' << format_double(r.fano_clamped) << ','
       << cond(&Thm2Conditions::c1) << ',' << cond(&Thm2Conditions::c2) << ','
       << cond(&Thm2Conditions::c3) << ',' << cond(&Thm2Conditions::c4) << ','
       << flag(r.pistar_good) << ',' << r.pistar_high_degree << ','
       << format_double(r.kcore_fraction) << ','
       << (r.found_good ? flag(*r.found_good) : "NA") << ',' << na_or(r.overlap) << ','
       << (r.perms_tested ? std::to_string(*r.perms_tested) : "NA") << '\n';
  }
  return os.str();
}

std::string format_summary_csv(const std::vector<PointSummary>& summaries) {
  std::ostringstream os;
  os << "# align-lab summary v1\n"
     << "point,n,q,s,alpha,nqs,trials,pistar_good,pistar_good_freq,found_good,"
        "mean_overlap,thm2_all,fano_clamped\n";
  for (const auto& s : summaries) {
    os << s.point << ',' << s.params.n << ',' << format_double(s.params.q) << ','
       << format_double(s.params.s) << ',' << format_double(s.alpha) << ','
       << format_double(s.params.nqs()) << ',' << s.trials << ',' << s.pistar_good << ','
       << format_double(s.pistar_good_frequency()) << ',' << s.found_good << ','
       << na_or(s.mean_overlap) << ','
       << (s.thm2_all ? flag(*s.thm2_all) : "NA") << ','
       << format_double(s.fano_clamped) << '\n';
  }
  return os.str();
}

std::string format_config_json(const ExperimentConfig& config, std::size_t workers) {
  Json grid = Json::array();
  for (const auto& p : config.grid) grid.push_back(to_json(p));
  Json j{{"csv_version", std::string(kCsvVersionLine)},
         {"mode", std::string(to_string(config.mode))},
         {"grid", std::move(grid)},
         {"alpha", config.alpha},
         {"beta", config.beta ? Json(*config.beta) : Json(nullptr)},
         {"gamma", config.gamma ? Json(*config.gamma) : Json(nullptr)},
         {"trials", config.trials},
         {"base_seed", config.base_seed},
         {"workers", workers},
         {"output", config.output.string()},
         {"force_large", config.force_large},
         {"search_limit",
          config.search_limit ? Json(*config.search_limit) : Json(nullptr)},
         {"columns", csv_columns()}};
  return j.dump(2) + "\n";
}

std::string format_timing_csv(const std::vector<TrialRecord>& records) {
  std::ostringstream os;
  os << "point,trial,wall_seconds\n";
  for (const auto& r : records) {
    os << r.point << ',' << r.trial << ',' << format_double(r.wall_seconds) << '\n';
  }
  return os.str();
}

std::size_t resolve_workers(const ExperimentConfig& config) {
  if (const char* env = std::getenv("ALIGN_LAB_WORKERS"); env && *env) {
    std::uint64_t v = 0;
    const std::string_view text(env);
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size() || v < 1) {
      throw ParameterError("ALIGN_LAB_WORKERS must be a positive integer");
    }
    return v;
  }
  return config.workers;
}

RunOutputs run(const ExperimentConfig& config) {
  config.validate();
  RunOutputs out;
  out.workers = resolve_workers(config);
  out.csv = config.output;
  out.summary = sibling(config.output, ".summary.csv");
  out.config_json = sibling(config.output, ".json");
  out.timing = sibling(config.output, ".timing.csv");

  if (const auto parent = out.csv.parent_path(); !parent.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(parent, ec);
    if (ec) throw IoError("cannot create " + parent.string() + ": " + ec.message());
  }

  out.records = run_trials(config, out.workers);
  out.summaries = summarize(config, out.records);
  write_file(out.csv, format_csv(out.records));
  write_file(out.summary, format_summary_csv(out.summaries));
  write_file(out.config_json, format_config_json(config, out.workers));
  write_file(out.timing, format_timing_csv(out.records));
  return out;
}

}  // namespace align
