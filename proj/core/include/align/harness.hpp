#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "align/model.hpp"
#include "align/theory.hpp"

namespace align {

enum class ExperimentMode { kPistarGood, kSearchSmall, kMapSmall, kSweep };

std::string_view to_string(ExperimentMode mode);
ExperimentMode parse_mode(std::string_view text);

/// Parsed experiment configuration.
///
/// The on-disk format is flat `key = value` lines; `#` starts a comment and
/// unknown keys are rejected. Keys:
///
///   mode         pistar-good | search-small | map-small | sweep
///   points       comma-separated n:q:s triples
///   n, s, nqs    alternative grid: fixed n and s, a comma-separated list of
///                nqs values (q = nqs / (n s) for each)
///   alpha        target overlap, in (0, 1)
///   beta, gamma  optional exponents for the sparsity conditions
///   trials       trials per grid point (>= 1)
///   base_seed    64-bit unsigned integer
///   workers      thread count (>= 1); ALIGN_LAB_WORKERS overrides it
///   output       CSV path; sidecars are derived from it
///   force_large  true | false, allow n > 10 in exhaustive modes
///   search_limit optional cap on permutations tested per search
struct ExperimentConfig {
  ExperimentMode mode = ExperimentMode::kPistarGood;
  std::vector<ModelParams> grid;
  double alpha = 0.5;
  std::optional<double> beta;
  std::optional<double> gamma;
  std::size_t trials = 1;
  std::uint64_t base_seed = 0;
  std::size_t workers = 1;
  std::filesystem::path output = "results.csv";
  bool force_large = false;
  std::optional<std::uint64_t> search_limit;

  /// Throws ParameterError, or CapacityError for oversized exhaustive runs.
  void validate() const;
};

ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::filesystem::path& path);

/// splitmix64(splitmix64(splitmix64(base_seed) ^ point_index) ^ trial_index).
/// Each stage is a bijection, so for a fixed (base_seed, point_index)
/// distinct trial indices always give distinct seeds.
std::uint64_t derive_seed(std::uint64_t base_seed, std::uint64_t point_index,
                          std::uint64_t trial_index);

struct TrialRecord {
  std::size_t point = 0;
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  ModelParams params;
  double alpha = 0.0;

  double nqs = 0.0;
  double kl = 0.0;
  double fano_clamped = 0.0;
  std::optional<Thm2Conditions> thm2;

  bool pistar_good = false;
  std::size_t pistar_high_degree = 0;
  double kcore_fraction = 0.0;     // (nqs/2)-core of the pi* intersection graph
  std::optional<bool> found_good;  // search-small
  std::optional<double> overlap;   // search-small (when found) and map-small
  std::optional<std::uint64_t> perms_tested;

  double wall_seconds = 0.0;  // not part of the CSV
};

struct PointSummary {
  std::size_t point = 0;
  ModelParams params;
  double alpha = 0.0;
  std::size_t trials = 0;
  std::size_t pistar_good = 0;
  std::size_t found_good = 0;
  std::optional<double> mean_overlap;
  std::optional<bool> thm2_all;
  double fano_clamped = 0.0;

  double pistar_good_frequency() const {
    return trials ? static_cast<double>(pistar_good) / static_cast<double>(trials) : 0.0;
  }
};

inline constexpr std::string_view kCsvVersionLine = "# align-lab csv v1";

/// Column order of the trial CSV.
const std::vector<std::string>& csv_columns();

/// Runs every (point, trial) pair on `workers` threads. Results are sorted
/// by (point, trial) and do not depend on the worker count.
std::vector<TrialRecord> run_trials(const ExperimentConfig& config, std::size_t workers);

std::vector<PointSummary> summarize(const ExperimentConfig& config,
                                    const std::vector<TrialRecord>& records);

std::string format_csv(const std::vector<TrialRecord>& records);
std::string format_summary_csv(const std::vector<PointSummary>& summaries);
std::string format_config_json(const ExperimentConfig& config, std::size_t workers);
std::string format_timing_csv(const std::vector<TrialRecord>& records);

/// Shortest round-trip decimal representation.
std::string format_double(double value);

struct RunOutputs {
  std::filesystem::path csv;
  std::filesystem::path summary;
  std::filesystem::path config_json;
  std::filesystem::path timing;
  std::size_t workers = 1;
  std::vector<TrialRecord> records;
  std::vector<PointSummary> summaries;
};

/// Worker count after the ALIGN_LAB_WORKERS override.
std::size_t resolve_workers(const ExperimentConfig& config);

/// Validates, executes and writes config.output plus the .summary.csv,
/// .json and .timing.csv sidecars next to it.
RunOutputs run(const ExperimentConfig& config);

}  // namespace align
