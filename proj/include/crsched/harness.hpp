#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "crsched/action_space.hpp"
#include "crsched/metrics.hpp"
#include "crsched/scheduler.hpp"

namespace crsched {

struct ExperimentConfig {
  Algorithm algorithm = Algorithm::Collaborative;
  int num_rb = 75;
  int num_pu = 5;
  int num_su = 5;
  double alpha = kDefaultAlpha;
  double gamma = kDefaultGamma;
  double epsilon = 0.5;
  int epochs = 100;
  int runs = 200;
  std::uint64_t base_seed = 42;
  std::string output_path;
  // Worker threads for independent runs; 0 lets OpenMP decide.
  int jobs = 0;
  bool shuffle_agent_order = true;

  // Throws ConfigInvalid naming the offending field.
  void validate() const;
  CellConfig cell() const;
  SchedulerParams params() const;
};

std::string_view to_string(Algorithm algorithm);
// Throws ConfigInvalid("algorithm", ...) for unknown names.
Algorithm parse_algorithm(std::string_view name);

// Seed of run `run_index`: splitmix64(base_seed ^ splitmix64(run_index)).
// Both steps are bijections, so distinct run indices get distinct seeds.
std::uint64_t run_seed(std::uint64_t base_seed, int run_index);

// One independent run of `config.epochs` TTIs with fresh learners.
RunSeries simulate_run(const ExperimentConfig& config, int run_index);

// Reference implementation: runs one after another on the calling thread.
AggregateSeries run_experiment_serial(const ExperimentConfig& config);

// Runs in parallel (OpenMP, `config.jobs` threads) and aggregates in run-index
// order, so the result is identical to run_experiment_serial.
AggregateSeries run_experiment(const ExperimentConfig& config);

// CSV: header `epoch,user_type,user_id,pct_mean`, then per epoch one row per
// PU, one per SU and a `total` row with user_id 0. Six decimals, '\n' endings.
void write_csv(std::ostream& out, const AggregateSeries& series);
// Throws IoError.
void emit_csv(const AggregateSeries& series, const std::filesystem::path& path);
// Inverse of write_csv (runs is unknown and left 0). Throws IoError on
// malformed input.
AggregateSeries read_csv(std::istream& in, const std::string& source = "<stream>");
AggregateSeries read_csv(const std::filesystem::path& path);

// Applies one `key = value` setting. Keys: algorithm, epsilon, epochs, runs,
// seed, rb, pus, sus, alpha, gamma, out, jobs, shuffle.
void apply_setting(ExperimentConfig& config, std::string_view key, std::string_view value);

// Plain-text config: one `key = value` per line; `#` starts a comment; blank
// lines ignored. Throws ConfigInvalid (bad content) or IoError (unreadable).
void load_config(std::istream& in, ExperimentConfig& config);
void load_config_file(const std::filesystem::path& path, ExperimentConfig& config);

struct ScenarioResult {
  Algorithm algorithm = Algorithm::Collaborative;
  double epsilon = 0.0;
  AggregateSeries series;
  ConvergedSummary summary;
};

inline constexpr int kConvergedWindow = 20;
inline constexpr double kReplicationEpsilons[] = {0.2, 0.5, 0.8};

std::string scenario_file_name(Algorithm algorithm, double epsilon);

// Both algorithms x epsilon in {0.2, 0.5, 0.8}, using `base` for everything
// else. Writes `{algorithm}_e{epsilon}.csv` per scenario plus summary.csv
// into `output_dir` (created if missing).
std::vector<ScenarioResult> run_scenario_grid(const std::filesystem::path& output_dir,
                                            const ExperimentConfig& base = {});

void write_summary_csv(std::ostream& out, const std::vector<ScenarioResult>& results);

}  // namespace crsched
