// crsched: batch driver for the collaborative/competitive Q-learning schedulers.
//
//   crsched simulate --algorithm collaborative --epsilon 0.5 --out run.csv
//   crsched replicate --out results/
//
// Exit codes: 0 success, 1 configuration error, 2 I/O error.

#include <chrono>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "crsched/errors.hpp"
#include "crsched/harness.hpp"

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitIo = 2;

struct Flags {
  std::string config_file;
  std::optional<std::string> algorithm;
  std::optional<double> epsilon;
  std::optional<double> alpha;
  std::optional<double> gamma;
  std::optional<int> epochs;
  std::optional<int> runs;
  std::optional<std::uint64_t> seed;
  std::optional<int> rb;
  std::optional<int> pus;
  std::optional<int> sus;
  std::optional<int> jobs;
  std::optional<std::string> out;
  bool fixed_order = false;
};

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config_file, "Plain-text config file of 'key = value' lines");
  cmd->add_option("--epochs", f.epochs, "TTIs per run (default 100)");
  cmd->add_option("--runs", f.runs, "Independent runs to average (default 200)");
  cmd->add_option("--seed", f.seed, "Base seed (default 42)");
  cmd->add_option("--rb", f.rb, "Resource blocks (default 75)");
  cmd->add_option("--pus", f.pus, "Primary users (default 5)");
  cmd->add_option("--sus", f.sus, "Secondary users (default 5)");
  cmd->add_option("--alpha", f.alpha, "Learning rate (default 0.8)");
  cmd->add_option("--gamma", f.gamma, "Discount factor (default 0.9)");
  cmd->add_option("--jobs", f.jobs, "Worker threads for runs (default: all cores)");
  cmd->add_flag("--fixed-order", f.fixed_order, "Agents act in ascending id order instead of a per-TTI shuffle");
}

crsched::ExperimentConfig resolve(const Flags& f) {
  crsched::ExperimentConfig config;
  if (!f.config_file.empty()) crsched::load_config_file(f.config_file, config);
  if (f.algorithm) config.algorithm = crsched::parse_algorithm(*f.algorithm);
  if (f.epsilon) config.epsilon = *f.epsilon;
  if (f.alpha) config.alpha = *f.alpha;
  if (f.gamma) config.gamma = *f.gamma;
  if (f.epochs) config.epochs = *f.epochs;
  if (f.runs) config.runs = *f.runs;
  if (f.seed) config.base_seed = *f.seed;
  if (f.rb) config.num_rb = *f.rb;
  if (f.pus) config.num_pu = *f.pus;
  if (f.sus) config.num_su = *f.sus;
  if (f.jobs) config.jobs = *f.jobs;
  if (f.out) config.output_path = *f.out;
  if (f.fixed_order) config.shuffle_agent_order = false;
  config.validate();
  return config;
}

int simulate(const Flags& f) {
  const auto config = resolve(f);
  const auto start = std::chrono::steady_clock::now();
  const auto series = crsched::run_experiment(config);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  if (config.output_path.empty() || config.output_path == "-") {
    crsched::write_csv(std::cout, series);
  } else {
    crsched::emit_csv(series, config.output_path);
  }
  const auto s = crsched::converged_means(series, crsched::kConvergedWindow);
  std::cerr << crsched::to_string(config.algorithm) << " e=" << config.epsilon << ": converged total "
            << s.total << "% (PU " << s.pu_total << "%, SU " << s.su_total << "%), " << config.runs << " runs in "
            << secs << " s\n";
  return 0;
}

int replicate(const Flags& f) {
  if (f.algorithm || f.epsilon) {
    throw crsched::ConfigInvalid("replicate", "--algorithm/--epsilon are fixed by the scenario grid");
  }
  auto config = resolve(f);
  if (config.output_path.empty()) config.output_path = "results";
  const auto results = crsched::run_scenario_grid(config.output_path, config);
  crsched::write_summary_csv(std::cout, results);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-agent Q-learning downlink scheduler simulator"};
  app.require_subcommand(1);

  Flags flags;
  auto* sim = app.add_subcommand("simulate", "Run one scenario and write its averaged per-epoch CSV");
  add_common(sim, flags);
  sim->add_option("--algorithm", flags.algorithm, "collaborative | competitive");
  sim->add_option("--epsilon", flags.epsilon, "Exploration probability in [0, 1]");
  sim->add_option("--out", flags.out, "Output CSV path ('-' or omitted: stdout)");

  auto* rep = app.add_subcommand("replicate", "Run both algorithms at e = 0.2, 0.5, 0.8");
  add_common(rep, flags);
  rep->add_option("--out", flags.out, "Output directory (default: results)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*sim) return simulate(flags);
    return replicate(flags);
  } catch (const crsched::ConfigInvalid& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const crsched::IoError& e) {
    std::cerr << "io error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }
}
