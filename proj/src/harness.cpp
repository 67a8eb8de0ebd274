#include "crsched/harness.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "crsched/errors.hpp"
#include "crsched/random.hpp"

namespace crsched {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <class T>
T parse_number(std::string_view field, std::string_view text) {
  text = trim(text);
  T value{};
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end || text.empty()) {
    throw ConfigInvalid(std::string(field), "cannot parse '" + std::string(text) + "'");
  }
  return value;
}

bool parse_bool(std::string_view field, std::string_view text) {
  text = trim(text);
  if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
  if (text == "false" || text == "0" || text == "no" || text == "off") return false;
  throw ConfigInvalid(std::string(field), "expected a boolean, got '" + std::string(text) + "'");
}

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::string format_epsilon(double epsilon) {
  std::ostringstream os;
  os << epsilon;
  return os.str();
}

}  // namespace

void ExperimentConfig::validate() const {
  cell().validate();
  params().validate();
  if (epochs < 0) throw ConfigInvalid("epochs", "must be non-negative");
  if (runs < 1) throw ConfigInvalid("runs", "must be positive");
  if (jobs < 0) throw ConfigInvalid("jobs", "must be non-negative");
}

CellConfig ExperimentConfig::cell() const {
  return CellConfig{.num_rb = num_rb, .num_pu = num_pu, .num_su = num_su, .rb_capacity_units = 1.0};
}

SchedulerParams ExperimentConfig::params() const {
  return SchedulerParams{.algorithm = algorithm,
                         .epsilon = epsilon,
                         .alpha = alpha,
                         .gamma = gamma,
                         .shuffle_agent_order = shuffle_agent_order};
}

std::string_view to_string(Algorithm algorithm) {
  return algorithm == Algorithm::Collaborative ? "collaborative" : "competitive";
}

Algorithm parse_algorithm(std::string_view name) {
  name = trim(name);
  if (name == "collaborative") return Algorithm::Collaborative;
  if (name == "competitive") return Algorithm::Competitive;
  throw ConfigInvalid("algorithm", "expected 'collaborative' or 'competitive', got '" + std::string(name) + "'");
}

std::uint64_t run_seed(std::uint64_t base_seed, int run_index) {
  return splitmix64(base_seed ^ splitmix64(static_cast<std::uint64_t>(run_index)));
}

RunSeries simulate_run(const ExperimentConfig& config, int run_index) {
  const CellConfig cell = config.cell();
  Simulation sim(cell, config.params(), run_seed(config.base_seed, run_index));
  RunSeries series;
  series.reserve(static_cast<std::size_t>(config.epochs));
  for (int epoch = 1; epoch <= config.epochs; ++epoch) series.push_back(percentages(sim.step(), cell, epoch));
  return series;
}

AggregateSeries run_experiment_serial(const ExperimentConfig& config) {
  config.validate();
  std::vector<RunSeries> runs;
  runs.reserve(static_cast<std::size_t>(config.runs));
  for (int r = 0; r < config.runs; ++r) runs.push_back(simulate_run(config, r));
  return aggregate(runs);
}

AggregateSeries run_experiment(const ExperimentConfig& config) {
  config.validate();
  std::vector<RunSeries> runs(static_cast<std::size_t>(config.runs));
#ifdef _OPENMP
  const int threads = config.jobs > 0 ? config.jobs : omp_get_max_threads();
  // Exceptions must not escape an OpenMP region; keep the first one.
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (int r = 0; r < config.runs; ++r) {
    try {
      runs[static_cast<std::size_t>(r)] = simulate_run(config, r);
    } catch (...) {
#pragma omp critical(crsched_run_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
#else
  for (int r = 0; r < config.runs; ++r) runs[static_cast<std::size_t>(r)] = simulate_run(config, r);
#endif
  return aggregate(runs);
}

void write_csv(std::ostream& out, const AggregateSeries& series) {
  out << "epoch,user_type,user_id,pct_mean\n";
  for (const EpochRecord& rec : series.epochs) {
    for (std::size_t i = 0; i < rec.pu_pct.size(); ++i) {
      out << rec.epoch << ",pu," << i << ',' << fixed6(rec.pu_pct[i]) << '\n';
    }
    for (std::size_t i = 0; i < rec.su_pct.size(); ++i) {
      out << rec.epoch << ",su," << i << ',' << fixed6(rec.su_pct[i]) << '\n';
    }
    out << rec.epoch << ",total,0," << fixed6(rec.total) << '\n';
  }
}

void emit_csv(const AggregateSeries& series, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(path.string(), "cannot open for writing");
  write_csv(out, series);
  out.flush();
  if (!out) throw IoError(path.string(), "write failed");
}

AggregateSeries read_csv(std::istream& in, const std::string& source) {
  AggregateSeries series;
  std::string line;
  if (!std::getline(in, line) || line != "epoch,user_type,user_id,pct_mean") {
    throw IoError(source, "missing or unexpected CSV header");
  }
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string_view> fields;
    std::string_view rest = line;
    for (std::size_t pos; (pos = rest.find(',')) != std::string_view::npos; rest.remove_prefix(pos + 1)) {
      fields.push_back(rest.substr(0, pos));
    }
    fields.push_back(rest);
    if (fields.size() != 4) throw IoError(source, "line " + std::to_string(line_no) + ": expected 4 fields");

    int epoch = 0;
    double pct = 0.0;
    try {
      epoch = parse_number<int>("epoch", fields[0]);
      parse_number<int>("user_id", fields[2]);
      pct = parse_number<double>("pct_mean", fields[3]);
    } catch (const ConfigInvalid& e) {
      throw IoError(source, "line " + std::to_string(line_no) + ": " + e.what());
    }
    if (series.epochs.empty() || series.epochs.back().epoch != epoch) {
      series.epochs.push_back(EpochRecord{.epoch = epoch, .pu_pct = {}, .su_pct = {}, .total = 0.0});
    }
    EpochRecord& rec = series.epochs.back();
    if (fields[1] == "pu") {
      rec.pu_pct.push_back(pct);
    } else if (fields[1] == "su") {
      rec.su_pct.push_back(pct);
    } else if (fields[1] == "total") {
      rec.total = pct;
    } else {
      throw IoError(source, "line " + std::to_string(line_no) + ": unknown user_type '" + std::string(fields[1]) + "'");
    }
  }
  return series;
}

AggregateSeries read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path.string(), "cannot open for reading");
  return read_csv(in, path.string());
}

void apply_setting(ExperimentConfig& config, std::string_view key, std::string_view value) {
  key = trim(key);
  value = trim(value);
  if (key == "algorithm") {
    config.algorithm = parse_algorithm(value);
  } else if (key == "epsilon") {
    config.epsilon = parse_number<double>(key, value);
  } else if (key == "alpha") {
    config.alpha = parse_number<double>(key, value);
  } else if (key == "gamma") {
    config.gamma = parse_number<double>(key, value);
  } else if (key == "epochs") {
    config.epochs = parse_number<int>(key, value);
  } else if (key == "runs") {
    config.runs = parse_number<int>(key, value);
  } else if (key == "seed") {
    config.base_seed = parse_number<std::uint64_t>(key, value);
  } else if (key == "rb") {
    config.num_rb = parse_number<int>(key, value);
  } else if (key == "pus") {
    config.num_pu = parse_number<int>(key, value);
  } else if (key == "sus") {
    config.num_su = parse_number<int>(key, value);
  } else if (key == "jobs") {
    config.jobs = parse_number<int>(key, value);
  } else if (key == "out") {
    config.output_path = std::string(value);
  } else if (key == "shuffle") {
    config.shuffle_agent_order = parse_bool(key, value);
  } else {
    throw ConfigInvalid(std::string(key), "unknown setting");
  }
}

void load_config(std::istream& in, ExperimentConfig& config) {
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view text = line;
    if (auto hash = text.find('#'); hash != std::string_view::npos) text = text.substr(0, hash);
    text = trim(text);
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigInvalid("line " + std::to_string(line_no), "expected 'key = value'");
    }
    apply_setting(config, text.substr(0, eq), text.substr(eq + 1));
  }
}

void load_config_file(const std::filesystem::path& path, ExperimentConfig& config) {
  std::ifstream in(path);
  if (!in) throw IoError(path.string(), "cannot open config file");
  load_config(in, config);
}

std::string scenario_file_name(Algorithm algorithm, double epsilon) {
  return std::string(to_string(algorithm)) + "_e" + format_epsilon(epsilon) + ".csv";
}

void write_summary_csv(std::ostream& out, const std::vector<ScenarioResult>& results) {
  std::size_t num_pu = 0;
  std::size_t num_su = 0;
  for (const auto& r : results) {
    num_pu = std::max(num_pu, r.summary.pu_pct.size());
    num_su = std::max(num_su, r.summary.su_pct.size());
  }
  out << "algorithm,epsilon,total_pct,pu_total_pct,su_total_pct,pu_jain,su_jain";
  for (std::size_t i = 0; i < num_pu; ++i) out << ",pu" << i << "_pct";
  for (std::size_t i = 0; i < num_su; ++i) out << ",su" << i << "_pct";
  out << '\n';
  for (const auto& r : results) {
    const auto& s = r.summary;
    out << to_string(r.algorithm) << ',' << format_epsilon(r.epsilon) << ',' << fixed6(s.total) << ','
        << fixed6(s.pu_total) << ',' << fixed6(s.su_total) << ',' << fixed6(s.pu_jain) << ',' << fixed6(s.su_jain);
    for (std::size_t i = 0; i < num_pu; ++i) out << ',' << fixed6(i < s.pu_pct.size() ? s.pu_pct[i] : 0.0);
    for (std::size_t i = 0; i < num_su; ++i) out << ',' << fixed6(i < s.su_pct.size() ? s.su_pct[i] : 0.0);
    out << '\n';
  }
}

std::vector<ScenarioResult> run_scenario_grid(const std::filesystem::path& output_dir, const ExperimentConfig& base) {
  std::error_code ec;
  std::filesystem::create_directories(output_dir, ec);
  if (ec) throw IoError(output_dir.string(), "cannot create directory: " + ec.message());

  std::vector<ScenarioResult> results;
  for (Algorithm algorithm : {Algorithm::Collaborative, Algorithm::Competitive}) {
    for (double epsilon : kReplicationEpsilons) {
      ExperimentConfig config = base;
      config.algorithm = algorithm;
      config.epsilon = epsilon;
      ScenarioResult result{.algorithm = algorithm, .epsilon = epsilon, .series = run_experiment(config), .summary = {}};
      result.summary = converged_means(result.series, kConvergedWindow);
      emit_csv(result.series, output_dir / scenario_file_name(algorithm, epsilon));
      results.push_back(std::move(result));
    }
  }

  const auto summary_path = output_dir / "summary.csv";
  std::ofstream out(summary_path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(summary_path.string(), "cannot open for writing");
  write_summary_csv(out, results);
  out.flush();
  if (!out) throw IoError(summary_path.string(), "write failed");
  return results;
}

}  // namespace crsched
