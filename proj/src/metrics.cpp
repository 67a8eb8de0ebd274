#include "crsched/metrics.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "crsched/errors.hpp"

namespace crsched {

double jain_index(std::span<const double> throughputs) {
  if (throughputs.empty()) throw EmptyInput("jain_index: empty throughput sequence");
  double sum = 0.0;
  double sum_sq = 0.0;
  for (double t : throughputs) {
    sum += t;
    sum_sq += t * t;
  }
  if (sum_sq == 0.0) return 0.0;
  return (sum * sum) / (static_cast<double>(throughputs.size()) * sum_sq);
}

double EpochRecord::pu_total() const { return std::accumulate(pu_pct.begin(), pu_pct.end(), 0.0); }
double EpochRecord::su_total() const { return std::accumulate(su_pct.begin(), su_pct.end(), 0.0); }

EpochRecord percentages(const TtiOutcome& outcome, const CellConfig& config, int epoch) {
  EpochRecord rec;
  rec.epoch = epoch;
  const double capacity = config.total_capacity();
  auto pct = [&](int blocks) { return capacity > 0.0 ? blocks * config.rb_capacity_units / capacity * 100.0 : 0.0; };
  for (int b : outcome.pu_blocks) rec.pu_pct.push_back(pct(b));
  for (int b : outcome.su_blocks) rec.su_pct.push_back(pct(b));
  rec.total = rec.pu_total() + rec.su_total();
  return rec;
}

AggregateSeries aggregate(std::span<const RunSeries> runs) {
  AggregateSeries out;
  out.runs = static_cast<int>(runs.size());
  if (runs.empty()) return out;

  const RunSeries& first = runs.front();
  for (const RunSeries& run : runs) {
    if (run.size() != first.size()) {
      throw LengthMismatch("run series lengths differ: " + std::to_string(run.size()) + " vs " +
                           std::to_string(first.size()));
    }
    for (std::size_t e = 0; e < run.size(); ++e) {
      if (run[e].pu_pct.size() != first[e].pu_pct.size() || run[e].su_pct.size() != first[e].su_pct.size()) {
        throw LengthMismatch("user counts differ at epoch " + std::to_string(run[e].epoch));
      }
    }
  }

  const double n = static_cast<double>(runs.size());
  out.epochs.reserve(first.size());
  for (std::size_t e = 0; e < first.size(); ++e) {
    EpochRecord mean;
    mean.epoch = first[e].epoch;
    mean.pu_pct.assign(first[e].pu_pct.size(), 0.0);
    mean.su_pct.assign(first[e].su_pct.size(), 0.0);
    for (const RunSeries& run : runs) {
      const EpochRecord& r = run[e];
      for (std::size_t i = 0; i < r.pu_pct.size(); ++i) mean.pu_pct[i] += r.pu_pct[i];
      for (std::size_t i = 0; i < r.su_pct.size(); ++i) mean.su_pct[i] += r.su_pct[i];
      mean.total += r.total;
    }
    for (double& v : mean.pu_pct) v /= n;
    for (double& v : mean.su_pct) v /= n;
    mean.total /= n;
    out.epochs.push_back(std::move(mean));
  }
  return out;
}

ConvergedSummary converged_means(const AggregateSeries& series, int window) {
  ConvergedSummary out;
  if (series.epochs.empty()) return out;
  const std::size_t w = std::min<std::size_t>(std::max(window, 1), series.epochs.size());
  const auto begin = series.epochs.end() - static_cast<std::ptrdiff_t>(w);

  out.pu_pct.assign(begin->pu_pct.size(), 0.0);
  out.su_pct.assign(begin->su_pct.size(), 0.0);
  for (auto it = begin; it != series.epochs.end(); ++it) {
    for (std::size_t i = 0; i < out.pu_pct.size(); ++i) out.pu_pct[i] += it->pu_pct[i];
    for (std::size_t i = 0; i < out.su_pct.size(); ++i) out.su_pct[i] += it->su_pct[i];
    out.total += it->total;
  }
  for (double& v : out.pu_pct) v /= static_cast<double>(w);
  for (double& v : out.su_pct) v /= static_cast<double>(w);
  out.total /= static_cast<double>(w);
  out.pu_total = std::accumulate(out.pu_pct.begin(), out.pu_pct.end(), 0.0);
  out.su_total = std::accumulate(out.su_pct.begin(), out.su_pct.end(), 0.0);
  if (!out.pu_pct.empty()) out.pu_jain = jain_index(out.pu_pct);
  if (!out.su_pct.empty()) out.su_jain = jain_index(out.su_pct);
  return out;
}

}  // namespace crsched
