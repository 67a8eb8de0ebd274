#pragma once

#include <span>
#include <vector>

#include "crsched/scheduler.hpp"
#include "crsched/spectrum.hpp"

namespace crsched {

// Jain's fairness index (sum T)^2 / (N sum T^2). Defined as 0 when every
// entry is 0. Throws EmptyInput on an empty sequence.
double jain_index(std::span<const double> throughputs);

// Spectrum shares in one epoch, as percentages of total cell capacity.
struct EpochRecord {
  int epoch = 0;
  std::vector<double> pu_pct;
  std::vector<double> su_pct;
  double total = 0.0;

  double pu_total() const;
  double su_total() const;
};

EpochRecord percentages(const TtiOutcome& outcome, const CellConfig& config, int epoch);

using RunSeries = std::vector<EpochRecord>;

struct AggregateSeries {
  std::vector<EpochRecord> epochs;
  int runs = 0;
};

// Element-wise mean of aligned run series, summed in run order.
// Throws LengthMismatch if series lengths or user counts differ.
AggregateSeries aggregate(std::span<const RunSeries> runs);

struct ConvergedSummary {
  std::vector<double> pu_pct;
  std::vector<double> su_pct;
  double total = 0.0;
  double pu_total = 0.0;
  double su_total = 0.0;
  double pu_jain = 0.0;
  double su_jain = 0.0;
};

// Means over the final `window` epochs (all epochs if fewer).
ConvergedSummary converged_means(const AggregateSeries& series, int window = 20);

}  // namespace crsched
