#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "engram/store.hpp"
#include "engram/trace.hpp"

// Post-hoc analyses of a finished run. Every function here is a pure function
// of a trace (and, for contiguity, the final snapshot); none touches an engine.
namespace engram::analysis {

// ---------------------------------------------------------------------------
// Creation time of engrams still in LTM at the end of the run.

struct CreationDensity {
  // Bin i covers [i, i+1) * 100 / bins percent of the run.
  std::vector<double> bin_centres;
  std::vector<std::size_t> counts;
  // Gaussian KDE evaluated at the bin centres, scaled to expected count per bin.
  std::vector<double> kde;
  double bandwidth = 0.0;  // in percent-of-run units
  std::size_t survivors = 0;
};

/// `bandwidth` <= 0 selects Scott's rule (sigma * n^(-1/5)).
CreationDensity creation_time_density(const TraceLog& log, std::size_t bins = 50,
                                      double bandwidth = 0.0);

/// Means over the first 10% of bins, the central 10% and the last 10%.
struct DensityShape {
  double head = 0.0;
  double middle = 0.0;
  double tail = 0.0;
};
DensityShape density_shape(const std::vector<std::size_t>& counts);

// ---------------------------------------------------------------------------
// Mean edge weight by creation-time difference.

struct ContiguityProfile {
  // mean[d] and pairs[d] for age difference d < cap; the last entry pools
  // every difference >= cap.
  std::vector<double> mean;
  std::vector<std::size_t> pairs;
  std::size_t cap = 0;
};

/// Over all ordered pairs (i, j), i != j, with Count_{i,j} > 0 in `final_state`.
ContiguityProfile contiguity_profile(const MemoryState& final_state, std::size_t cap = 300);

/// Pair-weighted mean of E over age differences in [lo, hi] (hi inclusive,
/// clamped to the overflow bin). NaN when no pair falls in range.
double mean_weight_between(const ContiguityProfile& profile, std::size_t lo, std::size_t hi);

// ---------------------------------------------------------------------------
// Retrieval autocorrelation.

struct AcfTable {
  std::size_t max_lag = 0;
  std::size_t stm_max_lag = 0;
  // Index lag-1. NaN where no engram contributed.
  std::vector<double> stm;
  std::vector<double> ltm;
  std::vector<std::size_t> stm_engrams;
  std::vector<std::size_t> ltm_engrams;
  std::vector<std::string> warnings;
};

/// Pearson correlation of x[0..n-lag) with x[lag..n). Returns 1 when either
/// segment has zero variance; requires lag < n.
double lagged_correlation(const std::vector<int>& series, std::size_t lag);

/// Each engram's 0/1 "retrieved this step" series per tier residency, ACF'd
/// per lag. STM coefficients are averaged plainly, LTM coefficients weighted
/// by the engram's LTM residency length. STM lags stop at the longest observed
/// STM residency minus one.
AcfTable retrieval_autocorrelation(const TraceLog& log, std::size_t max_lag);

/// Per-engram retrieval series, exposed for fixtures and plots.
struct ResidencySeries {
  EngramId id = 0;
  std::vector<int> retrieved;
};
struct TierSeries {
  std::vector<ResidencySeries> stm;
  std::vector<ResidencySeries> ltm;
};
TierSeries retrieval_series(const TraceLog& log);

// ---------------------------------------------------------------------------
// Age of retrieved LTM engrams.

struct AgePoint {
  std::uint64_t step = 0;
  double mean_age = 0.0;
};

/// One point per step with a non-empty ltm_rem; age = step - creation_step.
std::vector<AgePoint> retrieved_ltm_age_curve(const TraceLog& log);

/// Ordinary least-squares slope of y on x. NaN with fewer than two points.
double fitted_slope(const std::vector<double>& x, const std::vector<double>& y);

// ---------------------------------------------------------------------------
// LTM size against the alpha * (n_stm_rem + n_ltm_rem) asymptote.

struct BoundRow {
  std::uint64_t step = 0;
  std::size_t ltm_size = 0;
  double total_lifespan = 0.0;
  double asymptote = 0.0;
  // One-step-ahead total lifespan from l' = (1 - c) l + K_n + created * (initial - 1),
  // with c = engrams / lifespan measured on the previous step and K_n the
  // step's realized increment total. NaN on the first step and after resets.
  double predicted_lifespan = 0.0;
  bool exceeds = false;
};

struct BoundReport {
  std::vector<BoundRow> rows;
  double asymptote = 0.0;
  double slack = 0.0;
  std::size_t max_ltm = 0;
  std::size_t exceed_steps = 0;
  double mean_relative_error = 0.0;
};

/// Steps before `burn_in` are listed but never flagged.
BoundReport ltm_bound_tracker(const TraceLog& log, double slack = 0.1, std::size_t burn_in = 0);

}  // namespace engram::analysis
