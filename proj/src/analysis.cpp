#include "engram/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <set>
#include <unordered_map>

namespace engram::analysis {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::unordered_map<EngramId, std::uint64_t> creation_steps(const TraceLog& log) {
  std::unordered_map<EngramId, std::uint64_t> out;
  for (const auto& r : log.records) {
    for (EngramId id : r.created) out[id] = r.step;
  }
  return out;
}

bool contains(const std::vector<EngramId>& v, EngramId id) {
  return std::find(v.begin(), v.end(), id) != v.end();
}

}  // namespace

CreationDensity creation_time_density(const TraceLog& log, std::size_t bins, double bandwidth) {
  CreationDensity out;
  if (bins == 0) bins = 1;
  const double width = 100.0 / static_cast<double>(bins);
  for (std::size_t b = 0; b < bins; ++b) out.bin_centres.push_back((static_cast<double>(b) + 0.5) * width);
  out.counts.assign(bins, 0);
  out.kde.assign(bins, 0.0);
  if (log.records.empty()) return out;

  const auto created = creation_steps(log);
  std::set<EngramId> ltm;
  for (const auto& r : log.records) {
    if (r.reset) ltm.clear();
    for (EngramId id : r.pruned) ltm.erase(id);
    for (EngramId id : r.promoted_to_ltm) ltm.insert(id);
  }

  const double first = static_cast<double>(log.records.front().step);
  const double span = static_cast<double>(log.records.back().step) + 1.0 - first;
  std::vector<double> pct;
  for (EngramId id : ltm) {
    const double x = (static_cast<double>(created.at(id)) - first) / span * 100.0;
    pct.push_back(x);
    const auto b = std::min(bins - 1, static_cast<std::size_t>(x / width));
    ++out.counts[b];
  }
  out.survivors = pct.size();
  if (pct.empty()) return out;

  if (bandwidth <= 0.0) {
    double mean = 0.0;
    for (double x : pct) mean += x;
    mean /= static_cast<double>(pct.size());
    double var = 0.0;
    for (double x : pct) var += (x - mean) * (x - mean);
    const double sigma = pct.size() > 1 ? std::sqrt(var / static_cast<double>(pct.size() - 1)) : 0.0;
    bandwidth = sigma > 0.0 ? sigma * std::pow(static_cast<double>(pct.size()), -0.2) : width;
  }
  out.bandwidth = bandwidth;
  const double norm = 1.0 / (static_cast<double>(pct.size()) * bandwidth * std::sqrt(2.0 * std::numbers::pi));
  for (std::size_t b = 0; b < bins; ++b) {
    double density = 0.0;
    for (double x : pct) {
      const double z = (out.bin_centres[b] - x) / bandwidth;
      density += std::exp(-0.5 * z * z);
    }
    out.kde[b] = density * norm * static_cast<double>(pct.size()) * width;
  }
  return out;
}

DensityShape density_shape(const std::vector<std::size_t>& counts) {
  DensityShape s;
  const std::size_t n = counts.size();
  if (n == 0) return s;
  const std::size_t k = std::max<std::size_t>(1, n / 10);
  auto mean_of = [&](std::size_t from) {
    double total = 0.0;
    for (std::size_t i = from; i < from + k; ++i) total += static_cast<double>(counts[i]);
    return total / static_cast<double>(k);
  };
  s.head = mean_of(0);
  s.middle = mean_of((n - k) / 2);
  s.tail = mean_of(n - k);
  return s;
}

ContiguityProfile contiguity_profile(const MemoryState& state, std::size_t cap) {
  ContiguityProfile p;
  p.cap = cap;
  std::vector<double> sums(cap + 1, 0.0);
  p.pairs.assign(cap + 1, 0);

  std::vector<EngramId> ids(state.wm().begin(), state.wm().end());
  ids.insert(ids.end(), state.stm().begin(), state.stm().end());
  ids.insert(ids.end(), state.ltm().begin(), state.ltm().end());
  std::sort(ids.begin(), ids.end());
  for (EngramId i : ids) {
    const auto ci = state.engram(i).creation_step;
    // Sorted peers keep the floating-point sums independent of hash order.
    std::vector<EngramId> peers;
    for (const auto& [j, count] : state.graph().neighbours(i)) {
      if (count > 0) peers.push_back(j);
    }
    std::sort(peers.begin(), peers.end());
    for (EngramId j : peers) {
      const auto cj = state.engram(j).creation_step;
      const std::size_t diff = ci > cj ? ci - cj : cj - ci;
      const std::size_t bin = std::min(diff, cap);
      sums[bin] += state.edge_weight(i, j);
      ++p.pairs[bin];
    }
  }
  p.mean.resize(cap + 1);
  for (std::size_t b = 0; b <= cap; ++b) {
    p.mean[b] = p.pairs[b] > 0 ? sums[b] / static_cast<double>(p.pairs[b]) : kNaN;
  }
  return p;
}

double mean_weight_between(const ContiguityProfile& profile, std::size_t lo, std::size_t hi) {
  double total = 0.0;
  std::size_t n = 0;
  const std::size_t last = std::min(hi, profile.cap);
  for (std::size_t d = std::min(lo, profile.cap); d <= last; ++d) {
    if (profile.pairs[d] == 0) continue;
    total += profile.mean[d] * static_cast<double>(profile.pairs[d]);
    n += profile.pairs[d];
  }
  return n > 0 ? total / static_cast<double>(n) : kNaN;
}

double lagged_correlation(const std::vector<int>& series, std::size_t lag) {
  const std::size_t n = series.size();
  if (lag >= n) throw ContractError("lag must be shorter than the series");
  const std::size_t m = n - lag;
  double mean_a = 0.0, mean_b = 0.0;
  for (std::size_t t = 0; t < m; ++t) {
    mean_a += series[t];
    mean_b += series[t + lag];
  }
  mean_a /= static_cast<double>(m);
  mean_b /= static_cast<double>(m);
  double cov = 0.0, var_a = 0.0, var_b = 0.0;
  for (std::size_t t = 0; t < m; ++t) {
    const double da = series[t] - mean_a;
    const double db = series[t + lag] - mean_b;
    cov += da * db;
    var_a += da * da;
    var_b += db * db;
  }
  // A constant segment has no defined correlation; count it as perfectly persistent.
  if (var_a == 0.0 || var_b == 0.0) return 1.0;
  return cov / std::sqrt(var_a * var_b);
}

TierSeries retrieval_series(const TraceLog& log) {
  std::map<EngramId, std::vector<int>> stm_series, ltm_series;
  std::set<EngramId> stm, ltm;
  for (const auto& r : log.records) {
    if (r.reset) {
      stm.clear();
      ltm.clear();
    }
    for (EngramId id : stm) stm_series[id].push_back(contains(r.retrieved.stm_rem, id) ? 1 : 0);
    for (EngramId id : ltm) ltm_series[id].push_back(contains(r.retrieved.ltm_rem, id) ? 1 : 0);

    for (EngramId id : r.created) {
      if (!contains(r.pruned, id)) stm.insert(id);
    }
    for (EngramId id : r.pruned) {
      stm.erase(id);
      ltm.erase(id);
    }
    for (EngramId id : r.promoted_to_ltm) {
      stm.erase(id);
      ltm.insert(id);
    }
  }
  TierSeries out;
  for (auto& [id, s] : stm_series) out.stm.push_back({id, std::move(s)});
  for (auto& [id, s] : ltm_series) out.ltm.push_back({id, std::move(s)});
  return out;
}

AcfTable retrieval_autocorrelation(const TraceLog& log, std::size_t max_lag) {
  AcfTable t;
  t.max_lag = max_lag;
  const TierSeries series = retrieval_series(log);

  std::size_t longest_stm = 0;
  for (const auto& s : series.stm) longest_stm = std::max(longest_stm, s.retrieved.size());
  t.stm_max_lag = std::min(max_lag, longest_stm > 0 ? longest_stm - 1 : 0);
  if (max_lag > t.stm_max_lag) {
    t.warnings.push_back("STM lags capped at " + std::to_string(t.stm_max_lag) +
                         " (longest STM residency is " + std::to_string(longest_stm) + " steps)");
  }

  for (std::size_t lag = 1; lag <= max_lag; ++lag) {
    double stm_sum = 0.0;
    std::size_t stm_n = 0;
    if (lag <= t.stm_max_lag) {
      for (const auto& s : series.stm) {
        if (s.retrieved.size() <= lag) continue;
        stm_sum += lagged_correlation(s.retrieved, lag);
        ++stm_n;
      }
    }
    double ltm_sum = 0.0, ltm_weight = 0.0;
    std::size_t ltm_n = 0;
    for (const auto& s : series.ltm) {
      if (s.retrieved.size() <= lag) continue;
      const double w = static_cast<double>(s.retrieved.size());
      ltm_sum += w * lagged_correlation(s.retrieved, lag);
      ltm_weight += w;
      ++ltm_n;
    }
    t.stm.push_back(stm_n > 0 ? stm_sum / static_cast<double>(stm_n) : kNaN);
    t.ltm.push_back(ltm_n > 0 ? ltm_sum / ltm_weight : kNaN);
    t.stm_engrams.push_back(stm_n);
    t.ltm_engrams.push_back(ltm_n);
  }
  return t;
}

std::vector<AgePoint> retrieved_ltm_age_curve(const TraceLog& log) {
  const auto created = creation_steps(log);
  std::vector<AgePoint> out;
  for (const auto& r : log.records) {
    if (r.retrieved.ltm_rem.empty()) continue;
    double total = 0.0;
    for (EngramId id : r.retrieved.ltm_rem) {
      total += static_cast<double>(r.step - created.at(id));
    }
    out.push_back({r.step, total / static_cast<double>(r.retrieved.ltm_rem.size())});
  }
  return out;
}

double fitted_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = std::min(x.size(), y.size());
  if (n < 2) return kNaN;
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxx > 0.0 ? sxy / sxx : kNaN;
}

BoundReport ltm_bound_tracker(const TraceLog& log, double slack, std::size_t burn_in) {
  BoundReport rep;
  rep.asymptote = log.config.ltm_asymptote();
  rep.slack = slack;
  const double limit = rep.asymptote * (1.0 + slack);
  const std::uint64_t first = log.records.empty() ? 0 : log.records.front().step;

  double err_sum = 0.0;
  std::size_t err_n = 0;
  for (std::size_t n = 0; n < log.records.size(); ++n) {
    const StepReport& r = log.records[n];
    BoundRow row;
    row.step = r.step;
    row.ltm_size = r.ltm_size;
    row.total_lifespan = r.total_lifespan;
    row.asymptote = rep.asymptote;
    row.predicted_lifespan = kNaN;
    if (n > 0 && !r.reset) {
      const StepReport& prev = log.records[n - 1];
      const double engrams = static_cast<double>(prev.stm_size + prev.ltm_size);
      const double c = prev.total_lifespan > 0.0 ? engrams / prev.total_lifespan : 0.0;
      double k = 0.0;
      for (const auto& [_, inc] : r.increments) k += inc;
      row.predicted_lifespan = (1.0 - c) * prev.total_lifespan + k +
                               static_cast<double>(r.created.size()) * (log.config.initial_lifespan - 1.0);
      if (r.total_lifespan > 0.0) {
        err_sum += std::abs(row.predicted_lifespan - r.total_lifespan) / r.total_lifespan;
        ++err_n;
      }
    }
    if (r.step - first >= burn_in) {
      rep.max_ltm = std::max(rep.max_ltm, r.ltm_size);
      row.exceeds = static_cast<double>(r.ltm_size) > limit;
      if (row.exceeds) ++rep.exceed_steps;
    }
    rep.rows.push_back(row);
  }
  rep.mean_relative_error = err_n > 0 ? err_sum / static_cast<double>(err_n) : kNaN;
  return rep;
}

}  // namespace engram::analysis
