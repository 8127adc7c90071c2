#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "engram/analysis.hpp"
#include "engram/store.hpp"

namespace engram::report {

// CSV tables, one per analysis. Undefined values (NaN) are written as empty
// cells. Headers:
//   creation    bin_centre_pct,count,kde
//   contiguity  age_difference,overflow,pairs,mean_weight
//   acf         lag,stm,ltm,stm_engrams,ltm_engrams
//   age         step,mean_age
//   bound       step,ltm_size,total_lifespan,asymptote,predicted_lifespan,exceeds
void write_creation_csv(std::ostream& out, const analysis::CreationDensity& d);
void write_contiguity_csv(std::ostream& out, const analysis::ContiguityProfile& p);
void write_acf_csv(std::ostream& out, const analysis::AcfTable& t);
void write_age_csv(std::ostream& out, const std::vector<analysis::AgePoint>& curve);
void write_bound_csv(std::ostream& out, const analysis::BoundReport& r);

struct PlotSeries {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
  bool bars = false;
};

/// Self-contained SVG chart. Non-finite points are skipped, which leaves gaps
/// in line series.
std::string svg_plot(const std::string& title, const std::string& x_label, const std::string& y_label,
                     const std::vector<PlotSeries>& series);

/// Graphviz DOT digraph. One node per live engram with its tier, creation step
/// and lifespan; one edge i -> j per ordered pair with Count > 0 and
/// E_{i->j} >= min_weight, labelled with the weight.
std::string graph_dot(const MemoryState& state, double min_weight);

}  // namespace engram::report
