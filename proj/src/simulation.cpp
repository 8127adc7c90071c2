#include "engram/simulation.hpp"

#include <algorithm>
#include <random>

#include "engram/oracle.hpp"
#include "engram/trace.hpp"

namespace engram {

void RunManifest::validate() const {
  config.validate();
  workload.validate();
  contribution.validate();
  if (workload.dim != config.dim) throw ConfigError("workload dim differs from engine dim");
  if (workload.vectors_per_step > config.n_wm) {
    throw ConfigError("vectors_per_step exceeds n_wm");
  }
}

SimulationResult run_simulation(const RunManifest& manifest, TraceWriter* trace) {
  manifest.validate();
  WorkloadSpec spec = manifest.workload;
  spec.seed = manifest.seed;
  const auto stream = generate_workload(spec);

  Engine engine(manifest.config);
  engine.attach_trace(trace);
  std::mt19937_64 wiring_rng(manifest.seed ^ 0x9e3779b97f4a7c15ULL);
  const CoFireRule rule = manifest.wiring == Wiring::RandomWire ? oracle::random_wire_rule(wiring_rng)
                                                                 : CoFireRule(record_cofiring);

  SimulationResult result{MemoryState(manifest.config), {}, {}, std::nullopt, 0, std::nullopt, 0};
  auto label_of = [&result](EngramId id) {
    auto it = result.labels.find(id);
    return it == result.labels.end() ? -1 : it->second;
  };
  double hit_sum = 0.0;
  double recall_sum = 0.0;

  for (std::size_t t = 0; t < stream.size(); ++t) {
    if (manifest.reset_period > 0 && t > 0 && t % manifest.reset_period == 0) engine.reset();
    const WorkloadStep& input = stream[t];
    const RetrievalResult& retrieved = engine.begin_step(input.vectors);
    for (EngramId id : retrieved.wm) result.labels[id] = input.label;

    if (input.label >= 0 && !retrieved.ltm_rem.empty()) {
      const auto hits = std::count_if(retrieved.ltm_rem.begin(), retrieved.ltm_rem.end(),
                                      [&](EngramId id) { return label_of(id) == input.label; });
      hit_sum += static_cast<double>(hits) / static_cast<double>(retrieved.ltm_rem.size());
      ++result.cue_hit_steps;
    }
    if (manifest.measure_recall && !engine.state().ltm().empty() && !retrieved.wm.empty()) {
      const auto best = oracle::full_ltm_search(engine.state(), manifest.config.n_ltm_rem);
      const auto found = std::count_if(best.begin(), best.end(), [&](EngramId id) {
        return std::find(retrieved.ltm_rem.begin(), retrieved.ltm_rem.end(), id) !=
               retrieved.ltm_rem.end();
      });
      recall_sum += static_cast<double>(found) / static_cast<double>(best.size());
      ++result.recall_steps;
    }

    const auto weights = evaluate_contributions(manifest.contribution, retrieved, label_of, input.label);
    result.reports.push_back(engine.complete_step(weights, rule));
  }

  if (result.cue_hit_steps > 0) result.cue_hit_rate = hit_sum / static_cast<double>(result.cue_hit_steps);
  if (result.recall_steps > 0) result.mean_recall = recall_sum / static_cast<double>(result.recall_steps);
  result.final_state = engine.state();
  return result;
}

}  // namespace engram
