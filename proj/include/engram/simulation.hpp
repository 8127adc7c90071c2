#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "engram/contribution.hpp"
#include "engram/lifecycle.hpp"
#include "engram/store.hpp"
#include "engram/workload.hpp"

namespace engram {

class TraceWriter;

enum class Wiring { Hebbian, RandomWire };

/// Everything needed to reproduce a run byte-for-byte.
struct RunManifest {
  Config config;
  WorkloadSpec workload;
  ContributionModel contribution;
  // Memory is reset before every step divisible by reset_period; 0 = never.
  std::uint64_t reset_period = 0;
  std::string output_dir = "out";
  // Seeds the workload and, for random wiring, the wiring RNG.
  std::uint64_t seed = 0;
  Wiring wiring = Wiring::Hebbian;
  // Also score each step's ltm_rem against a full LTM search.
  bool measure_recall = false;

  void validate() const;
};

struct SimulationResult {
  MemoryState final_state;
  std::vector<StepReport> reports;
  std::map<EngramId, int> labels;
  // Mean fraction of ltm_rem sharing the step's topic, over steps that
  // retrieved from LTM. Empty for unlabelled workloads.
  std::optional<double> cue_hit_rate;
  std::size_t cue_hit_steps = 0;
  // Mean |ltm_rem ∩ full-search top-k| / |full-search top-k| over steps with a non-empty LTM.
  std::optional<double> mean_recall;
  std::size_t recall_steps = 0;
};

SimulationResult run_simulation(const RunManifest& manifest, TraceWriter* trace = nullptr);

}  // namespace engram
