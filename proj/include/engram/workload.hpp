#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "engram/types.hpp"

namespace engram {

enum class WorkloadKind { IidGaussian, ClusteredTopics, Drifting, MotifReplay };

const char* workload_kind_name(WorkloadKind kind);
WorkloadKind parse_workload_kind(const std::string& name);

/// Synthetic embedding stream. Fully determined by its fields.
///
/// clustered-topics: `clusters` centres drawn N(0, spread^2) per coordinate;
///   each step draws one topic and emits centre + N(0, noise^2) vectors.
///   With motif_period > 0, topic 0 is a recurring motif: it is shown for the
///   first motif_length steps and on every step divisible by motif_period,
///   and other steps draw from topics 1..clusters-1.
/// drifting: one centre that random-walks by N(0, drift_rate^2) per step.
/// motif-replay: a clustered-topics stream of ceil(steps/2) steps shown twice.
/// iid-gaussian: N(0, spread^2) vectors, no structure.
struct WorkloadSpec {
  WorkloadKind kind = WorkloadKind::ClusteredTopics;
  std::size_t dim = 16;
  std::size_t steps = 1000;
  std::size_t vectors_per_step = 50;
  std::uint64_t seed = 0;
  std::size_t clusters = 8;
  double spread = 1.0;
  double noise = 0.3;
  double drift_rate = 0.1;
  std::size_t motif_period = 0;
  std::size_t motif_length = 1;

  void validate() const;
};

struct WorkloadStep {
  std::vector<Vector> vectors;
  // Topic of the step; -1 when the workload has no topic structure.
  int label = -1;

  bool operator==(const WorkloadStep&) const = default;
};

std::vector<WorkloadStep> generate_workload(const WorkloadSpec& spec);

}  // namespace engram
