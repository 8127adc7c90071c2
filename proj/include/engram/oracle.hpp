#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "engram/lifecycle.hpp"
#include "engram/retrieval.hpp"
#include "engram/store.hpp"
#include "engram/trace.hpp"

// Brute-force references for differential testing. Nothing here calls into
// the retrieval or lifecycle implementations it is checked against.
namespace engram::oracle {

/// Straight-line re-implementation of the retrieve stage.
RetrievalResult reference_retrieve(const MemoryState& state);

/// "Full LTM search" ablation: top-k of C_ltm over the whole LTM.
std::vector<EngramId> full_ltm_search(const MemoryState& state, std::size_t k);

/// "Random wire" ablation of the co-firing update. Fire counts rise as usual,
/// but the |act|(|act|-1)/2 pair increments of the Hebbian rule each go to a
/// random (act member, LTM engram) pair instead. With an empty LTM this is the
/// Hebbian rule. Randomly wired counts may exceed a partner's fire count, so
/// edge weights under this rule are not bounded by 1.
CoFireRule random_wire_rule(std::mt19937_64& rng);

/// One lifecycle step with the random-wire co-firing rule.
StepReport random_wire_step(Engine& engine, std::span<const Vector> vectors,
                            const ContributionSource& contributions, std::mt19937_64& rng);

/// Counts rebuilt from a trace's per-step activated sets.
struct CountTable {
  std::map<EngramId, std::uint64_t> fire;                          // Count_{i,i}
  std::map<std::pair<EngramId, EngramId>, std::uint64_t> pairs;    // i < j

  bool operator==(const CountTable&) const = default;
};

/// Replays the Hebbian update from a trace. Valid for traces written with the
/// Hebbian rule only.
CountTable recount_from_trace(const TraceLog& log);

/// The live engine's counts in the same shape.
CountTable live_counts(const MemoryState& state);

/// Random small state for fuzzing: small config, at most `max_engrams`
/// engrams spread over the tiers, vectors on a coarse lattice (so score ties
/// occur) and random counts obeying Count_{i,j} <= min(Count_{i,i}, Count_{j,j}).
MemoryState random_state(std::mt19937_64& rng, std::size_t max_engrams = 40);

}  // namespace engram::oracle
