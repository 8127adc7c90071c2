#pragma once

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "engram/retrieval.hpp"
#include "engram/store.hpp"

namespace engram {

class TraceWriter;

/// Exploit-stage feedback: one non-negative weight per member of M^rem.
using ContributionWeights = std::map<EngramId, double>;
using ContributionSource = std::function<ContributionWeights(const RetrievalResult&)>;

/// Strategy for the co-firing update of the memorize stage. The Hebbian rule
/// is record_cofiring; ablations substitute their own.
using CoFireRule = std::function<void(MemoryState&, std::span<const EngramId> act)>;

/// Everything one step did. Serialized one-per-line as the trace.
struct StepReport {
  std::uint64_t step = 0;
  // Memory was reset immediately before this step.
  bool reset = false;
  std::vector<EngramId> created;
  RetrievalResult retrieved;
  std::map<EngramId, double> increments;
  std::vector<EngramId> pruned;
  std::vector<EngramId> promoted_to_ltm;
  std::size_t stm_size = 0;
  std::size_t ltm_size = 0;
  double total_lifespan = 0.0;

  bool operator==(const StepReport&) const = default;
};

/// Count_{i,j} += 1 for every ordered pair of `act`, diagonal included.
void record_cofiring(MemoryState& state, std::span<const EngramId> act);

/// Inc_i = w_i / sum(w) * |rem| * alpha, added to each lifespan.
/// All-zero weights fall back to uniform. Validates before mutating.
std::map<EngramId, double> apply_contributions(MemoryState& state, std::span<const EngramId> rem,
                                               const ContributionWeights& weights);

/// Throws ContractError unless `weights` is keyed exactly by `rem` with
/// finite non-negative values.
void check_contributions(std::span<const EngramId> rem, const ContributionWeights& weights);

inline std::vector<EngramId> decay_and_prune(MemoryState& state) { return state.decay_and_prune(); }
inline MemoryState::Promotion advance_tiers(MemoryState& state) { return state.advance_tiers(); }

/// Retrieve stage output held between the two halves of a step.
struct PendingStep {
  std::vector<EngramId> created;
  RetrievalResult retrieved;
};

PendingStep begin_step(MemoryState& state, std::span<const Vector> vectors);
StepReport complete_step(MemoryState& state, PendingStep pending, const ContributionWeights& weights,
                         const CoFireRule& rule = record_cofiring);

/// add WM -> retrieve -> exploit callback -> memorize & forget -> clock.
StepReport step(MemoryState& state, std::span<const Vector> vectors,
                const ContributionSource& contributions);

/// Owns a MemoryState and enforces the retrieve / feedback phase protocol.
/// Every completed step is appended to the attached trace, if any.
class Engine {
 public:
  explicit Engine(const Config& config) : state_(config) {}

  const MemoryState& state() const { return state_; }
  // Direct access for fixtures; bypasses the phase protocol.
  MemoryState& mutable_state() { return state_; }

  void attach_trace(TraceWriter* trace) { trace_ = trace; }

  const RetrievalResult& begin_step(std::span<const Vector> vectors);
  bool has_pending() const { return pending_.has_value(); }
  const RetrievalResult& pending() const;
  StepReport complete_step(const ContributionWeights& weights,
                           const CoFireRule& rule = record_cofiring);

  StepReport step(std::span<const Vector> vectors, const ContributionSource& contributions,
                  const CoFireRule& rule = record_cofiring);

  /// Clears memory. Discards a pending step; the next report carries reset=true.
  void reset();

 private:
  MemoryState state_;
  std::optional<PendingStep> pending_;
  bool reset_marker_ = false;
  TraceWriter* trace_ = nullptr;
};

}  // namespace engram
