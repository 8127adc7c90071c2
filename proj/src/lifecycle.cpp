#include "engram/lifecycle.hpp"

#include <cmath>
#include <string>
#include <unordered_set>

#include "engram/trace.hpp"

namespace engram {

void record_cofiring(MemoryState& state, std::span<const EngramId> act) {
  std::unordered_set<EngramId> seen;
  for (EngramId id : act) {
    if (!seen.insert(id).second) {
      throw ContractError("activated set contains engram " + std::to_string(id) + " twice");
    }
    state.engram(id);
  }
  for (std::size_t a = 0; a < act.size(); ++a) {
    state.increment_fire_count(act[a]);
    for (std::size_t b = a + 1; b < act.size(); ++b) state.increment_count(act[a], act[b]);
  }
}

void check_contributions(std::span<const EngramId> rem, const ContributionWeights& weights) {
  if (weights.size() != rem.size()) {
    throw ContractError("expected " + std::to_string(rem.size()) + " contribution weights, got " +
                        std::to_string(weights.size()));
  }
  for (EngramId id : rem) {
    auto it = weights.find(id);
    if (it == weights.end()) {
      throw ContractError("no contribution weight for engram " + std::to_string(id));
    }
    if (!std::isfinite(it->second) || it->second < 0.0) {
      throw ContractError("contribution weight for engram " + std::to_string(id) +
                          " must be finite and non-negative");
    }
  }
}

std::map<EngramId, double> apply_contributions(MemoryState& state, std::span<const EngramId> rem,
                                               const ContributionWeights& weights) {
  check_contributions(rem, weights);
  std::map<EngramId, double> increments;
  if (rem.empty()) return increments;

  double total = 0.0;
  for (EngramId id : rem) total += weights.at(id);
  const double budget = static_cast<double>(rem.size()) * state.config().alpha;
  for (EngramId id : rem) {
    const double inc = total > 0.0 ? weights.at(id) / total * budget
                                   : budget / static_cast<double>(rem.size());
    increments[id] = inc;
  }
  for (const auto& [id, inc] : increments) state.extend_lifespan(id, inc);
  return increments;
}

PendingStep begin_step(MemoryState& state, std::span<const Vector> vectors) {
  PendingStep pending;
  pending.created = state.add_working_memory(vectors);
  if (!pending.created.empty()) {
    pending.retrieved = retrieve(state);
  }
  return pending;
}

StepReport complete_step(MemoryState& state, PendingStep pending, const ContributionWeights& weights,
                         const CoFireRule& rule) {
  const auto rem = pending.retrieved.remembered();
  check_contributions(rem, weights);

  StepReport report;
  report.step = state.step();
  report.created = std::move(pending.created);
  report.retrieved = std::move(pending.retrieved);

  rule(state, report.retrieved.activated());
  report.increments = apply_contributions(state, rem, weights);
  report.pruned = state.decay_and_prune();
  report.promoted_to_ltm = state.advance_tiers().to_ltm;
  state.advance_clock();

  report.stm_size = state.stm().size();
  report.ltm_size = state.ltm().size();
  report.total_lifespan = state.total_lifespan();
  return report;
}

StepReport step(MemoryState& state, std::span<const Vector> vectors,
                const ContributionSource& contributions) {
  PendingStep pending = begin_step(state, vectors);
  const ContributionWeights weights = contributions(pending.retrieved);
  return complete_step(state, std::move(pending), weights);
}

const RetrievalResult& Engine::begin_step(std::span<const Vector> vectors) {
  if (pending_) throw SequencingError("a retrieval is already pending feedback");
  pending_ = engram::begin_step(state_, vectors);
  return pending_->retrieved;
}

const RetrievalResult& Engine::pending() const {
  if (!pending_) throw SequencingError("no retrieval is pending");
  return pending_->retrieved;
}

StepReport Engine::complete_step(const ContributionWeights& weights, const CoFireRule& rule) {
  if (!pending_) throw SequencingError("feedback given without a pending retrieval");
  check_contributions(pending_->retrieved.remembered(), weights);
  StepReport report = engram::complete_step(state_, std::move(*pending_), weights, rule);
  pending_.reset();
  report.reset = reset_marker_;
  reset_marker_ = false;
  if (trace_ != nullptr) trace_->write(report);
  return report;
}

StepReport Engine::step(std::span<const Vector> vectors, const ContributionSource& contributions,
                        const CoFireRule& rule) {
  const RetrievalResult& retrieved = begin_step(vectors);
  return complete_step(contributions(retrieved), rule);
}

void Engine::reset() {
  state_.reset();
  pending_.reset();
  reset_marker_ = true;
}

}  // namespace engram
