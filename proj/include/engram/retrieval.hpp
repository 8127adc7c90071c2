#pragma once

#include <span>
#include <vector>

#include "engram/store.hpp"
#include "engram/types.hpp"

namespace engram {

/// Activated memory of one step.
struct RetrievalResult {
  std::vector<EngramId> wm;
  std::vector<EngramId> stm_rem;
  std::vector<EngramId> ltm_rem;
  // Every LTM engram reached by the graph walk, seeds first.
  std::vector<EngramId> ltm_found;
  // C_stm for every STM candidate in stm_rem, C_ltm for every ltm_rem member.
  ScoreMap scores;

  /// M^rem = stm_rem followed by ltm_rem.
  std::vector<EngramId> remembered() const;
  /// M^act = wm followed by M^rem.
  std::vector<EngramId> activated() const;

  bool operator==(const RetrievalResult&) const = default;
};

/// exp(-||a - b||^2).
double correlation(std::span<const double> a, std::span<const double> b);

/// Mean correlation of each candidate against every WM engram.
ScoreMap tier_correlations(const MemoryState& state, std::span<const EngramId> candidates);

/// k best ids by descending score, ties to the smaller id.
std::vector<EngramId> select_top_k(const ScoreMap& scores, std::size_t k);

/// Per STM engram, its strongest positive edge into LTM. Deduplicated,
/// first-seen order.
std::vector<EngramId> seed_ltm(const MemoryState& state, std::span<const EngramId> stm_rem);

/// Synchronous frontier expansion over LTM: at each level, every frontier
/// engram follows its strongest positive edge to an LTM engram not found in
/// earlier levels. Returns init plus all levels in discovery order.
std::vector<EngramId> explore_ltm(const MemoryState& state, std::span<const EngramId> init,
                                  std::size_t depth);

/// The full retrieve stage. Does not mutate `state`.
RetrievalResult retrieve(const MemoryState& state);

}  // namespace engram
