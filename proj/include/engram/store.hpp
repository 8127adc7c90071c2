#pragma once

#include <deque>
#include <set>
#include <span>
#include <unordered_map>
#include <vector>

#include "engram/cofire_graph.hpp"
#include "engram/types.hpp"

namespace engram {

/// The three memory tiers plus the co-firing graph.
///
/// Invariants maintained by every public mutator:
///  * tiers are disjoint and every stored engram sits in exactly one of them;
///  * STM is a FIFO in creation order;
///  * counts touching an engram are dropped together with the engram;
///  * ids are never reused, including across reset().
///
/// Single writer: mutation requires exclusive access, const members may be
/// called concurrently against a frozen state.
class MemoryState {
 public:
  explicit MemoryState(Config config);

  const Config& config() const { return config_; }
  std::uint64_t step() const { return step_; }
  EngramId next_id() const { return next_id_; }

  const std::vector<EngramId>& wm() const { return wm_; }
  const std::deque<EngramId>& stm() const { return stm_; }
  const std::set<EngramId>& ltm() const { return ltm_; }
  const CoFireGraph& graph() const { return graph_; }

  std::size_t size() const { return engrams_.size(); }
  bool contains(EngramId id) const { return engrams_.contains(id); }
  const Engram& engram(EngramId id) const;
  // Sum of lifespans over all tiers.
  double total_lifespan() const;

  /// Creates one WM engram per vector. WM must be empty.
  std::vector<EngramId> add_working_memory(std::span<const Vector> vectors);

  /// E_{i->j} = Count_{i,j} / Count_{i,i}, 0 when i never fired.
  double edge_weight(EngramId i, EngramId j) const;
  std::uint64_t count(EngramId i, EngramId j) const;

  /// Clears engrams, tiers and counts. Step and id counters are kept.
  void reset();

  // Lifecycle primitives. Preconditions are checked; see lifecycle.hpp for the
  // composite step.
  void increment_count(EngramId i, EngramId j, std::uint64_t by = 1);
  void increment_fire_count(EngramId id);
  void extend_lifespan(EngramId id, double amount);
  // Decrements every lifespan by one and drops engrams at or below zero.
  // Returns removed ids in ascending order.
  std::vector<EngramId> decay_and_prune();
  struct Promotion {
    std::vector<EngramId> to_stm;
    std::vector<EngramId> to_ltm;
  };
  Promotion advance_tiers();
  void advance_clock() { ++step_; }

  // Restore API used by snapshots and test fixtures. Engrams are appended to
  // their tier in call order; next_id is raised past any restored id.
  void restore_engram(const Engram& engram);
  void restore_count(EngramId i, EngramId j, std::uint64_t count);
  void restore_fire_count(EngramId id, std::uint64_t count);
  void restore_clock(std::uint64_t step, EngramId next_id);

  bool operator==(const MemoryState& other) const;

 private:
  Engram& mutable_engram(EngramId id);
  void remove(EngramId id);

  Config config_;
  std::uint64_t step_ = 0;
  EngramId next_id_ = 0;
  std::unordered_map<EngramId, Engram> engrams_;
  std::vector<EngramId> wm_;
  std::deque<EngramId> stm_;
  std::set<EngramId> ltm_;
  CoFireGraph graph_;
};

/// Validates `config` and returns an empty state.
MemoryState new_engine(const Config& config);

}  // namespace engram
