#include "engram/store.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace engram {

char tier_code(Tier tier) {
  switch (tier) {
    case Tier::WorkingMemory: return 'W';
    case Tier::ShortTermMemory: return 'S';
    case Tier::LongTermMemory: return 'L';
  }
  return '?';
}

Tier tier_from_code(char code) {
  switch (code) {
    case 'W': return Tier::WorkingMemory;
    case 'S': return Tier::ShortTermMemory;
    case 'L': return Tier::LongTermMemory;
    default: throw Error(std::string("unknown tier code '") + code + "'");
  }
}

const char* tier_name(Tier tier) {
  switch (tier) {
    case Tier::WorkingMemory: return "wm";
    case Tier::ShortTermMemory: return "stm";
    case Tier::LongTermMemory: return "ltm";
  }
  return "?";
}

void Config::validate() const {
  auto positive = [](std::size_t v, const char* name) {
    if (v == 0) throw ConfigError(std::string(name) + " must be positive");
  };
  positive(dim, "dim");
  positive(n_wm, "n_wm");
  positive(stm_capacity, "stm_capacity");
  positive(n_stm_rem, "n_stm_rem");
  positive(n_ltm_rem, "n_ltm_rem");
  if (n_stm_rem > stm_capacity) {
    throw ConfigError("n_stm_rem (" + std::to_string(n_stm_rem) + ") exceeds stm_capacity (" +
                      std::to_string(stm_capacity) + ")");
  }
  if (!(initial_lifespan > 0.0) || !std::isfinite(initial_lifespan)) {
    throw ConfigError("initial_lifespan must be a positive finite number");
  }
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw ConfigError("alpha must be a positive finite number");
  }
}

MemoryState::MemoryState(Config config) : config_(std::move(config)) { config_.validate(); }

MemoryState new_engine(const Config& config) { return MemoryState(config); }

const Engram& MemoryState::engram(EngramId id) const {
  auto it = engrams_.find(id);
  if (it == engrams_.end()) throw LookupError("unknown engram id " + std::to_string(id));
  return it->second;
}

Engram& MemoryState::mutable_engram(EngramId id) {
  auto it = engrams_.find(id);
  if (it == engrams_.end()) throw LookupError("unknown engram id " + std::to_string(id));
  return it->second;
}

double MemoryState::total_lifespan() const {
  // Summed in tier order so the result does not depend on hash iteration.
  double total = 0.0;
  for (EngramId id : wm_) total += engrams_.at(id).lifespan;
  for (EngramId id : stm_) total += engrams_.at(id).lifespan;
  for (EngramId id : ltm_) total += engrams_.at(id).lifespan;
  return total;
}

std::vector<EngramId> MemoryState::add_working_memory(std::span<const Vector> vectors) {
  if (!wm_.empty()) throw SequencingError("working memory is still populated");
  if (vectors.size() > config_.n_wm) {
    throw ShapeError("got " + std::to_string(vectors.size()) + " vectors, n_wm is " +
                     std::to_string(config_.n_wm));
  }
  for (const auto& v : vectors) {
    if (v.size() != config_.dim) {
      throw ShapeError("vector dimension " + std::to_string(v.size()) + " != " +
                       std::to_string(config_.dim));
    }
  }
  std::vector<EngramId> ids;
  ids.reserve(vectors.size());
  for (const auto& v : vectors) {
    Engram e;
    e.id = next_id_++;
    e.vector = v;
    e.tier = Tier::WorkingMemory;
    e.lifespan = config_.initial_lifespan;
    e.creation_step = step_;
    ids.push_back(e.id);
    wm_.push_back(e.id);
    engrams_.emplace(e.id, std::move(e));
  }
  return ids;
}

std::uint64_t MemoryState::count(EngramId i, EngramId j) const {
  const Engram& ei = engram(i);
  if (i == j) return ei.fire_count;
  engram(j);
  return graph_.count(i, j);
}

double MemoryState::edge_weight(EngramId i, EngramId j) const {
  const Engram& ei = engram(i);
  engram(j);
  if (ei.fire_count == 0) return 0.0;
  const std::uint64_t c = i == j ? ei.fire_count : graph_.count(i, j);
  return static_cast<double>(c) / static_cast<double>(ei.fire_count);
}

void MemoryState::reset() {
  engrams_.clear();
  wm_.clear();
  stm_.clear();
  ltm_.clear();
  graph_.clear();
}

void MemoryState::increment_count(EngramId i, EngramId j, std::uint64_t by) {
  if (i == j) throw ContractError("diagonal counts are fire counts");
  engram(i);
  engram(j);
  graph_.increment(i, j, by);
}

void MemoryState::increment_fire_count(EngramId id) { ++mutable_engram(id).fire_count; }

void MemoryState::extend_lifespan(EngramId id, double amount) {
  mutable_engram(id).lifespan += amount;
}

void MemoryState::remove(EngramId id) {
  auto it = engrams_.find(id);
  switch (it->second.tier) {
    case Tier::WorkingMemory: std::erase(wm_, id); break;
    case Tier::ShortTermMemory: std::erase(stm_, id); break;
    case Tier::LongTermMemory: ltm_.erase(id); break;
  }
  graph_.erase_node(id);
  engrams_.erase(it);
}

std::vector<EngramId> MemoryState::decay_and_prune() {
  std::vector<EngramId> dead;
  for (auto& [id, e] : engrams_) {
    e.lifespan -= 1.0;
    if (e.lifespan <= 0.0) dead.push_back(id);
  }
  std::sort(dead.begin(), dead.end());
  for (EngramId id : dead) remove(id);
  return dead;
}

MemoryState::Promotion MemoryState::advance_tiers() {
  Promotion out;
  for (EngramId id : wm_) {
    engrams_.at(id).tier = Tier::ShortTermMemory;
    stm_.push_back(id);
    out.to_stm.push_back(id);
  }
  wm_.clear();
  while (stm_.size() > config_.stm_capacity) {
    EngramId oldest = stm_.front();
    stm_.pop_front();
    engrams_.at(oldest).tier = Tier::LongTermMemory;
    ltm_.insert(oldest);
    out.to_ltm.push_back(oldest);
  }
  return out;
}

void MemoryState::restore_engram(const Engram& engram) {
  if (engrams_.contains(engram.id)) {
    throw ContractError("engram " + std::to_string(engram.id) + " already present");
  }
  if (engram.vector.size() != config_.dim) throw ShapeError("restored vector has wrong dimension");
  if (engram.id >= next_id_) next_id_ = engram.id + 1;
  switch (engram.tier) {
    case Tier::WorkingMemory: wm_.push_back(engram.id); break;
    case Tier::ShortTermMemory: stm_.push_back(engram.id); break;
    case Tier::LongTermMemory: ltm_.insert(engram.id); break;
  }
  engrams_.emplace(engram.id, engram);
}

void MemoryState::restore_count(EngramId i, EngramId j, std::uint64_t count) {
  engram(i);
  engram(j);
  if (i == j) {
    mutable_engram(i).fire_count = count;
    return;
  }
  graph_.set(i, j, count);
}

void MemoryState::restore_fire_count(EngramId id, std::uint64_t count) {
  mutable_engram(id).fire_count = count;
}

void MemoryState::restore_clock(std::uint64_t step, EngramId next_id) {
  for (const auto& [id, _] : engrams_) {
    if (id >= next_id) throw ContractError("next_id must exceed every stored id");
  }
  step_ = step;
  next_id_ = next_id;
}

bool MemoryState::operator==(const MemoryState& other) const {
  return config_ == other.config_ && step_ == other.step_ && next_id_ == other.next_id_ &&
         engrams_ == other.engrams_ && wm_ == other.wm_ && stm_ == other.stm_ &&
         ltm_ == other.ltm_ && graph_ == other.graph_;
}

}  // namespace engram
