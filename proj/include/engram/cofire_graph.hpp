#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "engram/types.hpp"

namespace engram {

struct CountTriple {
  EngramId i = 0;
  EngramId j = 0;
  std::uint64_t count = 0;

  bool operator==(const CountTriple&) const = default;
};

// Sparse symmetric co-firing counts between distinct engrams. The diagonal
// Count_{i,i} lives on Engram::fire_count, not here.
//
// Both directions are stored so that the outgoing neighbourhood of any engram
// is one hash lookup away; Count_{i,j} == Count_{j,i} always holds.
class CoFireGraph {
 public:
  using Neighbours = std::unordered_map<EngramId, std::uint64_t>;

  std::uint64_t count(EngramId i, EngramId j) const;

  // Adds `by` to Count_{i,j} and Count_{j,i}. Requires i != j.
  void increment(EngramId i, EngramId j, std::uint64_t by = 1);
  void set(EngramId i, EngramId j, std::uint64_t value);

  // Drops every entry touching `id`.
  void erase_node(EngramId id);
  void clear() { adjacency_.clear(); }

  // Empty map when `id` has never co-fired with anything.
  const Neighbours& neighbours(EngramId id) const;

  std::size_t pair_count() const;
  // All stored pairs with i < j, sorted by (i, j).
  std::vector<CountTriple> triples() const;

  bool operator==(const CoFireGraph& other) const { return adjacency_ == other.adjacency_; }

 private:
  std::unordered_map<EngramId, Neighbours> adjacency_;
};

}  // namespace engram
