#include "engram/cofire_graph.hpp"

#include <algorithm>
#include <utility>

namespace engram {

namespace {
const CoFireGraph::Neighbours kNoNeighbours;
}

std::uint64_t CoFireGraph::count(EngramId i, EngramId j) const {
  auto row = adjacency_.find(i);
  if (row == adjacency_.end()) return 0;
  auto cell = row->second.find(j);
  return cell == row->second.end() ? 0 : cell->second;
}

void CoFireGraph::increment(EngramId i, EngramId j, std::uint64_t by) {
  adjacency_[i][j] += by;
  adjacency_[j][i] += by;
}

void CoFireGraph::set(EngramId i, EngramId j, std::uint64_t value) {
  if (value == 0) {
    for (auto [a, b] : {std::pair{i, j}, std::pair{j, i}}) {
      auto row = adjacency_.find(a);
      if (row == adjacency_.end()) continue;
      row->second.erase(b);
      if (row->second.empty()) adjacency_.erase(row);
    }
    return;
  }
  adjacency_[i][j] = value;
  adjacency_[j][i] = value;
}

void CoFireGraph::erase_node(EngramId id) {
  auto row = adjacency_.find(id);
  if (row == adjacency_.end()) return;
  for (const auto& [peer, _] : row->second) {
    auto back = adjacency_.find(peer);
    if (back == adjacency_.end()) continue;
    back->second.erase(id);
    if (back->second.empty()) adjacency_.erase(back);
  }
  adjacency_.erase(id);
}

const CoFireGraph::Neighbours& CoFireGraph::neighbours(EngramId id) const {
  auto row = adjacency_.find(id);
  return row == adjacency_.end() ? kNoNeighbours : row->second;
}

std::size_t CoFireGraph::pair_count() const {
  std::size_t total = 0;
  for (const auto& [_, row] : adjacency_) total += row.size();
  return total / 2;
}

std::vector<CountTriple> CoFireGraph::triples() const {
  std::vector<CountTriple> out;
  for (const auto& [i, row] : adjacency_) {
    for (const auto& [j, c] : row) {
      if (i < j) out.push_back({i, j, c});
    }
  }
  std::sort(out.begin(), out.end(), [](const CountTriple& a, const CountTriple& b) {
    return a.i != b.i ? a.i < b.i : a.j < b.j;
  });
  return out;
}

}  // namespace engram
