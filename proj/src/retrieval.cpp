#include "engram/retrieval.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_set>

namespace engram {

namespace {

// The mutation-testing build flips every tie-break so the differential
// campaign has something to catch.
#ifdef ENGRAM_INVERT_TIEBREAK
constexpr bool kOlderWins = false;
#else
constexpr bool kOlderWins = true;
#endif

bool preferred_on_tie(EngramId candidate, EngramId incumbent) {
  return kOlderWins ? candidate < incumbent : candidate > incumbent;
}

// Strongest positive edge from `from` into LTM, skipping `excluded`.
// Returns false when no such edge exists.
template <typename Excluded>
bool strongest_ltm_edge(const MemoryState& state, EngramId from, const Excluded& excluded,
                        EngramId& best) {
  const auto fired = state.engram(from).fire_count;
  if (fired == 0) return false;
  const auto& ltm = state.ltm();
  std::uint64_t best_count = 0;
  bool found = false;
  // Weights out of one engram share the divisor, so comparing counts is exact.
  for (const auto& [peer, count] : state.graph().neighbours(from)) {
    if (count == 0 || !ltm.contains(peer) || excluded(peer)) continue;
    if (!found || count > best_count || (count == best_count && preferred_on_tie(peer, best))) {
      best = peer;
      best_count = count;
      found = true;
    }
  }
  return found;
}

}  // namespace

std::vector<EngramId> RetrievalResult::remembered() const {
  std::vector<EngramId> out(stm_rem);
  out.insert(out.end(), ltm_rem.begin(), ltm_rem.end());
  return out;
}

std::vector<EngramId> RetrievalResult::activated() const {
  std::vector<EngramId> out(wm);
  out.insert(out.end(), stm_rem.begin(), stm_rem.end());
  out.insert(out.end(), ltm_rem.begin(), ltm_rem.end());
  return out;
}

double correlation(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw ShapeError("correlation of vectors with dimensions " + std::to_string(a.size()) +
                     " and " + std::to_string(b.size()));
  }
  double squared = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    squared += d * d;
  }
  return std::exp(-squared);
}

ScoreMap tier_correlations(const MemoryState& state, std::span<const EngramId> candidates) {
  const auto& wm = state.wm();
  if (wm.empty()) throw SequencingError("correlation scoring needs a populated working memory");
  std::vector<const Vector*> cues;
  cues.reserve(wm.size());
  for (EngramId id : wm) cues.push_back(&state.engram(id).vector);

  ScoreMap scores;
  for (EngramId id : candidates) {
    const Vector& v = state.engram(id).vector;
    double sum = 0.0;
    for (const Vector* cue : cues) sum += correlation(v, *cue);
    scores[id] = sum / static_cast<double>(cues.size());
  }
  return scores;
}

std::vector<EngramId> select_top_k(const ScoreMap& scores, std::size_t k) {
  std::vector<std::pair<EngramId, double>> ranked(scores.begin(), scores.end());
  auto better = [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return preferred_on_tie(a.first, b.first);
  };
  const std::size_t keep = std::min(k, ranked.size());
  std::partial_sort(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(keep),
                    ranked.end(), better);
  std::vector<EngramId> out;
  out.reserve(keep);
  for (std::size_t i = 0; i < keep; ++i) out.push_back(ranked[i].first);
  return out;
}

std::vector<EngramId> seed_ltm(const MemoryState& state, std::span<const EngramId> stm_rem) {
  std::vector<EngramId> seeds;
  std::unordered_set<EngramId> seen;
  auto nothing_excluded = [](EngramId) { return false; };
  for (EngramId id : stm_rem) {
    EngramId best = 0;
    if (strongest_ltm_edge(state, id, nothing_excluded, best) && seen.insert(best).second) {
      seeds.push_back(best);
    }
  }
  return seeds;
}

std::vector<EngramId> explore_ltm(const MemoryState& state, std::span<const EngramId> init,
                                  std::size_t depth) {
  std::vector<EngramId> found;
  std::unordered_set<EngramId> found_set;
  for (EngramId id : init) {
    if (found_set.insert(id).second) found.push_back(id);
  }
  std::vector<EngramId> frontier(found);
  for (std::size_t level = 0; level < depth && !frontier.empty(); ++level) {
    // Exclusion is the found set as of the previous level; picks made within
    // this level only collapse in the union.
    auto excluded = [&found_set](EngramId id) { return found_set.contains(id); };
    std::vector<EngramId> next;
    std::unordered_set<EngramId> next_set;
    for (EngramId id : frontier) {
      EngramId best = 0;
      if (strongest_ltm_edge(state, id, excluded, best) && next_set.insert(best).second) {
        next.push_back(best);
      }
    }
    for (EngramId id : next) {
      found_set.insert(id);
      found.push_back(id);
    }
    frontier = std::move(next);
  }
  return found;
}

RetrievalResult retrieve(const MemoryState& state) {
  const Config& cfg = state.config();
  if (state.wm().empty()) throw SequencingError("retrieve called with empty working memory");

  RetrievalResult result;
  result.wm = state.wm();

  const std::vector<EngramId> stm(state.stm().begin(), state.stm().end());
  const ScoreMap stm_scores = tier_correlations(state, stm);
  result.stm_rem = select_top_k(stm_scores, cfg.n_stm_rem);

  const auto seeds = seed_ltm(state, result.stm_rem);
  result.ltm_found = explore_ltm(state, seeds, cfg.n_depth);
  const ScoreMap ltm_scores = tier_correlations(state, result.ltm_found);
  result.ltm_rem = select_top_k(ltm_scores, cfg.n_ltm_rem);

  for (EngramId id : result.stm_rem) result.scores[id] = stm_scores.at(id);
  for (EngramId id : result.ltm_rem) result.scores[id] = ltm_scores.at(id);
  return result;
}

}  // namespace engram
