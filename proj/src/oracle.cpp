#include "engram/oracle.hpp"

#include <algorithm>
#include <cmath>

namespace engram::oracle {

namespace {

double mean_cue_score(const MemoryState& state, EngramId candidate) {
  const Vector& x = state.engram(candidate).vector;
  double total = 0.0;
  for (EngramId cue : state.wm()) {
    const Vector& y = state.engram(cue).vector;
    double d2 = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) d2 += (x[k] - y[k]) * (x[k] - y[k]);
    total += std::exp(-d2);
  }
  return total / static_cast<double>(state.wm().size());
}

// Repeated selection: take the best remaining candidate k times.
std::vector<EngramId> pick_best(std::vector<std::pair<EngramId, double>> pool, std::size_t k) {
  std::vector<EngramId> out;
  while (out.size() < k && !pool.empty()) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < pool.size(); ++i) {
      const bool higher = pool[i].second > pool[best].second;
      const bool tie_older = pool[i].second == pool[best].second && pool[i].first < pool[best].first;
      if (higher || tie_older) best = i;
    }
    out.push_back(pool[best].first);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(best));
  }
  return out;
}

bool in(const std::vector<EngramId>& v, EngramId id) {
  return std::find(v.begin(), v.end(), id) != v.end();
}

// Scans the whole LTM in ascending id order, so strict '>' keeps the smaller id on ties.
bool best_ltm_target(const MemoryState& state, EngramId from, const std::vector<EngramId>& skip,
                     EngramId& out) {
  const double fired = static_cast<double>(state.engram(from).fire_count);
  double best = 0.0;
  bool found = false;
  for (EngramId to : state.ltm()) {
    if (to == from || in(skip, to)) continue;
    if (fired == 0.0) continue;
    const double w = static_cast<double>(state.graph().count(from, to)) / fired;
    if (w > 0.0 && w > best) {
      best = w;
      out = to;
      found = true;
    }
  }
  return found;
}

}  // namespace

RetrievalResult reference_retrieve(const MemoryState& state) {
  if (state.wm().empty()) throw SequencingError("reference_retrieve needs a populated working memory");
  const Config& cfg = state.config();
  RetrievalResult r;
  r.wm = state.wm();

  std::vector<std::pair<EngramId, double>> stm_pool;
  for (EngramId id : state.stm()) stm_pool.emplace_back(id, mean_cue_score(state, id));
  r.stm_rem = pick_best(stm_pool, cfg.n_stm_rem);

  std::vector<EngramId> level;
  for (EngramId s : r.stm_rem) {
    EngramId target = 0;
    if (best_ltm_target(state, s, {}, target) && !in(level, target)) level.push_back(target);
  }
  std::vector<EngramId> found = level;
  for (std::size_t depth = 1; depth <= cfg.n_depth; ++depth) {
    const std::vector<EngramId> previous_found = found;
    std::vector<EngramId> next;
    for (EngramId from : level) {
      EngramId target = 0;
      if (best_ltm_target(state, from, previous_found, target) && !in(next, target)) {
        next.push_back(target);
      }
    }
    if (next.empty()) break;
    for (EngramId id : next) found.push_back(id);
    level = next;
  }
  r.ltm_found = found;

  std::vector<std::pair<EngramId, double>> ltm_pool;
  for (EngramId id : found) ltm_pool.emplace_back(id, mean_cue_score(state, id));
  r.ltm_rem = pick_best(ltm_pool, cfg.n_ltm_rem);

  for (const auto& [id, score] : stm_pool) {
    if (in(r.stm_rem, id)) r.scores[id] = score;
  }
  for (const auto& [id, score] : ltm_pool) {
    if (in(r.ltm_rem, id)) r.scores[id] = score;
  }
  return r;
}

std::vector<EngramId> full_ltm_search(const MemoryState& state, std::size_t k) {
  if (state.wm().empty()) throw SequencingError("full_ltm_search needs a populated working memory");
  std::vector<std::pair<EngramId, double>> pool;
  for (EngramId id : state.ltm()) pool.emplace_back(id, mean_cue_score(state, id));
  return pick_best(pool, k);
}

CoFireRule random_wire_rule(std::mt19937_64& rng) {
  return [&rng](MemoryState& state, std::span<const EngramId> act) {
    for (EngramId id : act) state.increment_fire_count(id);
    const std::vector<EngramId> ltm(state.ltm().begin(), state.ltm().end());
    if (ltm.empty()) {
      for (std::size_t a = 0; a < act.size(); ++a) {
        for (std::size_t b = a + 1; b < act.size(); ++b) state.increment_count(act[a], act[b]);
      }
      return;
    }
    if (act.size() < 2) return;
    const std::size_t draws = act.size() * (act.size() - 1) / 2;
    std::uniform_int_distribution<std::size_t> pick_act(0, act.size() - 1);
    std::uniform_int_distribution<std::size_t> pick_ltm(0, ltm.size() - 1);
    for (std::size_t n = 0; n < draws; ++n) {
      const EngramId from = act[pick_act(rng)];
      EngramId to = ltm[pick_ltm(rng)];
      if (to == from) {
        if (ltm.size() == 1) {
          // Only partner available is the engram itself; wire within act instead.
          EngramId other = from;
          while (other == from) other = act[pick_act(rng)];
          to = other;
        } else {
          while (to == from) to = ltm[pick_ltm(rng)];
        }
      }
      state.increment_count(from, to);
    }
  };
}

StepReport random_wire_step(Engine& engine, std::span<const Vector> vectors,
                            const ContributionSource& contributions, std::mt19937_64& rng) {
  return engine.step(vectors, contributions, random_wire_rule(rng));
}

CountTable recount_from_trace(const TraceLog& log) {
  // Symmetric adjacency so that a pruned engram's counts can be dropped
  // without scanning every pair.
  std::map<EngramId, std::uint64_t> fire;
  std::map<EngramId, std::map<EngramId, std::uint64_t>> adj;
  for (const StepReport& r : log.records) {
    if (r.reset) {
      fire.clear();
      adj.clear();
    }
    std::vector<EngramId> act = r.created;
    for (EngramId id : r.retrieved.stm_rem) act.push_back(id);
    for (EngramId id : r.retrieved.ltm_rem) act.push_back(id);
    for (EngramId a : act) {
      fire[a] += 1;
      for (EngramId b : act) {
        if (a != b) adj[a][b] += 1;
      }
    }
    for (EngramId dead : r.pruned) {
      fire.erase(dead);
      auto row = adj.find(dead);
      if (row == adj.end()) continue;
      for (const auto& [peer, _] : row->second) adj[peer].erase(dead);
      adj.erase(row);
    }
  }
  CountTable t;
  for (const auto& [id, f] : fire) {
    if (f > 0) t.fire[id] = f;
  }
  for (const auto& [a, row] : adj) {
    for (const auto& [b, c] : row) {
      if (a < b) t.pairs[{a, b}] = c;
    }
  }
  return t;
}

CountTable live_counts(const MemoryState& state) {
  CountTable t;
  auto add = [&](EngramId id) {
    const auto f = state.engram(id).fire_count;
    if (f > 0) t.fire[id] = f;
  };
  for (EngramId id : state.wm()) add(id);
  for (EngramId id : state.stm()) add(id);
  for (EngramId id : state.ltm()) add(id);
  for (const auto& c : state.graph().triples()) t.pairs[{c.i, c.j}] = c.count;
  return t;
}

MemoryState random_state(std::mt19937_64& rng, std::size_t max_engrams) {
  auto uniform = [&rng](std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
  };
  Config cfg;
  cfg.dim = uniform(1, 4);
  cfg.n_wm = uniform(1, 5);
  cfg.stm_capacity = uniform(1, 12);
  cfg.n_stm_rem = uniform(1, cfg.stm_capacity);
  cfg.n_ltm_rem = uniform(1, 8);
  cfg.n_depth = uniform(0, 5);
  cfg.initial_lifespan = static_cast<double>(uniform(1, 9));
  cfg.alpha = static_cast<double>(uniform(1, 8));
  MemoryState state(cfg);

  const std::size_t total = uniform(cfg.n_wm, std::max(cfg.n_wm, max_engrams));
  const std::size_t n_wm = uniform(1, cfg.n_wm);
  const std::size_t n_stm = std::min(cfg.stm_capacity, uniform(0, total - n_wm));
  const std::size_t n_ltm = total - n_wm - n_stm;

  // Lattice coordinates in {-1, -0.5, 0, 0.5, 1} make identical vectors and
  // equal scores common.
  auto lattice_vector = [&]() {
    Vector v(cfg.dim);
    for (double& x : v) x = 0.5 * (static_cast<double>(uniform(0, 4)) - 2.0);
    return v;
  };

  std::uint64_t step = 50;
  EngramId id = uniform(0, 3);
  std::vector<EngramId> fired;
  auto add = [&](Tier tier, std::size_t n, std::uint64_t created) {
    for (std::size_t k = 0; k < n; ++k) {
      Engram e;
      e.id = id;
      id += uniform(1, 2);
      e.vector = lattice_vector();
      e.tier = tier;
      e.lifespan = 0.5 + static_cast<double>(uniform(0, 20)) * 0.5;
      e.creation_step = created;
      e.fire_count = tier == Tier::WorkingMemory ? 0 : uniform(0, 6);
      state.restore_engram(e);
      if (e.fire_count > 0) fired.push_back(e.id);
    }
  };
  add(Tier::LongTermMemory, n_ltm, 1);
  add(Tier::ShortTermMemory, n_stm, 30);
  add(Tier::WorkingMemory, n_wm, step);

  const double density = 0.2 + 0.6 * std::uniform_real_distribution<double>(0, 1)(rng);
  std::bernoulli_distribution connect(density);
  for (std::size_t a = 0; a < fired.size(); ++a) {
    for (std::size_t b = a + 1; b < fired.size(); ++b) {
      if (!connect(rng)) continue;
      const auto cap = std::min(state.engram(fired[a]).fire_count, state.engram(fired[b]).fire_count);
      state.restore_count(fired[a], fired[b], uniform(1, cap));
    }
  }
  state.restore_clock(step, id);
  return state;
}

}  // namespace engram::oracle
