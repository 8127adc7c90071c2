#include "engram/verify.hpp"

#include <algorithm>
#include <sstream>

#include "engram/lifecycle.hpp"
#include "engram/oracle.hpp"
#include "engram/snapshot.hpp"
#include "engram/trace.hpp"

namespace engram::verify {

namespace {

std::vector<EngramId> live_ids(const MemoryState& s) {
  std::vector<EngramId> ids(s.wm().begin(), s.wm().end());
  ids.insert(ids.end(), s.stm().begin(), s.stm().end());
  ids.insert(ids.end(), s.ltm().begin(), s.ltm().end());
  return ids;
}

MemoryState state_with_at_least(std::mt19937_64& rng, std::size_t n) {
  while (true) {
    MemoryState s = oracle::random_state(rng);
    if (s.size() >= n) return s;
  }
}

std::vector<EngramId> random_subset(std::mt19937_64& rng, std::vector<EngramId> pool,
                                    std::size_t min_size, std::size_t max_size) {
  std::shuffle(pool.begin(), pool.end(), rng);
  max_size = std::min(max_size, pool.size());
  const std::size_t n = std::uniform_int_distribution<std::size_t>(min_size, max_size)(rng);
  pool.resize(n);
  return pool;
}

std::string pair_text(EngramId i, EngramId j) {
  return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

struct WeightTable {
  std::vector<EngramId> ids;
  std::vector<double> w;  // row-major over ids x ids
  double at(std::size_t a, std::size_t b) const { return w[a * ids.size() + b]; }
};

WeightTable weights_of(const MemoryState& s, std::vector<EngramId> ids) {
  WeightTable t{std::move(ids), {}};
  t.w.reserve(t.ids.size() * t.ids.size());
  for (EngramId i : t.ids) {
    for (EngramId j : t.ids) t.w.push_back(s.edge_weight(i, j));
  }
  return t;
}

Vector random_vector(std::mt19937_64& rng, std::size_t dim) {
  std::normal_distribution<double> n(0.0, 0.6);
  Vector v(dim);
  for (double& x : v) x = n(rng);
  return v;
}

ContributionWeights random_weights(std::mt19937_64& rng, const RetrievalResult& r) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  ContributionWeights w;
  for (EngramId id : r.remembered()) w[id] = u(rng);
  return w;
}

// Random states are drawn mid-step (WM populated); the first call finishes
// that step instead of starting a new one.
void random_engine_step(std::mt19937_64& rng, MemoryState& s) {
  if (!s.wm().empty()) {
    PendingStep pending{std::vector<EngramId>(s.wm().begin(), s.wm().end()), retrieve(s)};
    const auto weights = random_weights(rng, pending.retrieved);
    complete_step(s, std::move(pending), weights);
    return;
  }
  const std::size_t n = std::uniform_int_distribution<std::size_t>(0, s.config().n_wm)(rng);
  std::vector<Vector> vs;
  for (std::size_t k = 0; k < n; ++k) vs.push_back(random_vector(rng, s.config().dim));
  step(s, vs, [&rng](const RetrievalResult& r) { return random_weights(rng, r); });
}

}  // namespace

CheckResult check_locality(std::mt19937_64& rng, std::size_t cases) {
  CheckResult out{"locality", true, 0, {}};
  for (std::size_t c = 0; c < cases; ++c, ++out.cases) {
    MemoryState s = state_with_at_least(rng, 3);
    const auto ids = live_ids(s);
    const auto picked = random_subset(rng, ids, 3, 3);
    const EngramId i = picked[0], j = picked[1], k = picked[2];
    const double before = s.edge_weight(i, j);
    std::uniform_int_distribution<std::uint64_t> count(0, 9);
    s.restore_fire_count(k, count(rng));
    for (EngramId x : ids) {
      if (x != k) s.restore_count(k, x, count(rng));
    }
    const double after = s.edge_weight(i, j);
    if (after != before) {
      out.passed = false;
      out.detail = "E" + pair_text(i, j) + " changed from " + std::to_string(before) + " to " +
                   std::to_string(after) + " after mutating counts of engram " + std::to_string(k);
      return out;
    }
  }
  return out;
}

CheckResult check_cooperativity(std::mt19937_64& rng, std::size_t cases) {
  CheckResult out{"cooperativity", true, 0, {}};
  for (std::size_t c = 0; c < cases; ++c, ++out.cases) {
    MemoryState s = state_with_at_least(rng, 2);
    const auto ids = live_ids(s);
    const auto act = random_subset(rng, ids, 1, 6);
    const auto pre = weights_of(s, ids);
    record_cofiring(s, act);
    const auto post = weights_of(s, ids);
    auto fired = [&](EngramId id) { return std::find(act.begin(), act.end(), id) != act.end(); };
    for (std::size_t a = 0; a < ids.size(); ++a) {
      for (std::size_t b = 0; b < ids.size(); ++b) {
        if (a == b) continue;
        const bool both = fired(ids[a]) && fired(ids[b]);
        const double w0 = pre.at(a, b), w1 = post.at(a, b);
        // A weight already at 1 cannot rise; every other co-fired pair must.
        const bool ok = both ? (w0 < 1.0 ? w1 > w0 : w1 == w0) : !(w1 > w0);
        if (!ok) {
          out.passed = false;
          out.detail = "E" + pair_text(ids[a], ids[b]) + " went " + std::to_string(w0) + " -> " +
                       std::to_string(w1) + (both ? " with both firing" : " without both firing");
          return out;
        }
      }
    }
  }
  return out;
}

CheckResult check_synaptic_depression(std::mt19937_64& rng, std::size_t cases) {
  CheckResult out{"synaptic_depression", true, 0, {}};
  for (std::size_t c = 0; c < cases; ++c, ++out.cases) {
    MemoryState s = state_with_at_least(rng, 3);
    const auto ids = live_ids(s);
    const auto act = random_subset(rng, ids, 1, 6);
    auto fired = [&](EngramId id) { return std::find(act.begin(), act.end(), id) != act.end(); };

    struct Watch {
      EngramId i, j;
      std::uint64_t cij, cii;
      double pre;
    };
    std::vector<Watch> watched;
    for (EngramId i : act) {
      for (EngramId j : ids) {
        if (fired(j)) continue;
        const auto cij = s.count(i, j);
        if (cij > 0) watched.push_back({i, j, cij, s.count(i, i), s.edge_weight(i, j)});
      }
    }
    record_cofiring(s, act);
    for (const auto& w : watched) {
      const double expected = static_cast<double>(w.cij) / static_cast<double>(w.cii + 1);
      const double got = s.edge_weight(w.i, w.j);
      if (got != expected || !(got < w.pre)) {
        out.passed = false;
        out.detail = "E" + pair_text(w.i, w.j) + " = " + std::to_string(got) + ", expected " +
                     std::to_string(expected) + " below " + std::to_string(w.pre);
        return out;
      }
    }
  }
  return out;
}

CheckResult check_boundedness(std::mt19937_64& rng, std::size_t cases) {
  CheckResult out{"boundedness", true, 0, {}};
  for (std::size_t c = 0; c < cases; ++c, ++out.cases) {
    MemoryState s = state_with_at_least(rng, 1);
    const std::size_t steps = std::uniform_int_distribution<std::size_t>(0, 6)(rng);
    for (std::size_t t = 0; t <= steps; ++t) {
      const auto ids = live_ids(s);
      for (EngramId i : ids) {
        for (const auto& [j, _] : s.graph().neighbours(i)) {
          const double w = s.edge_weight(i, j);
          if (!(w >= 0.0 && w <= 1.0)) {
            out.passed = false;
            out.detail = "E" + pair_text(i, j) + " = " + std::to_string(w);
            return out;
          }
        }
      }
      if (t < steps) random_engine_step(rng, s);
    }
  }
  return out;
}

CheckResult check_competition(std::mt19937_64& rng, std::size_t cases) {
  CheckResult out{"competition", true, 0, {}};
  for (std::size_t c = 0; c < cases; ++c, ++out.cases) {
    MemoryState s = state_with_at_least(rng, 3);
    const auto pair = random_subset(rng, live_ids(s), 2, 2);
    const EngramId i = pair[0], j = pair[1];
    std::vector<std::pair<EngramId, double>> others;
    for (const auto& [k, count] : s.graph().neighbours(i)) {
      if (k != j && count > 0) others.emplace_back(k, s.edge_weight(i, k));
    }
    record_cofiring(s, pair);
    for (const auto& [k, before] : others) {
      const double after = s.edge_weight(i, k);
      if (!(after < before)) {
        out.passed = false;
        out.detail = "E" + pair_text(i, k) + " did not drop when " + std::to_string(i) +
                     " fired with " + std::to_string(j);
        return out;
      }
    }
  }
  return out;
}

CheckResult check_long_term_stability(std::mt19937_64& rng, std::size_t cases) {
  CheckResult out{"long_term_stability", true, 0, {}};
  for (std::size_t c = 0; c < cases; ++c, ++out.cases) {
    MemoryState s = state_with_at_least(rng, 1);
    const std::size_t steps = std::uniform_int_distribution<std::size_t>(1, 6)(rng);
    for (std::size_t t = 0; t < steps; ++t) {
      const auto before = oracle::live_counts(s);
      random_engine_step(rng, s);
      for (const auto& [id, f] : before.fire) {
        if (s.contains(id) && s.engram(id).fire_count < f) {
          out.passed = false;
          out.detail = "fire count of " + std::to_string(id) + " decreased";
          return out;
        }
      }
      for (const auto& [p, count] : before.pairs) {
        if (s.contains(p.first) && s.contains(p.second) && s.count(p.first, p.second) < count) {
          out.passed = false;
          out.detail = "Count" + pair_text(p.first, p.second) + " decreased";
          return out;
        }
      }
    }
  }
  return out;
}

std::vector<CheckResult> hebbian_suite(std::uint64_t seed, std::size_t cases) {
  std::mt19937_64 rng(seed);
  return {check_locality(rng, cases),      check_cooperativity(rng, cases),
          check_synaptic_depression(rng, cases), check_boundedness(rng, cases),
          check_competition(rng, cases),   check_long_term_stability(rng, cases)};
}

DifferentialResult differential_retrieval(std::uint64_t seed, std::size_t cases,
                                          const RetrieveFn& candidate) {
  DifferentialResult out{{"differential_retrieval", true, 0, {}}, std::nullopt};
  std::mt19937_64 rng(seed);
  for (std::size_t c = 0; c < cases; ++c, ++out.check.cases) {
    const MemoryState s = oracle::random_state(rng);
    const RetrievalResult got = candidate(s);
    const RetrievalResult want = oracle::reference_retrieve(s);
    std::string field;
    if (got.stm_rem != want.stm_rem) field = "stm_rem";
    else if (got.ltm_found != want.ltm_found) field = "ltm_found";
    else if (got.ltm_rem != want.ltm_rem) field = "ltm_rem";
    else if (got.wm != want.wm) field = "wm";
    else if (got.scores != want.scores) field = "scores";
    if (!field.empty()) {
      out.check.passed = false;
      out.check.detail = "case " + std::to_string(c) + ": " + field + " differs from reference";
      out.divergent_snapshot = serialize_snapshot(s);
      return out;
    }
  }
  return out;
}

CheckResult recount_equality(std::uint64_t seed, std::size_t steps) {
  CheckResult out{"recount_from_trace", true, steps, {}};
  Config cfg;
  cfg.alpha = 2.0;
  cfg.n_stm_rem = 5;
  cfg.n_ltm_rem = 5;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, 0.35);
  std::vector<Vector> topics;
  for (int t = 0; t < 8; ++t) topics.push_back(random_vector(rng, cfg.dim));

  Engine engine(cfg);
  std::ostringstream sink;
  TraceWriter writer(sink, cfg);
  engine.attach_trace(&writer);
  for (std::size_t t = 0; t < steps; ++t) {
    const Vector& centre = topics[std::uniform_int_distribution<std::size_t>(0, topics.size() - 1)(rng)];
    std::vector<Vector> vs(cfg.n_wm, centre);
    for (auto& v : vs) {
      for (double& x : v) x += noise(rng);
    }
    engine.step(vs, [](const RetrievalResult& r) {
      ContributionWeights w;
      for (EngramId id : r.remembered()) w[id] = 1.0;
      return w;
    });
  }
  std::istringstream in(sink.str());
  const auto rebuilt = oracle::recount_from_trace(parse_trace(in));
  const auto live = oracle::live_counts(engine.state());
  if (rebuilt != live) {
    out.passed = false;
    out.detail = "recount has " + std::to_string(rebuilt.pairs.size()) + " pairs / " +
                 std::to_string(rebuilt.fire.size()) + " fired engrams, engine has " +
                 std::to_string(live.pairs.size()) + " / " + std::to_string(live.fire.size());
  }
  return out;
}

bool VerifyReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

VerifyReport run_verification(std::uint64_t seed, std::size_t iterations) {
  VerifyReport report;
  if (iterations == 0) {
    report.warnings.push_back("zero iterations requested; nothing was checked");
    return report;
  }
  auto diff = differential_retrieval(seed, iterations);
  report.checks.push_back(diff.check);
  report.divergent_snapshot = std::move(diff.divergent_snapshot);
  report.checks.push_back(recount_equality(seed, 500));
  for (auto& c : hebbian_suite(seed + 1, iterations)) report.checks.push_back(std::move(c));
  return report;
}

}  // namespace engram::verify
