#include <doctest.h>

#include <sstream>

#include "engram/oracle.hpp"
#include "engram/retrieval.hpp"
#include "engram/trace.hpp"
#include "fixtures.hpp"

using namespace engram;
using fixtures::make;

TEST_CASE("reference_retrieve on empty tiers") {
  MemoryState s(fixtures::small_config());
  s.add_working_memory(std::vector<Vector>{{0, 0}});
  const auto r = oracle::reference_retrieve(s);
  CHECK(r.stm_rem.empty());
  CHECK(r.ltm_found.empty());
  CHECK(r.ltm_rem.empty());
  CHECK(r == retrieve(s));
}

TEST_CASE("reference_retrieve walks the chain fixture like explore_ltm") {
  MemoryState s(fixtures::small_config());
  s.restore_engram(make(0, Tier::WorkingMemory, {0, 0}));
  s.restore_engram(make(1, Tier::ShortTermMemory, {0, 0}, 5, 0, 1));
  for (EngramId id = 10; id < 13; ++id) s.restore_engram(make(id, Tier::LongTermMemory, {0, 0}, 5, 0, 1));
  s.restore_count(1, 10, 1);
  s.restore_count(10, 11, 1);
  s.restore_count(11, 12, 1);
  const auto r = oracle::reference_retrieve(s);
  CHECK(r.ltm_found == std::vector<EngramId>{10, 11, 12});
  CHECK(r == retrieve(s));
}

TEST_CASE("reference_retrieve agrees with retrieve on random states") {
  std::mt19937_64 rng(2024);
  for (int c = 0; c < 300; ++c) {
    const MemoryState s = oracle::random_state(rng);
    REQUIRE(s.size() <= 40);
    CHECK(oracle::reference_retrieve(s) == retrieve(s));
  }
}

TEST_CASE("full_ltm_search") {
  MemoryState s(fixtures::small_config());
  s.restore_engram(make(0, Tier::WorkingMemory, {0, 0}));
  s.restore_engram(make(1, Tier::LongTermMemory, {2, 0}));
  s.restore_engram(make(2, Tier::LongTermMemory, {0.5, 0}));
  s.restore_engram(make(3, Tier::LongTermMemory, {1, 0}));
  CHECK(oracle::full_ltm_search(s, 10) == std::vector<EngramId>{2, 3, 1});
  CHECK(oracle::full_ltm_search(s, 2) == std::vector<EngramId>{2, 3});

  MemoryState no_wm(fixtures::small_config());
  CHECK_THROWS_AS(oracle::full_ltm_search(no_wm, 3), SequencingError);
}

TEST_CASE("full_ltm_search matches graph retrieval when the walk reaches every LTM engram") {
  MemoryState s(fixtures::small_config());
  s.restore_engram(make(0, Tier::WorkingMemory, {0, 0}));
  s.restore_engram(make(1, Tier::ShortTermMemory, {0, 0}, 5, 0, 1));
  s.restore_engram(make(10, Tier::LongTermMemory, {1, 0}, 5, 0, 1));
  s.restore_engram(make(11, Tier::LongTermMemory, {0.2, 0}, 5, 0, 1));
  s.restore_engram(make(12, Tier::LongTermMemory, {3, 0}, 5, 0, 1));
  s.restore_count(1, 10, 1);
  s.restore_count(10, 11, 1);
  s.restore_count(11, 12, 1);
  const auto r = retrieve(s);
  const auto full = oracle::full_ltm_search(s, s.config().n_ltm_rem);
  CHECK(r.ltm_rem == full);
}

TEST_CASE("random_wire_step") {
  const Config c = fixtures::small_config();
  SUBCASE("empty LTM degenerates to the Hebbian step") {
    Engine a(c), b(c);
    std::mt19937_64 rng(1), wiring(99);
    for (int t = 0; t < 2; ++t) {
      const auto vs = fixtures::random_vectors(rng, 4, 2);
      REQUIRE(a.state().ltm().empty());
      CHECK(oracle::random_wire_step(a, vs, fixtures::uniform, wiring) == b.step(vs, fixtures::uniform));
    }
    CHECK(a.state() == b.state());
  }
  SUBCASE("fixed seed reproduces reports") {
    Engine a(c), b(c);
    std::mt19937_64 ra(5), rb(5), wa(6), wb(6);
    for (int t = 0; t < 40; ++t) {
      const auto va = fixtures::random_vectors(ra, 4, 2), vb = fixtures::random_vectors(rb, 4, 2);
      CHECK(oracle::random_wire_step(a, va, fixtures::uniform, wa) ==
            oracle::random_wire_step(b, vb, fixtures::uniform, wb));
    }
    CHECK(a.state() == b.state());
  }
  SUBCASE("total count increase matches the Hebbian rule") {
    Engine e(c);
    std::mt19937_64 rng(12), wiring(3);
    for (int t = 0; t < 30; ++t) {
      oracle::random_wire_step(e, fixtures::random_vectors(rng, 4, 2), fixtures::uniform, wiring);
    }
    REQUIRE(!e.state().ltm().empty());
    // Pair counts plus fire counts over every live engram.
    auto total = [](const MemoryState& s) {
      std::uint64_t sum = 0;
      for (const auto& t : s.graph().triples()) sum += t.count;
      for (const auto& [i, _] : oracle::live_counts(s).fire) sum += s.engram(i).fire_count;
      return sum;
    };
    MemoryState hebb = e.state();
    hebb.add_working_memory(fixtures::random_vectors(rng, 4, 2));
    MemoryState rand = hebb;
    const auto act = retrieve(hebb).activated();
    REQUIRE(act.size() >= 2);
    const auto before = total(hebb);
    record_cofiring(hebb, act);
    oracle::random_wire_rule(wiring)(rand, act);
    CHECK(total(hebb) - before == act.size() * (act.size() + 1) / 2);
    CHECK(total(rand) == total(hebb));
  }
}

TEST_CASE("recount_from_trace") {
  SUBCASE("empty log") {
    TraceLog log;
    const auto t = oracle::recount_from_trace(log);
    CHECK(t.fire.empty());
    CHECK(t.pairs.empty());
  }
  SUBCASE("single step with two engrams") {
    std::istringstream in(
        "#engram-trace v1\n#config dim=2 n_wm=4 stm_capacity=8 n_stm_rem=3 n_ltm_rem=3 n_depth=2 "
        "initial_lifespan=9 alpha=2\n"
        "step=0\treset=0\tcreated=0,1\tstm_rem=\tltm_rem=\tltm_found=\tinc=\tpruned=\tpromoted=\tstm=2\tltm=0\tlifespan=16\n");
    const auto t = oracle::recount_from_trace(parse_trace(in));
    CHECK(t.fire == std::map<EngramId, std::uint64_t>{{0, 1}, {1, 1}});
    CHECK(t.pairs.size() == 1);
    CHECK(t.pairs.at({0, 1}) == 1);
  }
  SUBCASE("simulation with resets") {
    Engine e(fixtures::small_config());
    std::ostringstream out;
    TraceWriter w(out, e.state().config());
    e.attach_trace(&w);
    std::mt19937_64 rng(31);
    for (int t = 0; t < 200; ++t) {
      if (t % 70 == 69) e.reset();
      e.step(fixtures::random_vectors(rng, 4, 2), fixtures::uniform);
    }
    std::istringstream in(out.str());
    CHECK(oracle::recount_from_trace(parse_trace(in)) == oracle::live_counts(e.state()));
  }
}
