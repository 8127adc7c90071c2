#include <doctest.h>

#include <sstream>

#include "engram/snapshot.hpp"
#include "engram/trace.hpp"
#include "fixtures.hpp"

using namespace engram;

namespace {

MemoryState evolved(std::uint64_t seed, int steps) {
  MemoryState s(fixtures::small_config());
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < steps; ++t) {
    step(s, fixtures::random_vectors(rng, 4, 2), [&](const RetrievalResult& r) {
      ContributionWeights w;
      for (EngramId id : r.remembered()) w[id] = u(rng);
      return w;
    });
  }
  return s;
}

TraceLog parse_text(const std::string& text) {
  std::istringstream in(text);
  return parse_trace(in);
}

const std::string kHeader =
    "#engram-trace v1\n#config dim=2 n_wm=4 stm_capacity=8 n_stm_rem=3 n_ltm_rem=3 n_depth=2 "
    "initial_lifespan=9 alpha=2\n";

std::string record(const std::string& step, const std::string& created, const std::string& stm_rem = "",
                   const std::string& pruned = "") {
  return "step=" + step + "\treset=0\tcreated=" + created + "\tstm_rem=" + stm_rem +
         "\tltm_rem=\tltm_found=\tinc=\tpruned=" + pruned + "\tpromoted=\tstm=0\tltm=0\tlifespan=0\n";
}

}  // namespace

TEST_CASE("snapshots round-trip bit-exactly") {
  MemoryState s = evolved(7, 40);
  s.add_working_memory(std::vector<Vector>{{0.1 + 0.2, 1.0 / 3.0}});
  const std::string text = serialize_snapshot(s);
  std::istringstream in(text);
  const MemoryState back = parse_snapshot(in);
  CHECK(back == s);
  CHECK(serialize_snapshot(back) == text);
  CHECK(back.engram(s.wm().front()).vector[0] == 0.1 + 0.2);
}

TEST_CASE("snapshot parse errors carry line numbers") {
  const std::string good = serialize_snapshot(evolved(3, 5));
  SUBCASE("missing end marker") {
    std::istringstream in(good.substr(0, good.rfind("end")));
    CHECK_THROWS_AS(parse_snapshot(in), ParseError);
  }
  SUBCASE("bad version") {
    std::istringstream in("#engram-snapshot v9\n");
    try {
      parse_snapshot(in);
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 1);
    }
  }
  SUBCASE("garbage record") {
    std::string bad = good;
    bad.insert(bad.find("clock"), "engram x\n");
    std::istringstream in(bad);
    try {
      parse_snapshot(in);
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 3);
    }
  }
}

TEST_CASE("trace records round-trip") {
  Engine e(fixtures::small_config());
  std::ostringstream out;
  TraceWriter w(out, e.state().config());
  e.attach_trace(&w);
  std::mt19937_64 rng(9);
  std::vector<StepReport> reports;
  for (int t = 0; t < 80; ++t) {
    if (t == 50) e.reset();
    reports.push_back(e.step(fixtures::random_vectors(rng, 1 + t % 4, 2), fixtures::uniform));
  }
  const TraceLog log = parse_text(out.str());
  CHECK(log.config == e.state().config());
  REQUIRE(log.records.size() == reports.size());
  for (std::size_t i = 0; i < reports.size(); ++i) {
    StepReport expected = reports[i];
    expected.retrieved.wm = expected.created;
    CHECK(log.records[i] == expected);
  }
  CHECK(log.records[50].reset);
}

TEST_CASE("trace validation") {
  CHECK(parse_text(kHeader).records.empty());
  CHECK(parse_text(kHeader + record("0", "0,1") + record("1", "2", "0:0.5")).records.size() == 2);

  auto line_of_error = [](const std::string& text) -> std::size_t {
    try {
      parse_text(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return 0;
  };
  CHECK(line_of_error(kHeader + record("1", "0") + record("1", "1")) == 4);        // step not increasing
  CHECK(line_of_error(kHeader + record("0", "0") + record("1", "0")) == 4);        // created twice
  CHECK(line_of_error(kHeader + record("0", "0") + record("1", "1", "7:1")) == 4);  // unknown id
  CHECK(line_of_error(kHeader + record("0", "0", "", "0") + record("1", "1", "0:1")) == 4);  // pruned id
  CHECK(line_of_error(kHeader + "step=0\treset=0\n") == 3);
  CHECK(line_of_error("#engram-trace v2\n") == 1);
  CHECK(line_of_error(kHeader + record("x", "0")) == 3);
}
