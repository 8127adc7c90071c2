#include <doctest.h>

#include <sstream>

#include "engram/oracle.hpp"
#include "engram/snapshot.hpp"
#include "engram/verify.hpp"

using namespace engram;

TEST_CASE("each Hebbian property holds on random states") {
  for (const auto& c : verify::hebbian_suite(77, 200)) {
    INFO(c.name << ": " << c.detail);
    CHECK(c.passed);
    CHECK(c.cases == 200);
  }
}

TEST_CASE("the differential campaign passes for retrieve") {
  const auto d = verify::differential_retrieval(5, 200);
  CHECK(d.check.passed);
  CHECK(!d.divergent_snapshot);
}

TEST_CASE("a broken candidate is caught with its state serialized") {
  // Reverses stm_rem whenever it has two or more entries.
  const verify::RetrieveFn broken = [](const MemoryState& s) {
    RetrievalResult r = retrieve(s);
    std::reverse(r.stm_rem.begin(), r.stm_rem.end());
    return r;
  };
  const auto d = verify::differential_retrieval(5, 500, broken);
  CHECK(!d.check.passed);
  REQUIRE(d.divergent_snapshot);
  std::istringstream in(*d.divergent_snapshot);
  const MemoryState s = parse_snapshot(in);
  CHECK(broken(s) != oracle::reference_retrieve(s));
}

TEST_CASE("recount equality after a short run") {
  const auto c = verify::recount_equality(3, 120);
  CHECK(c.passed);
}

TEST_CASE("zero iterations is a vacuous pass with a warning") {
  const auto r = verify::run_verification(1, 0);
  CHECK(r.passed());
  CHECK(r.checks.empty());
  CHECK(r.warnings.size() == 1);
}
