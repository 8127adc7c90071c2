#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "engram/retrieval.hpp"
#include "engram/store.hpp"

namespace engram::verify {

struct CheckResult {
  std::string name;
  bool passed = true;
  std::size_t cases = 0;
  std::string detail;  // first failure, if any
};

/// Hebbian plasticity properties of the count graph. Each check draws a fresh
/// random state per case from `rng` and returns at the first violation.
CheckResult check_locality(std::mt19937_64& rng, std::size_t cases);
CheckResult check_cooperativity(std::mt19937_64& rng, std::size_t cases);
CheckResult check_synaptic_depression(std::mt19937_64& rng, std::size_t cases);
CheckResult check_boundedness(std::mt19937_64& rng, std::size_t cases);
CheckResult check_competition(std::mt19937_64& rng, std::size_t cases);
CheckResult check_long_term_stability(std::mt19937_64& rng, std::size_t cases);

std::vector<CheckResult> hebbian_suite(std::uint64_t seed, std::size_t cases);

struct DifferentialResult {
  CheckResult check;
  // Snapshot of the first state on which the two implementations disagreed.
  std::optional<std::string> divergent_snapshot;
};

using RetrieveFn = std::function<RetrievalResult(const MemoryState&)>;

/// retrieve() against oracle::reference_retrieve on `cases` random states.
DifferentialResult differential_retrieval(std::uint64_t seed, std::size_t cases,
                                          const RetrieveFn& candidate = retrieve);

/// Runs a Hebbian simulation for `steps` steps, writes its trace to memory,
/// re-parses it and compares recount_from_trace against the live counts.
CheckResult recount_equality(std::uint64_t seed, std::size_t steps);

struct VerifyReport {
  std::vector<CheckResult> checks;
  std::optional<std::string> divergent_snapshot;
  std::vector<std::string> warnings;

  bool passed() const;
};

/// The full campaign behind `engram verify`.
VerifyReport run_verification(std::uint64_t seed, std::size_t iterations);

}  // namespace engram::verify
