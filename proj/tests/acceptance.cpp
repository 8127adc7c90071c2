// Acceptance runner: one PASS/FAIL line per criterion.
//   acceptance                 run everything
//   acceptance --only NAME     run one criterion
//   acceptance --list          print criterion names

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "acf_fixture.hpp"
#include "engram/analysis.hpp"
#include "engram/lifecycle.hpp"
#include "engram/oracle.hpp"
#include "engram/retrieval.hpp"
#include "engram/simulation.hpp"
#include "engram/trace.hpp"
#include "engram/verify.hpp"

using namespace engram;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool passed = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(double v, int precision = 3) {
  std::ostringstream s;
  s.precision(precision);
  s << v;
  return s.str();
}

ContributionWeights uniform(const RetrievalResult& r) {
  ContributionWeights w;
  for (EngramId id : r.remembered()) w[id] = 1.0;
  return w;
}

std::vector<Vector> gaussian_vectors(std::mt19937_64& rng, std::size_t n, std::size_t dim) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<Vector> out(n, Vector(dim));
  for (auto& v : out) {
    for (double& x : v) x = g(rng);
  }
  return out;
}

Outcome check_suite(const std::vector<verify::CheckResult>& checks, double elapsed, double limit) {
  Outcome o{true, {}};
  std::size_t min_cases = SIZE_MAX;
  for (const auto& c : checks) {
    min_cases = std::min(min_cases, c.cases);
    if (!c.passed) {
      o.passed = false;
      o.detail += c.name + " failed: " + c.detail + "; ";
    }
  }
  if (elapsed >= limit) o.passed = false;
  o.detail += std::to_string(checks.size()) + " checks, >= " + std::to_string(min_cases) + " cases each, " +
              fmt(elapsed) + " s (limit " + fmt(limit) + " s)";
  return o;
}

Outcome hebbian_properties() {
  const auto start = Clock::now();
  const auto checks = verify::hebbian_suite(2024, 1000);
  Outcome o = check_suite(checks, seconds_since(start), 60.0);
  for (const auto& c : checks) o.passed = o.passed && c.cases >= 1000;
  return o;
}

Outcome differential_retrieval() {
  const auto start = Clock::now();
  const auto d = verify::differential_retrieval(2024, 1000);
  Outcome o = check_suite({d.check}, seconds_since(start), 60.0);
  o.passed = o.passed && d.check.cases >= 1000 && !d.divergent_snapshot;
  return o;
}

Outcome count_reconstruction() {
  const auto start = Clock::now();
  const auto c = verify::recount_equality(2024, 500);
  Outcome o = check_suite({c}, seconds_since(start), 30.0);
  o.passed = o.passed && c.cases == 500;
  return o;
}

Outcome reinforcement_conservation() {
  std::size_t runs = 0, steps = 0, violations = 0;
  double worst = 0.0;
  const auto check_run = [&](const RunManifest& m) {
    const auto result = run_simulation(m);
    ++runs;
    for (const auto& r : result.reports) {
      ++steps;
      double sum = 0.0;
      for (const auto& [_, inc] : r.increments) sum += inc;
      const double expected = static_cast<double>(r.retrieved.remembered().size()) * m.config.alpha;
      const double rel = std::abs(sum - expected) / std::max(1.0, std::abs(expected));
      worst = std::max(worst, rel);
      if (rel > 1e-9) ++violations;
    }
  };
  std::uint64_t seed = 1;
  for (auto workload : {WorkloadKind::IidGaussian, WorkloadKind::ClusteredTopics, WorkloadKind::Drifting,
                        WorkloadKind::MotifReplay}) {
    for (auto contribution : {ContributionModel::Kind::Uniform, ContributionModel::Kind::CorrelationSoftmax,
                              ContributionModel::Kind::OracleTask}) {
      for (auto wiring : {Wiring::Hebbian, Wiring::RandomWire}) {
        RunManifest m;
        m.config.dim = m.workload.dim = 8;
        m.config.n_wm = m.workload.vectors_per_step = 8;
        m.config.stm_capacity = 40;
        m.config.n_stm_rem = 6;
        m.config.n_ltm_rem = 4;
        m.config.n_depth = 3;
        m.config.initial_lifespan = 12;
        m.config.alpha = 0.1 + 0.7 * static_cast<double>(seed);
        m.workload.kind = workload;
        m.workload.steps = 300;
        m.workload.motif_period = 7;
        m.workload.motif_length = 10;
        m.contribution.kind = contribution;
        m.contribution.temperature = 0.3;
        // Zero off-task weight exercises the all-zero fallback on off-topic steps.
        m.contribution.off_task_weight = seed % 2 ? 0.0 : 0.2;
        m.wiring = wiring;
        m.reset_period = seed % 3 == 0 ? 120 : 0;
        m.seed = seed++;
        check_run(m);
      }
    }
  }
  return {violations == 0, std::to_string(runs) + " runs, " + std::to_string(steps) + " steps, " +
                               std::to_string(violations) + " violations, worst relative error " + fmt(worst)};
}

struct SizeStats {
  std::size_t max = 0;
  double mean = 0.0;
  std::size_t p90 = 0;
  std::size_t p99 = 0;
};

SizeStats ltm_stats(const std::vector<StepReport>& reports, std::size_t burn_in) {
  std::vector<std::size_t> sizes;
  for (const auto& r : reports) {
    if (r.step >= burn_in) sizes.push_back(r.ltm_size);
  }
  SizeStats s;
  if (sizes.empty()) return s;
  s.mean = std::accumulate(sizes.begin(), sizes.end(), 0.0) / static_cast<double>(sizes.size());
  std::sort(sizes.begin(), sizes.end());
  s.max = sizes.back();
  s.p90 = sizes[sizes.size() * 9 / 10];
  s.p99 = sizes[sizes.size() * 99 / 100];
  return s;
}

Outcome ltm_convergence() {
  const auto start = Clock::now();
  RunManifest small;
  small.config.alpha = 2;
  small.config.n_stm_rem = 5;
  small.config.n_ltm_rem = 5;
  small.workload.steps = 2000;
  small.seed = 1;
  const SizeStats s = ltm_stats(run_simulation(small).reports, 200);

  RunManifest defaults;
  defaults.workload.steps = 3000;
  defaults.seed = 1;
  const SizeStats d = ltm_stats(run_simulation(defaults).reports, 0);
  const double elapsed = seconds_since(start);

  const bool small_ok = s.max <= 22;
  const bool default_ok = d.max <= 880;
  return {small_ok && default_ok && elapsed < 120.0,
          "alpha=2 rems 5+5: max " + std::to_string(s.max) + " (limit 22), mean " + fmt(s.mean, 4) + ", p90 " +
              std::to_string(s.p90) + ", p99 " + std::to_string(s.p99) + " after 200-step burn-in; defaults: max " +
              std::to_string(d.max) + " (limit 880), mean " + fmt(d.mean, 4) + "; " + fmt(elapsed) + " s"};
}

Outcome decay_boundary() {
  Config c;
  c.dim = 2;
  c.n_wm = 1;
  c.initial_lifespan = 5;
  Engine e(c);
  const std::vector<Vector> one{{0.0, 0.0}};
  const std::vector<Vector> none;
  std::vector<std::uint64_t> pruned_at;
  std::vector<double> lifespans;
  auto r = e.step(one, uniform);
  for (int t = 1; t < 8; ++t) {
    if (e.state().contains(0)) lifespans.push_back(e.state().engram(0).lifespan);
    r = e.step(none, uniform);
    if (std::find(r.pruned.begin(), r.pruned.end(), 0) != r.pruned.end()) pruned_at.push_back(r.step);
  }
  const bool ok = pruned_at == std::vector<std::uint64_t>{4} && lifespans == std::vector<double>{4, 3, 2, 1};
  std::string seen;
  for (double l : lifespans) seen += fmt(l) + " ";
  return {ok, "lifespan after each decay: " + seen + "-> pruned at step " +
                  (pruned_at.empty() ? std::string("never") : std::to_string(pruned_at.front())) +
                  " (5th decay is step 4)"};
}

Outcome stm_residency() {
  Config c;  // capacity 400, 50 engrams per step
  Engine e(c);
  std::mt19937_64 rng(7);
  std::map<EngramId, std::uint64_t> created;
  std::map<std::uint64_t, std::size_t> histogram;
  for (int t = 0; t < 60; ++t) {
    const auto r = e.step(gaussian_vectors(rng, c.n_wm, c.dim), uniform);
    for (EngramId id : r.created) created[id] = r.step;
    for (EngramId id : r.promoted_to_ltm) ++histogram[r.step - created.at(id)];
  }
  std::string detail;
  std::size_t total = 0;
  for (const auto& [steps, n] : histogram) {
    detail += std::to_string(n) + " engrams resided " + std::to_string(steps) + " steps; ";
    total += n;
  }
  const bool ok = total > 0 && histogram.size() == 1 && histogram.begin()->first == 8;
  return {ok, detail + "capacity " + std::to_string(c.stm_capacity) + ", " + std::to_string(c.n_wm) + " per step"};
}

RunManifest effect_manifest(std::uint64_t seed) {
  RunManifest m;
  m.config.dim = m.workload.dim = 16;
  m.config.n_wm = m.workload.vectors_per_step = 10;
  m.config.stm_capacity = 80;
  m.config.n_stm_rem = 10;
  m.config.n_ltm_rem = 10;
  m.config.n_depth = 5;
  m.config.alpha = 8;
  m.workload.kind = WorkloadKind::ClusteredTopics;
  m.workload.clusters = 8;
  m.workload.noise = 0.3;
  m.workload.steps = 1000;
  m.workload.motif_period = 10;
  m.workload.motif_length = 20;
  m.contribution.kind = ContributionModel::Kind::OracleTask;
  m.seed = seed;
  return m;
}

RunManifest wiring_manifest(std::uint64_t seed, Wiring wiring) {
  RunManifest m = effect_manifest(seed);
  m.config.alpha = 1;
  m.config.n_depth = 2;
  m.workload.clusters = 4;
  m.workload.steps = 600;
  m.workload.motif_period = 0;
  m.workload.motif_length = 1;
  m.wiring = wiring;
  return m;
}

Outcome effect_shapes() {
  const auto start = Clock::now();
  int a = 0, b = 0, c = 0, d = 0;
  std::string detail;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const RunManifest m = effect_manifest(seed);
    const SimulationResult r = run_simulation(m);
    const TraceLog log{m.config, r.reports};

    const auto shape = analysis::density_shape(analysis::creation_time_density(log).counts);
    const bool pa = shape.head > shape.middle && shape.tail > shape.middle;

    const auto profile = analysis::contiguity_profile(r.final_state, 300);
    const double near = analysis::mean_weight_between(profile, 0, 5);
    const double far = analysis::mean_weight_between(profile, 100, profile.cap);
    const bool pb = near > far;  // false when either side is NaN

    std::vector<double> x, y;
    for (const auto& p : analysis::retrieved_ltm_age_curve(log)) {
      x.push_back(static_cast<double>(p.step));
      y.push_back(p.mean_age);
    }
    const double slope = analysis::fitted_slope(x, y);
    const bool pc = slope > 0.0;

    const auto hebb = run_simulation(wiring_manifest(seed, Wiring::Hebbian)).cue_hit_rate;
    const auto rand = run_simulation(wiring_manifest(seed, Wiring::RandomWire)).cue_hit_rate;
    const bool pd = hebb && rand && *hebb > *rand;

    a += pa;
    b += pb;
    c += pc;
    d += pd;
    detail += "seed " + std::to_string(seed) + ": head/mid/tail " + fmt(shape.head) + "/" + fmt(shape.middle) + "/" +
              fmt(shape.tail) + ", E near/far " + fmt(near) + "/" + fmt(far) + ", age slope " + fmt(slope) +
              ", cue-hit hebbian/random " + (hebb ? fmt(*hebb) : "n/a") + "/" + (rand ? fmt(*rand) : "n/a") + "; ";
  }
  const double elapsed = seconds_since(start);
  const bool ok = a >= 3 && b >= 3 && c >= 3 && d >= 3 && elapsed < 300.0;
  return {ok, "(a) primacy+recency " + std::to_string(a) + "/5, (b) contiguity " + std::to_string(b) +
                  "/5, (c) age slope " + std::to_string(c) + "/5, (d) hebbian over random-wire " + std::to_string(d) +
                  "/5; " + fmt(elapsed) + " s; " + detail};
}

Outcome acf_fixture_check() {
  const auto t = analysis::retrieval_autocorrelation(acf_fixture::log(), 3);
  double worst = 0.0;
  for (std::size_t lag = 0; lag < 3; ++lag) {
    worst = std::max(worst, std::abs(t.stm[lag] - acf_fixture::kStm[lag]));
    worst = std::max(worst, std::abs(t.ltm[lag] - acf_fixture::kLtm[lag]));
  }
  const bool ok = !std::isnan(worst) && worst <= 1e-9;
  return {ok, "STM " + fmt(t.stm[0], 12) + " " + fmt(t.stm[1], 12) + " " + fmt(t.stm[2], 12) + ", LTM " +
                  fmt(t.ltm[0], 12) + " " + fmt(t.ltm[1], 12) + " " + fmt(t.ltm[2], 12) + ", max error " + fmt(worst)};
}

// 50 WM cues, 200 STM engrams each wired to the head of its own 21-engram LTM
// chain. Chain counts rise along the chain so every walk moves forward.
MemoryState chain_fixture(std::size_t n_stm_rem, std::size_t n_depth) {
  constexpr std::size_t kWm = 50, kStm = 200, kChain = 21, kDim = 16;
  Config c;
  c.dim = kDim;
  c.n_wm = kWm;
  c.stm_capacity = kStm;
  c.n_stm_rem = n_stm_rem;
  c.n_ltm_rem = 50;
  c.n_depth = n_depth;
  MemoryState s(c);
  std::mt19937_64 rng(11);
  EngramId id = 0;
  for (auto& v : gaussian_vectors(rng, kWm, kDim)) s.restore_engram(Engram{id++, v, Tier::WorkingMemory, 5, 0, 0});
  const EngramId first_stm = id;
  for (auto& v : gaussian_vectors(rng, kStm, kDim)) s.restore_engram(Engram{id++, v, Tier::ShortTermMemory, 5, 0, 100});
  for (std::size_t chain = 0; chain < kStm; ++chain) {
    const EngramId head = id;
    for (auto& v : gaussian_vectors(rng, kChain, kDim)) s.restore_engram(Engram{id++, v, Tier::LongTermMemory, 5, 0, 100});
    s.restore_count(first_stm + chain, head, 1);
    for (std::size_t k = 0; k + 1 < kChain; ++k) s.restore_count(head + k, head + k + 1, k + 2);
  }
  s.restore_clock(1, id);
  return s;
}

double median_retrieve_seconds(const MemoryState& s) {
  constexpr int kCalls = 51;
  static volatile std::size_t sink = 0;
  std::vector<double> t;
  sink = sink + retrieve(s).ltm_found.size();
  for (int i = 0; i < kCalls; ++i) {
    const auto start = Clock::now();
    sink = sink + retrieve(s).ltm_found.size();
    t.push_back(seconds_since(start));
  }
  std::nth_element(t.begin(), t.begin() + kCalls / 2, t.end());
  return t[kCalls / 2];
}

struct Sweep {
  bool strictly_increasing = true;
  double worst_ratio = 0.0;
  std::string detail;
};

Sweep sweep(const std::string& name, const std::vector<std::size_t>& params,
            const std::function<MemoryState(std::size_t)>& build) {
  Sweep out;
  std::vector<double> times;
  for (std::size_t p : params) {
    const MemoryState s = build(p);
    times.push_back(median_retrieve_seconds(s));
    out.detail += name + "=" + std::to_string(p) + ": " + fmt(times.back() * 1e6) + " us; ";
  }
  for (std::size_t i = 1; i < times.size(); ++i) {
    out.strictly_increasing = out.strictly_increasing && times[i] > times[i - 1];
    const double ratio = (times[i] / times[i - 1]) / (static_cast<double>(params[i]) / static_cast<double>(params[i - 1]));
    out.worst_ratio = std::max(out.worst_ratio, ratio);
  }
  return out;
}

Outcome complexity_smoke() {
  const Sweep depth = sweep("n_depth", {1, 5, 10, 20}, [](std::size_t d) { return chain_fixture(50, d); });
  const Sweep k = sweep("n_stm_rem", {10, 50, 100, 200}, [](std::size_t k) { return chain_fixture(k, 5); });
  const bool ok = depth.strictly_increasing && k.strictly_increasing && depth.worst_ratio < 1.5 && k.worst_ratio < 1.5;
  return {ok, depth.detail + "rank correlation " + std::string(depth.strictly_increasing ? "1" : "< 1") +
                  ", worst superlinearity " + fmt(depth.worst_ratio) + "; " + k.detail + "rank correlation " +
                  (k.strictly_increasing ? "1" : "< 1") + ", worst superlinearity " + fmt(k.worst_ratio)};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome determinism() {
  const fs::path dir = fs::temp_directory_path() / ("engram_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  std::size_t manifests = 0, identical = 0, bytes = 0;
  for (auto wiring : {Wiring::Hebbian, Wiring::RandomWire}) {
    RunManifest m = effect_manifest(42);
    m.workload.steps = 400;
    m.contribution.kind = ContributionModel::Kind::CorrelationSoftmax;
    m.wiring = wiring;
    m.reset_period = 150;
    std::string traces[2];
    for (int i = 0; i < 2; ++i) {
      const fs::path path = dir / ("trace_" + std::to_string(manifests) + "_" + std::to_string(i) + ".txt");
      {
        std::ofstream out(path, std::ios::binary);
        TraceWriter writer(out, m.config);
        run_simulation(m, &writer);
      }
      traces[i] = slurp(path);
    }
    ++manifests;
    bytes += traces[0].size();
    identical += !traces[0].empty() && traces[0] == traces[1];
  }
  fs::remove_all(dir);
  return {identical == manifests, std::to_string(identical) + "/" + std::to_string(manifests) +
                                      " manifests gave byte-identical trace files (" + std::to_string(bytes) +
                                      " bytes compared)"};
}

struct Criterion {
  const char* name;
  Outcome (*run)();
};

const Criterion kCriteria[] = {
    {"hebbian_properties", hebbian_properties},
    {"differential_retrieval", differential_retrieval},
    {"count_reconstruction", count_reconstruction},
    {"reinforcement_conservation", reinforcement_conservation},
    {"ltm_convergence", ltm_convergence},
    {"decay_boundary", decay_boundary},
    {"stm_residency", stm_residency},
    {"effect_shapes", effect_shapes},
    {"acf_fixture", acf_fixture_check},
    {"complexity_smoke", complexity_smoke},
    {"determinism", determinism},
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  std::string only;
  bool list = false;
  app.add_option("--only", only, "Run a single criterion");
  app.add_flag("--list", list, "List criteria");
  CLI11_PARSE(app, argc, argv);

  if (list) {
    for (const auto& c : kCriteria) std::cout << c.name << "\n";
    return 0;
  }
  int failures = 0, ran = 0;
  for (const auto& c : kCriteria) {
    if (!only.empty() && only != c.name) continue;
    ++ran;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.passed;
    std::cout << (o.passed ? "PASS " : "FAIL ") << c.name << ": " << o.detail << std::endl;
  }
  if (ran == 0) {
    std::cerr << "unknown criterion: " << only << "\n";
    return 1;
  }
  return failures == 0 ? 0 : 1;
}
