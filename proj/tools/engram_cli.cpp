// engram: run simulations, analyze traces, verify the engine against its
// reference implementation and export co-fire graphs.
//
// Exit codes: 0 success, 1 usage or invalid input, 2 verification failure,
// 3 I/O error.

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "engram/analysis.hpp"
#include "engram/manifest.hpp"
#include "engram/report_io.hpp"
#include "engram/simulation.hpp"
#include "engram/snapshot.hpp"
#include "engram/trace.hpp"
#include "engram/verify.hpp"

namespace fs = std::filesystem;
using namespace engram;

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kVerifyFailed = 2;
constexpr int kIo = 3;

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory " + dir.string() + ": " + ec.message());
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  return out;
}

template <class Fn>
void write_file(const fs::path& path, Fn&& fn) {
  auto out = open_out(path);
  fn(out);
  out.flush();
  if (!out) throw IoError("failed writing " + path.string());
}

struct SimulateArgs {
  std::string manifest;
  std::optional<std::string> out;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> reset_period;
};

int cmd_simulate(const SimulateArgs& a) {
  RunManifest m = load_manifest_file(a.manifest);
  if (a.out) m.output_dir = *a.out;
  if (a.seed) m.seed = *a.seed;
  if (a.reset_period) m.reset_period = *a.reset_period;

  const fs::path dir(m.output_dir);
  ensure_dir(dir);
  auto trace_out = open_out(dir / "trace.txt");
  TraceWriter writer(trace_out, m.config);
  const SimulationResult r = run_simulation(m, &writer);
  trace_out.flush();
  if (!trace_out) throw IoError("failed writing " + (dir / "trace.txt").string());
  save_snapshot_file((dir / "final.snapshot").string(), r.final_state);
  write_file(dir / "manifest.txt", [&](std::ostream& o) { o << format_manifest(m); });

  std::cout << "steps " << r.reports.size() << ", final stm " << r.final_state.stm().size() << ", ltm "
            << r.final_state.ltm().size() << "\n";
  if (r.cue_hit_rate) std::cout << "cue-hit rate " << *r.cue_hit_rate << "\n";
  if (r.mean_recall) std::cout << "mean recall vs full LTM search " << *r.mean_recall << "\n";
  std::cout << "wrote " << (dir / "trace.txt").string() << " and " << (dir / "final.snapshot").string()
            << "\n";
  return kOk;
}

struct AnalyzeArgs {
  std::string trace;
  std::optional<std::string> snapshot;
  std::string out = "analysis";
  std::string which = "all";
  std::size_t bins = 50;
  double bandwidth = 0.0;
  std::size_t max_lag = 10;
  std::size_t cap = 300;
  double slack = 0.1;
  std::size_t burn_in = 0;
};

std::vector<double> as_doubles(const auto& values) {
  return std::vector<double>(values.begin(), values.end());
}

int cmd_analyze(const AnalyzeArgs& a) {
  const bool all = a.which == "all";
  if (a.which == "contiguity" && !a.snapshot) {
    std::cerr << "error: --analysis contiguity needs --snapshot\n";
    return kUsage;
  }
  const TraceLog log = read_trace_file(a.trace);
  const fs::path dir(a.out);
  ensure_dir(dir);
  auto emit = [&](const std::string& name, auto&& csv, const std::string& svg) {
    write_file(dir / (name + ".csv"), csv);
    write_file(dir / (name + ".svg"), [&](std::ostream& o) { o << svg; });
  };

  if (all || a.which == "creation") {
    const auto d = analysis::creation_time_density(log, a.bins, a.bandwidth);
    const auto shape = analysis::density_shape(d.counts);
    emit("creation", [&](std::ostream& o) { report::write_creation_csv(o, d); },
         report::svg_plot("Creation time of engrams left in LTM", "creation time (% of run)", "engrams",
                          {{"count", d.bin_centres, as_doubles(d.counts), true}, {"KDE", d.bin_centres, d.kde}}));
    std::cout << "creation: " << d.survivors << " survivors, bandwidth " << d.bandwidth << ", head "
              << shape.head << " middle " << shape.middle << " tail " << shape.tail << "\n";
  }
  if (all || a.which == "contiguity") {
    if (!a.snapshot) {
      std::cerr << "note: contiguity skipped, no --snapshot given\n";
    } else {
      const MemoryState final_state = load_snapshot_file(*a.snapshot);
      const auto p = analysis::contiguity_profile(final_state, a.cap);
      std::vector<double> x;
      for (std::size_t d = 0; d < p.mean.size(); ++d) x.push_back(static_cast<double>(d));
      emit("contiguity", [&](std::ostream& o) { report::write_contiguity_csv(o, p); },
           report::svg_plot("Mean edge weight by age difference", "age difference (steps)", "mean E",
                            {{"mean E", x, p.mean}}));
      std::cout << "contiguity: mean E at age difference <= 5: " << analysis::mean_weight_between(p, 0, 5)
                << ", >= 100: " << analysis::mean_weight_between(p, 100, p.cap) << "\n";
    }
  }
  if (all || a.which == "acf") {
    const auto t = analysis::retrieval_autocorrelation(log, a.max_lag);
    for (const auto& w : t.warnings) std::cerr << "warning: " << w << "\n";
    std::vector<double> lags;
    for (std::size_t l = 1; l <= t.max_lag; ++l) lags.push_back(static_cast<double>(l));
    emit("acf", [&](std::ostream& o) { report::write_acf_csv(o, t); },
         report::svg_plot("Retrieval autocorrelation", "lag", "coefficient", {{"STM", lags, t.stm}, {"LTM", lags, t.ltm}}));
    if (!t.stm.empty()) std::cout << "acf: lag-1 stm " << t.stm[0] << ", ltm " << t.ltm[0] << "\n";
  }
  if (all || a.which == "age") {
    const auto curve = analysis::retrieved_ltm_age_curve(log);
    std::vector<double> x, y;
    for (const auto& p : curve) {
      x.push_back(static_cast<double>(p.step));
      y.push_back(p.mean_age);
    }
    emit("age", [&](std::ostream& o) { report::write_age_csv(o, curve); },
         report::svg_plot("Mean age of retrieved LTM engrams", "step", "age (steps)", {{"mean age", x, y}}));
    std::cout << "age: " << curve.size() << " points, fitted slope " << analysis::fitted_slope(x, y) << "\n";
  }
  if (all || a.which == "bound") {
    const auto r = analysis::ltm_bound_tracker(log, a.slack, a.burn_in);
    std::vector<double> x, ltm, asym;
    for (const auto& row : r.rows) {
      x.push_back(static_cast<double>(row.step));
      ltm.push_back(static_cast<double>(row.ltm_size));
      asym.push_back(row.asymptote);
    }
    emit("bound", [&](std::ostream& o) { report::write_bound_csv(o, r); },
         report::svg_plot("LTM size against its asymptote", "step", "engrams", {{"|LTM|", x, ltm}, {"asymptote", x, asym}}));
    std::cout << "bound: asymptote " << r.asymptote << ", max ltm " << r.max_ltm << ", steps over "
              << r.exceed_steps << ", lifespan recurrence mean relative error " << r.mean_relative_error << "\n";
  }
  return kOk;
}

int cmd_verify(std::uint64_t seed, std::size_t iterations, const std::string& out) {
  const verify::VerifyReport report = verify::run_verification(seed, iterations);
  for (const auto& w : report.warnings) std::cerr << "warning: " << w << "\n";
  for (const auto& c : report.checks) {
    std::cout << (c.passed ? "PASS " : "FAIL ") << c.name << " (" << c.cases << " cases)";
    if (!c.passed) std::cout << ": " << c.detail;
    std::cout << "\n";
  }
  if (report.divergent_snapshot) {
    const fs::path dir(out);
    ensure_dir(dir);
    const fs::path path = dir / "divergent.snapshot";
    write_file(path, [&](std::ostream& o) { o << *report.divergent_snapshot; });
    std::cout << "first divergent state written to " << path.string() << "\n";
  }
  return report.passed() ? kOk : kVerifyFailed;
}

int cmd_export_graph(const std::string& snapshot, double min_weight, const std::optional<std::string>& out) {
  const MemoryState state = load_snapshot_file(snapshot);
  const std::string dot = report::graph_dot(state, min_weight);
  if (!out) {
    std::cout << dot;
    return kOk;
  }
  const fs::path path(*out);
  if (path.has_parent_path()) ensure_dir(path.parent_path());
  write_file(path, [&](std::ostream& o) { o << dot; });
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Engram memory engine: simulate, analyze, verify, export-graph"};
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Run a manifest; write trace.txt and final.snapshot");
  simulate->add_option("--manifest", sim.manifest, "Run manifest (key = value or JSON)")->required();
  simulate->add_option("--out", sim.out, "Output directory (overrides the manifest)");
  simulate->add_option("--seed", sim.seed, "Seed (overrides the manifest)");
  simulate->add_option("--reset-period", sim.reset_period, "Reset memory every N steps, 0 = never");

  AnalyzeArgs an;
  auto* analyze = app.add_subcommand("analyze", "Compute effect analyses from a trace");
  analyze->add_option("--trace", an.trace, "Trace file")->required();
  analyze->add_option("--snapshot", an.snapshot, "Final-state snapshot (needed for contiguity)");
  analyze->add_option("--out", an.out, "Output directory")->capture_default_str();
  analyze->add_option("--analysis", an.which, "Which analysis")
      ->check(CLI::IsMember({"creation", "contiguity", "acf", "age", "bound", "all"}))
      ->capture_default_str();
  analyze->add_option("--bins", an.bins, "Creation-time histogram bins")->capture_default_str()->check(CLI::PositiveNumber);
  analyze->add_option("--bandwidth", an.bandwidth, "KDE bandwidth in percent of run, 0 = Scott's rule")
      ->capture_default_str();
  analyze->add_option("--max-lag", an.max_lag, "Largest ACF lag")->capture_default_str()->check(CLI::PositiveNumber);
  analyze->add_option("--age-cap", an.cap, "Contiguity overflow bin")->capture_default_str()->check(CLI::PositiveNumber);
  analyze->add_option("--slack", an.slack, "Relative slack over the LTM asymptote")->capture_default_str();
  analyze->add_option("--burn-in", an.burn_in, "Steps never flagged by the bound tracker")->capture_default_str();

  std::uint64_t seed = 0;
  std::size_t iterations = 1000;
  std::string verify_out = "verify";
  auto* verify_cmd = app.add_subcommand("verify", "Differential, recount and Hebbian property campaign");
  verify_cmd->add_option("--seed", seed, "Campaign seed")->capture_default_str();
  verify_cmd->add_option("--iterations", iterations, "Random cases per check")->capture_default_str();
  verify_cmd->add_option("--out", verify_out, "Where a divergent snapshot is written")->capture_default_str();

  std::string graph_snapshot;
  double min_weight = 0.0;
  std::optional<std::string> graph_out;
  auto* export_graph = app.add_subcommand("export-graph", "Write the co-fire graph as Graphviz DOT");
  export_graph->add_option("--snapshot", graph_snapshot, "Snapshot file")->required();
  export_graph->add_option("--min-weight", min_weight, "Smallest edge weight shown")->capture_default_str();
  export_graph->add_option("--out", graph_out, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*simulate) return cmd_simulate(sim);
    if (*analyze) return cmd_analyze(an);
    if (*verify_cmd) return cmd_verify(seed, iterations, verify_out);
    if (*export_graph) return cmd_export_graph(graph_snapshot, min_weight, graph_out);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIo;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
