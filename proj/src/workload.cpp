#include "engram/workload.hpp"

#include <cmath>
#include <random>

namespace engram {

const char* workload_kind_name(WorkloadKind kind) {
  switch (kind) {
    case WorkloadKind::IidGaussian: return "iid-gaussian";
    case WorkloadKind::ClusteredTopics: return "clustered-topics";
    case WorkloadKind::Drifting: return "drifting";
    case WorkloadKind::MotifReplay: return "motif-replay";
  }
  return "?";
}

WorkloadKind parse_workload_kind(const std::string& name) {
  for (auto k : {WorkloadKind::IidGaussian, WorkloadKind::ClusteredTopics, WorkloadKind::Drifting,
                 WorkloadKind::MotifReplay}) {
    if (name == workload_kind_name(k)) return k;
  }
  throw ConfigError("unknown workload kind '" + name + "'");
}

void WorkloadSpec::validate() const {
  if (dim == 0) throw ConfigError("workload dim must be positive");
  if (vectors_per_step == 0) throw ConfigError("vectors_per_step must be positive");
  if (clusters == 0) throw ConfigError("clusters must be positive");
  if (!(spread >= 0.0) || !(noise >= 0.0) || !(drift_rate >= 0.0)) {
    throw ConfigError("spread, noise and drift_rate must be non-negative");
  }
  if (motif_period > 0 && clusters < 2) {
    throw ConfigError("a recurring motif needs at least two clusters");
  }
}

namespace {

// std::normal_distribution rejects sigma == 0.
double gaussian(std::mt19937_64& rng, double sigma) {
  if (sigma == 0.0) return 0.0;
  return std::normal_distribution<double>(0.0, sigma)(rng);
}

std::vector<WorkloadStep> clustered(const WorkloadSpec& spec, std::size_t steps,
                                    std::mt19937_64& rng) {
  std::vector<Vector> centres(spec.clusters, Vector(spec.dim));
  for (auto& c : centres) {
    for (double& x : c) x = gaussian(rng, spec.spread);
  }
  std::vector<WorkloadStep> out;
  out.reserve(steps);
  for (std::size_t t = 0; t < steps; ++t) {
    std::size_t topic = 0;
    if (spec.motif_period > 0) {
      const bool motif = t < spec.motif_length || t % spec.motif_period == 0;
      topic = motif ? 0 : std::uniform_int_distribution<std::size_t>(1, spec.clusters - 1)(rng);
    } else {
      topic = std::uniform_int_distribution<std::size_t>(0, spec.clusters - 1)(rng);
    }
    WorkloadStep s;
    s.label = static_cast<int>(topic);
    for (std::size_t v = 0; v < spec.vectors_per_step; ++v) {
      Vector x = centres[topic];
      for (double& e : x) e += gaussian(rng, spec.noise);
      s.vectors.push_back(std::move(x));
    }
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace

std::vector<WorkloadStep> generate_workload(const WorkloadSpec& spec) {
  spec.validate();
  std::mt19937_64 rng(spec.seed);
  switch (spec.kind) {
    case WorkloadKind::ClusteredTopics: return clustered(spec, spec.steps, rng);

    case WorkloadKind::MotifReplay: {
      auto half = clustered(spec, (spec.steps + 1) / 2, rng);
      std::vector<WorkloadStep> out = half;
      for (std::size_t t = 0; out.size() < spec.steps; ++t) out.push_back(half[t]);
      return out;
    }

    case WorkloadKind::IidGaussian: {
      std::vector<WorkloadStep> out(spec.steps);
      for (auto& s : out) {
        for (std::size_t v = 0; v < spec.vectors_per_step; ++v) {
          Vector x(spec.dim);
          for (double& e : x) e = gaussian(rng, spec.spread);
          s.vectors.push_back(std::move(x));
        }
      }
      return out;
    }

    case WorkloadKind::Drifting: {
      Vector centre(spec.dim);
      for (double& x : centre) x = gaussian(rng, spec.spread);
      std::vector<WorkloadStep> out(spec.steps);
      for (auto& s : out) {
        for (double& x : centre) x += gaussian(rng, spec.drift_rate);
        for (std::size_t v = 0; v < spec.vectors_per_step; ++v) {
          Vector x = centre;
          for (double& e : x) e += gaussian(rng, spec.noise);
          s.vectors.push_back(std::move(x));
        }
      }
      return out;
    }
  }
  return {};
}

}  // namespace engram
