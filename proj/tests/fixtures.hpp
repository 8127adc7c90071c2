#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "engram/lifecycle.hpp"
#include "engram/store.hpp"

namespace fixtures {

using namespace engram;

inline Config small_config(std::size_t dim = 2) {
  Config c;
  c.dim = dim;
  c.n_wm = 4;
  c.stm_capacity = 8;
  c.n_stm_rem = 3;
  c.n_ltm_rem = 3;
  c.n_depth = 2;
  c.initial_lifespan = 9;
  c.alpha = 2;
  return c;
}

inline Engram make(EngramId id, Tier tier, Vector v, double lifespan = 5.0, std::uint64_t created = 0,
                   std::uint64_t fire = 0) {
  return Engram{id, std::move(v), tier, lifespan, created, fire};
}

inline ContributionWeights uniform(const RetrievalResult& r) {
  ContributionWeights w;
  for (EngramId id : r.remembered()) w[id] = 1.0;
  return w;
}

inline std::vector<Vector> random_vectors(std::mt19937_64& rng, std::size_t n, std::size_t dim) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<Vector> out(n, Vector(dim));
  for (auto& v : out) {
    for (double& x : v) x = g(rng);
  }
  return out;
}

}  // namespace fixtures
