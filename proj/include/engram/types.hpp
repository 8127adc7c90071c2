#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace engram {

using EngramId = std::uint64_t;
using Vector = std::vector<double>;
using ScoreMap = std::map<EngramId, double>;

enum class Tier : std::uint8_t { WorkingMemory, ShortTermMemory, LongTermMemory };

char tier_code(Tier tier);
Tier tier_from_code(char code);
const char* tier_name(Tier tier);

// Error hierarchy. Each kind maps to one failure class of the engine contract.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

// Operation called out of phase (e.g. adding WM while WM is still populated).
class SequencingError : public Error {
 public:
  using Error::Error;
};

class ShapeError : public Error {
 public:
  using Error::Error;
};

class LookupError : public Error {
 public:
  using Error::Error;
};

// Caller-supplied data violates an operation's contract (contribution keys etc.).
class ContractError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

struct Engram {
  EngramId id = 0;
  Vector vector;
  Tier tier = Tier::WorkingMemory;
  double lifespan = 0.0;
  std::uint64_t creation_step = 0;
  // Count_{i,i}: number of steps this engram was part of the activated set.
  std::uint64_t fire_count = 0;

  bool operator==(const Engram&) const = default;
};

/// Engine hyperparameters. Defaults follow the Wikitext-103 language-modeling setup.
///
/// WM engrams decay in the step that creates them, so an engram that is never
/// retrieved survives exactly `initial_lifespan` decays (rounded up) and needs
/// `initial_lifespan > 1` to reach STM at all.
struct Config {
  std::size_t dim = 16;
  std::size_t n_wm = 50;
  std::size_t stm_capacity = 400;
  std::size_t n_stm_rem = 50;
  std::size_t n_ltm_rem = 50;
  std::size_t n_depth = 10;
  double initial_lifespan = 9.0;
  double alpha = 8.0;

  /// Throws ConfigError when any invariant is violated.
  void validate() const;

  /// Asymptotic LTM size K = alpha * (n_stm_rem + n_ltm_rem).
  double ltm_asymptote() const { return alpha * static_cast<double>(n_stm_rem + n_ltm_rem); }

  bool operator==(const Config&) const = default;
};

}  // namespace engram
