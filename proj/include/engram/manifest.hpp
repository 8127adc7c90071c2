#pragma once

#include <string>
#include <string_view>

#include "engram/simulation.hpp"

namespace engram {

/// Run manifests are flat `key = value` files; blank lines and `#` comments
/// are ignored. A document whose first non-blank character is `{` is read as
/// a JSON object with the same keys instead.
///
/// Keys (defaults from the structs they fill):
///   engine:       dim n_wm stm_capacity n_stm_rem n_ltm_rem n_depth
///                 initial_lifespan alpha
///   workload:     workload (iid-gaussian|clustered-topics|drifting|motif-replay)
///                 steps vectors_per_step clusters spread noise drift_rate
///                 motif_period motif_length
///   contribution: contribution (uniform|correlation-softmax|oracle-task)
///                 temperature off_task_weight
///   run:          seed reset_period out wiring (hebbian|random-wire)
///                 measure_recall (true|false)
///
/// The workload dimension always equals `dim`. Unknown keys, repeated keys
/// and malformed values are errors.
RunManifest parse_manifest(std::string_view text);
RunManifest load_manifest_file(const std::string& path);

/// Flat encoding with every key, in the order listed above.
std::string format_manifest(const RunManifest& manifest);

const char* wiring_name(Wiring wiring);
Wiring parse_wiring(const std::string& name);

}  // namespace engram
