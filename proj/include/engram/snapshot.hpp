#pragma once

#include <iosfwd>
#include <string>

#include "engram/store.hpp"

namespace engram {

// Snapshot layout, one item per line:
//
//   #engram-snapshot v1
//   config dim=<u> n_wm=<u> ... alpha=<f>          (same keys as the trace header)
//   clock step=<u> next_id=<u>
//   engram <id> <W|S|L> <creation_step> <fire_count> <lifespan> <x_0> ... <x_{d-1}>
//   count <i> <j> <count>                           (i < j, Count_{i,j} = Count_{j,i})
//   end
//
// Engram lines list WM in order, then STM oldest-first, then LTM by id; count
// lines are sorted by (i, j). Floats use shortest round-trip form, so a
// write/read cycle reproduces the state bit-exactly and identical states
// serialize to identical bytes.

std::string serialize_snapshot(const MemoryState& state);
void write_snapshot(std::ostream& out, const MemoryState& state);
MemoryState parse_snapshot(std::istream& in);

void save_snapshot_file(const std::string& path, const MemoryState& state);
MemoryState load_snapshot_file(const std::string& path);

}  // namespace engram
