#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "engram/lifecycle.hpp"
#include "engram/types.hpp"

namespace engram {

// Trace file layout (UTF-8, '\n' line endings):
//
//   #engram-trace v1
//   #config dim=<u> n_wm=<u> stm_capacity=<u> n_stm_rem=<u> n_ltm_rem=<u> n_depth=<u> initial_lifespan=<f> alpha=<f>
//   <record>*
//
// One record per completed step, twelve tab-separated key=value fields in
// this fixed order:
//
//   step=<u>  reset=<0|1>  created=<ids>  stm_rem=<scored>  ltm_rem=<scored>
//   ltm_found=<ids>  inc=<scored>  pruned=<ids>  promoted=<ids>
//   stm=<u>  ltm=<u>  lifespan=<f>
//
// <ids> is a comma-separated id list (possibly empty), <scored> a comma list of
// id:value pairs. Floats use shortest round-trip decimal form. `created` is
// the step's working memory; `stm`, `ltm` and `lifespan` describe the state
// after the step completed.

struct TraceLog {
  Config config;
  std::vector<StepReport> records;
};

std::string format_trace_header(const Config& config);
std::string format_trace_record(const StepReport& report);

/// Parses and validates a trace: steps strictly increasing, every referenced
/// id created earlier and not yet pruned or reset away.
TraceLog parse_trace(std::istream& in);
TraceLog read_trace_file(const std::string& path);

/// Streams records to `out` as steps complete.
class TraceWriter {
 public:
  TraceWriter(std::ostream& out, const Config& config);
  void write(const StepReport& report);

 private:
  std::ostream& out_;
};

}  // namespace engram
