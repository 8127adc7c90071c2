#include "engram/trace.hpp"

#include <array>
#include <fstream>
#include <istream>
#include <ostream>
#include <unordered_set>

#include "text_format.hpp"

namespace engram {

namespace {

constexpr std::string_view kMagic = "#engram-trace v1";
constexpr std::string_view kConfigPrefix = "#config ";
constexpr std::array<std::string_view, 12> kFields = {
    "step",      "reset",  "created",  "stm_rem", "ltm_rem", "ltm_found",
    "inc",       "pruned", "promoted", "stm",     "ltm",     "lifespan"};

std::string format_scored(const std::vector<EngramId>& ids, const ScoreMap& scores) {
  std::string out;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) out += ',';
    out += text::format_uint(ids[i]) + ':' + text::format_double(scores.at(ids[i]));
  }
  return out;
}

std::string format_scored(const std::map<EngramId, double>& values) {
  std::string out;
  for (const auto& [id, v] : values) {
    if (!out.empty()) out += ',';
    out += text::format_uint(id) + ':' + text::format_double(v);
  }
  return out;
}

class RecordParser {
 public:
  explicit RecordParser(std::size_t line) : line_(line) {}

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(line_, what); }

  std::uint64_t as_uint(std::string_view s, std::string_view field) const {
    std::uint64_t v = 0;
    if (!text::parse_uint(s, v)) fail("field '" + std::string(field) + "' is not an unsigned integer");
    return v;
  }

  double as_double(std::string_view s, std::string_view field) const {
    double v = 0;
    if (!text::parse_double(s, v)) fail("field '" + std::string(field) + "' is not a number");
    return v;
  }

  std::vector<EngramId> as_ids(std::string_view s, std::string_view field) const {
    std::vector<EngramId> out;
    if (s.empty()) return out;
    for (auto part : text::split(s, ',')) out.push_back(as_uint(part, field));
    return out;
  }

  std::vector<std::pair<EngramId, double>> as_scored(std::string_view s,
                                                     std::string_view field) const {
    std::vector<std::pair<EngramId, double>> out;
    if (s.empty()) return out;
    for (auto part : text::split(s, ',')) {
      const auto colon = part.find(':');
      if (colon == std::string_view::npos) fail("field '" + std::string(field) + "' expects id:value");
      out.emplace_back(as_uint(part.substr(0, colon), field),
                       as_double(part.substr(colon + 1), field));
    }
    return out;
  }

 private:
  std::size_t line_;
};

StepReport parse_record(std::string_view line, std::size_t line_no) {
  RecordParser p(line_no);
  const auto parts = text::split(line, '\t');
  if (parts.size() != kFields.size()) {
    p.fail("expected " + std::to_string(kFields.size()) + " fields, got " +
           std::to_string(parts.size()));
  }
  std::array<std::string_view, kFields.size()> values;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const auto eq = parts[i].find('=');
    if (eq == std::string_view::npos || parts[i].substr(0, eq) != kFields[i]) {
      p.fail("expected field '" + std::string(kFields[i]) + "' at position " + std::to_string(i));
    }
    values[i] = parts[i].substr(eq + 1);
  }

  StepReport r;
  r.step = p.as_uint(values[0], "step");
  const auto reset = p.as_uint(values[1], "reset");
  if (reset > 1) p.fail("reset must be 0 or 1");
  r.reset = reset == 1;
  r.created = p.as_ids(values[2], "created");
  r.retrieved.wm = r.created;
  for (auto [id, score] : p.as_scored(values[3], "stm_rem")) {
    r.retrieved.stm_rem.push_back(id);
    r.retrieved.scores[id] = score;
  }
  for (auto [id, score] : p.as_scored(values[4], "ltm_rem")) {
    r.retrieved.ltm_rem.push_back(id);
    r.retrieved.scores[id] = score;
  }
  r.retrieved.ltm_found = p.as_ids(values[5], "ltm_found");
  for (auto [id, inc] : p.as_scored(values[6], "inc")) r.increments[id] = inc;
  r.pruned = p.as_ids(values[7], "pruned");
  r.promoted_to_ltm = p.as_ids(values[8], "promoted");
  r.stm_size = p.as_uint(values[9], "stm");
  r.ltm_size = p.as_uint(values[10], "ltm");
  r.total_lifespan = p.as_double(values[11], "lifespan");
  return r;
}

}  // namespace

std::string format_trace_header(const Config& config) {
  return std::string(kMagic) + '\n' + std::string(kConfigPrefix) +
         text::format_config_fields(config) + '\n';
}

std::string format_trace_record(const StepReport& r) {
  std::string out;
  out += "step=" + text::format_uint(r.step);
  out += "\treset=" + std::string(r.reset ? "1" : "0");
  out += "\tcreated=" + text::join_ids(r.created);
  out += "\tstm_rem=" + format_scored(r.retrieved.stm_rem, r.retrieved.scores);
  out += "\tltm_rem=" + format_scored(r.retrieved.ltm_rem, r.retrieved.scores);
  out += "\tltm_found=" + text::join_ids(r.retrieved.ltm_found);
  out += "\tinc=" + format_scored(r.increments);
  out += "\tpruned=" + text::join_ids(r.pruned);
  out += "\tpromoted=" + text::join_ids(r.promoted_to_ltm);
  out += "\tstm=" + text::format_uint(r.stm_size);
  out += "\tltm=" + text::format_uint(r.ltm_size);
  out += "\tlifespan=" + text::format_double(r.total_lifespan);
  out += '\n';
  return out;
}

TraceLog parse_trace(std::istream& in) {
  TraceLog log;
  std::string line;
  std::size_t line_no = 0;

  auto next_line = [&]() -> bool {
    if (!std::getline(in, line)) return false;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
  };

  if (!next_line() || line != kMagic) throw ParseError(line_no, "missing trace header");
  if (!next_line() || !line.starts_with(kConfigPrefix)) {
    throw ParseError(line_no, "missing #config line");
  }
  for (auto token : text::split(std::string_view(line).substr(kConfigPrefix.size()), ' ')) {
    const auto eq = token.find('=');
    if (eq == std::string_view::npos) throw ParseError(line_no, "malformed config token");
    if (text::apply_config_field(log.config, token.substr(0, eq), token.substr(eq + 1)) !=
        text::FieldStatus::Applied) {
      throw ParseError(line_no, "bad config entry '" + std::string(token) + "'");
    }
  }
  try {
    log.config.validate();
  } catch (const ConfigError& e) {
    throw ParseError(line_no, e.what());
  }

  std::unordered_set<EngramId> live;
  bool first = true;
  std::uint64_t last_step = 0;
  while (next_line()) {
    if (line.empty()) continue;
    StepReport r = parse_record(line, line_no);
    if (!first && r.step <= last_step) throw ParseError(line_no, "step indices must increase");
    first = false;
    last_step = r.step;

    if (r.reset) live.clear();
    for (EngramId id : r.created) {
      if (!live.insert(id).second) throw ParseError(line_no, "engram created twice");
    }
    auto require_live = [&](const std::vector<EngramId>& ids, const char* what) {
      for (EngramId id : ids) {
        if (!live.contains(id)) {
          throw ParseError(line_no, std::string(what) + " references unknown engram " +
                                        std::to_string(id));
        }
      }
    };
    require_live(r.retrieved.stm_rem, "stm_rem");
    require_live(r.retrieved.ltm_rem, "ltm_rem");
    require_live(r.retrieved.ltm_found, "ltm_found");
    require_live(r.pruned, "pruned");
    require_live(r.promoted_to_ltm, "promoted");
    for (const auto& [id, _] : r.increments) {
      if (!live.contains(id)) throw ParseError(line_no, "inc references unknown engram");
    }
    for (EngramId id : r.pruned) live.erase(id);
    log.records.push_back(std::move(r));
  }
  return log;
}

TraceLog read_trace_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open trace file " + path);
  return parse_trace(in);
}

TraceWriter::TraceWriter(std::ostream& out, const Config& config) : out_(out) {
  out_ << format_trace_header(config);
}

void TraceWriter::write(const StepReport& report) {
  out_ << format_trace_record(report);
}

}  // namespace engram
