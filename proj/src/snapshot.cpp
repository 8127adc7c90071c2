#include "engram/snapshot.hpp"

#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>

#include "text_format.hpp"

namespace engram {

namespace {

constexpr std::string_view kMagic = "#engram-snapshot v1";

void write_engram(std::ostream& out, const Engram& e) {
  out << "engram " << e.id << ' ' << tier_code(e.tier) << ' ' << e.creation_step << ' '
      << e.fire_count << ' ' << text::format_double(e.lifespan);
  for (double x : e.vector) out << ' ' << text::format_double(x);
  out << '\n';
}

}  // namespace

void write_snapshot(std::ostream& out, const MemoryState& state) {
  out << kMagic << '\n';
  out << "config " << text::format_config_fields(state.config()) << '\n';
  out << "clock step=" << state.step() << " next_id=" << state.next_id() << '\n';
  for (EngramId id : state.wm()) write_engram(out, state.engram(id));
  for (EngramId id : state.stm()) write_engram(out, state.engram(id));
  for (EngramId id : state.ltm()) write_engram(out, state.engram(id));
  for (const auto& t : state.graph().triples()) {
    out << "count " << t.i << ' ' << t.j << ' ' << t.count << '\n';
  }
  out << "end\n";
}

std::string serialize_snapshot(const MemoryState& state) {
  std::ostringstream out;
  write_snapshot(out, state);
  return out.str();
}

MemoryState parse_snapshot(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  auto next_line = [&]() -> bool {
    if (!std::getline(in, line)) return false;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
  };
  auto fail = [&](const std::string& what) -> ParseError { return ParseError(line_no, what); };

  if (!next_line() || line != kMagic) throw fail("missing snapshot header");

  Config config;
  if (!next_line() || !line.starts_with("config ")) throw fail("missing config line");
  for (auto token : text::split(std::string_view(line).substr(7), ' ')) {
    const auto eq = token.find('=');
    if (eq == std::string_view::npos ||
        text::apply_config_field(config, token.substr(0, eq), token.substr(eq + 1)) !=
            text::FieldStatus::Applied) {
      throw fail("bad config entry '" + std::string(token) + "'");
    }
  }
  std::optional<MemoryState> state;
  try {
    state.emplace(config);
  } catch (const ConfigError& e) {
    throw fail(e.what());
  }

  std::uint64_t step = 0;
  std::uint64_t next_id = 0;
  if (!next_line()) throw fail("missing clock line");
  {
    const auto parts = text::split(line, ' ');
    if (parts.size() != 3 || parts[0] != "clock" || !parts[1].starts_with("step=") ||
        !parts[2].starts_with("next_id=") || !text::parse_uint(parts[1].substr(5), step) ||
        !text::parse_uint(parts[2].substr(8), next_id)) {
      throw fail("malformed clock line");
    }
  }

  bool ended = false;
  while (next_line()) {
    if (line.empty()) continue;
    const auto parts = text::split(line, ' ');
    if (parts[0] == "end") {
      ended = true;
      break;
    }
    try {
      if (parts[0] == "engram") {
        if (parts.size() != 6 + config.dim) throw fail("engram line has wrong field count");
        Engram e;
        if (parts[2].size() != 1) throw fail("bad tier code");
        if (!text::parse_uint(parts[1], e.id) || !text::parse_uint(parts[3], e.creation_step) ||
            !text::parse_uint(parts[4], e.fire_count) ||
            !text::parse_double(parts[5], e.lifespan)) {
          throw fail("malformed engram line");
        }
        e.tier = tier_from_code(parts[2][0]);
        e.vector.resize(config.dim);
        for (std::size_t k = 0; k < config.dim; ++k) {
          if (!text::parse_double(parts[6 + k], e.vector[k])) throw fail("malformed vector entry");
        }
        state->restore_engram(e);
      } else if (parts[0] == "count") {
        std::uint64_t i = 0, j = 0, c = 0;
        if (parts.size() != 4 || !text::parse_uint(parts[1], i) || !text::parse_uint(parts[2], j) ||
            !text::parse_uint(parts[3], c) || i == j) {
          throw fail("malformed count line");
        }
        state->restore_count(i, j, c);
      } else {
        throw fail("unknown record '" + std::string(parts[0]) + "'");
      }
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw fail(e.what());
    }
  }
  if (!ended) throw fail("snapshot truncated (no end marker)");
  try {
    state->restore_clock(step, next_id);
  } catch (const Error& e) {
    throw fail(e.what());
  }
  return std::move(*state);
}

void save_snapshot_file(const std::string& path, const MemoryState& state) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open snapshot file " + path + " for writing");
  write_snapshot(out, state);
  if (!out) throw IoError("failed writing snapshot file " + path);
}

MemoryState load_snapshot_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open snapshot file " + path);
  return parse_snapshot(in);
}

}  // namespace engram
