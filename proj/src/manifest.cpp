#include "engram/manifest.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "text_format.hpp"

namespace engram {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool apply_size(std::size_t& slot, std::string_view value) {
  std::uint64_t v = 0;
  if (!text::parse_uint(value, v)) return false;
  slot = static_cast<std::size_t>(v);
  return true;
}

bool apply_u64(std::uint64_t& slot, std::string_view value) { return text::parse_uint(value, slot); }

bool apply_double(double& slot, std::string_view value) { return text::parse_double(value, slot); }

bool apply_bool(bool& slot, std::string_view value) {
  if (value == "true" || value == "1") return slot = true, true;
  if (value == "false" || value == "0") return slot = false, true;
  return false;
}

// Throws ConfigError for unknown keys and enum names; returns false for a
// value that does not parse.
bool apply_field(RunManifest& m, const std::string& key, std::string_view value) {
  switch (text::apply_config_field(m.config, key, value)) {
    case text::FieldStatus::Applied: return true;
    case text::FieldStatus::BadValue: return false;
    case text::FieldStatus::UnknownKey: break;
  }
  WorkloadSpec& w = m.workload;
  if (key == "workload") return w.kind = parse_workload_kind(std::string(value)), true;
  if (key == "steps") return apply_size(w.steps, value);
  if (key == "vectors_per_step") return apply_size(w.vectors_per_step, value);
  if (key == "clusters") return apply_size(w.clusters, value);
  if (key == "spread") return apply_double(w.spread, value);
  if (key == "noise") return apply_double(w.noise, value);
  if (key == "drift_rate") return apply_double(w.drift_rate, value);
  if (key == "motif_period") return apply_size(w.motif_period, value);
  if (key == "motif_length") return apply_size(w.motif_length, value);
  if (key == "contribution") return m.contribution.kind = parse_contribution_kind(std::string(value)), true;
  if (key == "temperature") return apply_double(m.contribution.temperature, value);
  if (key == "off_task_weight") return apply_double(m.contribution.off_task_weight, value);
  if (key == "seed") return apply_u64(m.seed, value);
  if (key == "reset_period") return apply_u64(m.reset_period, value);
  if (key == "out") return !value.empty() && (m.output_dir = std::string(value), true);
  if (key == "wiring") return m.wiring = parse_wiring(std::string(value)), true;
  if (key == "measure_recall") return apply_bool(m.measure_recall, value);
  throw ConfigError("unknown manifest key '" + key + "'");
}

void set_field(RunManifest& m, std::set<std::string>& seen, const std::string& key,
               std::string_view value) {
  if (!seen.insert(key).second) throw ConfigError("manifest key '" + key + "' given twice");
  if (!apply_field(m, key, value)) {
    throw ConfigError("bad value '" + std::string(value) + "' for manifest key '" + key + "'");
  }
}

RunManifest finish(RunManifest m) {
  m.workload.dim = m.config.dim;
  m.validate();
  return m;
}

RunManifest parse_json_manifest(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("manifest is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("JSON manifest must be an object");

  RunManifest m;
  std::set<std::string> seen;
  for (const auto& [key, value] : doc.items()) {
    std::string encoded;
    if (value.is_string()) {
      encoded = value.get<std::string>();
    } else if (value.is_boolean()) {
      encoded = value.get<bool>() ? "true" : "false";
    } else if (value.is_number_unsigned()) {
      encoded = text::format_uint(value.get<std::uint64_t>());
    } else if (value.is_number_float()) {
      encoded = text::format_double(value.get<double>());
    } else {
      throw ConfigError("manifest key '" + key + "' needs a string, number or boolean");
    }
    set_field(m, seen, key, encoded);
  }
  return finish(m);
}

}  // namespace

const char* wiring_name(Wiring wiring) {
  return wiring == Wiring::RandomWire ? "random-wire" : "hebbian";
}

Wiring parse_wiring(const std::string& name) {
  if (name == "hebbian") return Wiring::Hebbian;
  if (name == "random-wire") return Wiring::RandomWire;
  throw ConfigError("unknown wiring '" + name + "'");
}

RunManifest parse_manifest(std::string_view text) {
  const auto body = trim(text);
  if (!body.empty() && body.front() == '{') return parse_json_manifest(text);

  RunManifest m;
  std::set<std::string> seen;
  std::size_t line_no = 0;
  for (std::string_view raw : text::split(text, '\n')) {
    ++line_no;
    const auto line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(line_no, "expected key = value");
    const std::string key(trim(line.substr(0, eq)));
    if (key.empty()) throw ParseError(line_no, "missing key");
    set_field(m, seen, key, trim(line.substr(eq + 1)));
  }
  return finish(m);
}

RunManifest load_manifest_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open manifest " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_manifest(buf.str());
}

std::string format_manifest(const RunManifest& m) {
  const Config& c = m.config;
  const WorkloadSpec& w = m.workload;
  std::ostringstream out;
  out << "dim = " << c.dim << "\n"
      << "n_wm = " << c.n_wm << "\n"
      << "stm_capacity = " << c.stm_capacity << "\n"
      << "n_stm_rem = " << c.n_stm_rem << "\n"
      << "n_ltm_rem = " << c.n_ltm_rem << "\n"
      << "n_depth = " << c.n_depth << "\n"
      << "initial_lifespan = " << text::format_double(c.initial_lifespan) << "\n"
      << "alpha = " << text::format_double(c.alpha) << "\n"
      << "workload = " << workload_kind_name(w.kind) << "\n"
      << "steps = " << w.steps << "\n"
      << "vectors_per_step = " << w.vectors_per_step << "\n"
      << "clusters = " << w.clusters << "\n"
      << "spread = " << text::format_double(w.spread) << "\n"
      << "noise = " << text::format_double(w.noise) << "\n"
      << "drift_rate = " << text::format_double(w.drift_rate) << "\n"
      << "motif_period = " << w.motif_period << "\n"
      << "motif_length = " << w.motif_length << "\n"
      << "contribution = " << contribution_kind_name(m.contribution.kind) << "\n"
      << "temperature = " << text::format_double(m.contribution.temperature) << "\n"
      << "off_task_weight = " << text::format_double(m.contribution.off_task_weight) << "\n"
      << "seed = " << m.seed << "\n"
      << "reset_period = " << m.reset_period << "\n"
      << "out = " << m.output_dir << "\n"
      << "wiring = " << wiring_name(m.wiring) << "\n"
      << "measure_recall = " << (m.measure_recall ? "true" : "false") << "\n";
  return out.str();
}

}  // namespace engram
