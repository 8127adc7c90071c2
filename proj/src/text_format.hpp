#pragma once

// Shared number/list formatting for the line-based file formats. Doubles are
// written in shortest round-trip form so parsing restores them bit-exactly.

#include <charconv>
#include <cstdint>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "engram/types.hpp"

namespace engram::text {

inline std::string format_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, end);
}

inline std::string format_uint(std::uint64_t v) { return std::to_string(v); }

inline bool parse_double(std::string_view s, double& out) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

inline bool parse_uint(std::string_view s, std::uint64_t& out) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size() && !s.empty();
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

inline std::string join_ids(const std::vector<EngramId>& ids) {
  std::string out;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) out += ',';
    out += format_uint(ids[i]);
  }
  return out;
}

}  // namespace engram::text

namespace engram::text {

// "dim=16 n_wm=50 ..." in a fixed key order.
inline std::string format_config_fields(const Config& c) {
  return "dim=" + format_uint(c.dim) + " n_wm=" + format_uint(c.n_wm) +
         " stm_capacity=" + format_uint(c.stm_capacity) + " n_stm_rem=" + format_uint(c.n_stm_rem) +
         " n_ltm_rem=" + format_uint(c.n_ltm_rem) + " n_depth=" + format_uint(c.n_depth) +
         " initial_lifespan=" + format_double(c.initial_lifespan) +
         " alpha=" + format_double(c.alpha);
}

enum class FieldStatus { Applied, UnknownKey, BadValue };

inline FieldStatus apply_config_field(Config& c, std::string_view key, std::string_view value) {
  auto as_size = [&](std::size_t& slot) {
    std::uint64_t v = 0;
    if (!parse_uint(value, v)) return FieldStatus::BadValue;
    slot = static_cast<std::size_t>(v);
    return FieldStatus::Applied;
  };
  auto as_double = [&](double& slot) {
    return parse_double(value, slot) ? FieldStatus::Applied : FieldStatus::BadValue;
  };
  if (key == "dim") return as_size(c.dim);
  if (key == "n_wm") return as_size(c.n_wm);
  if (key == "stm_capacity") return as_size(c.stm_capacity);
  if (key == "n_stm_rem") return as_size(c.n_stm_rem);
  if (key == "n_ltm_rem") return as_size(c.n_ltm_rem);
  if (key == "n_depth") return as_size(c.n_depth);
  if (key == "initial_lifespan") return as_double(c.initial_lifespan);
  if (key == "alpha") return as_double(c.alpha);
  return FieldStatus::UnknownKey;
}

}  // namespace engram::text
