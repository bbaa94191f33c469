#include "exfloquet/config.hpp"

#include <charconv>
#include <cmath>
#include <string>

#include "exfloquet/errors.hpp"

namespace exfl {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double to_number(std::string_view key, std::string_view value, int line) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc() || ptr != value.data() + value.size() || value.empty())
    throw ConfigError(std::string(key), line, "not a number: '" + std::string(value) + "'");
  if (!std::isfinite(v)) throw ConfigError(std::string(key), line, "value must be finite");
  return v;
}

long long to_integer(std::string_view key, std::string_view value, int line) {
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc() || ptr != value.data() + value.size() || value.empty())
    throw ConfigError(std::string(key), line, "not an integer: '" + std::string(value) + "'");
  return v;
}

}  // namespace

void apply_setting(RunConfig& cfg, std::string_view key, std::string_view value, int line) {
  key = trim(key);
  value = trim(value);
  auto& p = cfg.params;
  auto& o = cfg.options;
  const auto num = [&] { return to_number(key, value, line); };
  if (key == "u11") p.u11 = num();
  else if (key == "u12") p.u12 = num();
  else if (key == "u22") p.u22 = num();
  else if (key == "eps21") p.eps21 = num();
  else if (key == "t1") p.t1 = num();
  else if (key == "t2") p.t2 = num();
  else if (key == "g_l") p.g_l = num();
  else if (key == "g_c") p.g_c = num();
  else if (key == "omega_l") p.omega_l = num();
  else if (key == "omega_c") p.omega_c = num();
  else if (key == "mu") p.mu = num();
  else if (key == "doping") p.doping = num();
  else if (key == "detuning") o.detuning = num();
  else if (key == "gamma") o.gamma = num();
  else if (key == "omega_step") o.omega_step = num();
  else if (key == "omega_min") o.omega_min = num();
  else if (key == "omega_max") o.omega_max = num();
  else if (key == "grid") {
    const auto l = to_integer(key, value, line);
    if (l < 4 || l > 4096 || l % 2 != 0)
      throw ConfigError("grid", line, "must be an even integer in [4, 4096]");
    o.grid = static_cast<int>(l);
  } else if (key == "seed") {
    const auto s = to_integer(key, value, line);
    if (s < 0) throw ConfigError("seed", line, "must be >= 0");
    o.seed = static_cast<std::uint64_t>(s);
  } else {
    throw ConfigError(std::string(key), line, "unknown key");
  }

  // Single-field range checks carry this line; cross-field checks wait for
  // the final validate().
  try {
    validate(cfg);
  } catch (const ConfigError& e) {
    if (e.key() != key || key == "omega_max") return;
    const std::string what = e.what();
    throw ConfigError(e.key(), line, what.substr(what.find(": ") + 2));
  }
}

RunConfig parse_config(std::string_view text, RunConfig base) {
  int line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError(std::string(trim(line)), line_no, "expected 'key = value'");
    apply_setting(base, line.substr(0, eq), line.substr(eq + 1), line_no);
  }
  validate(base);
  return base;
}

void validate(const RunConfig& cfg) {
  cfg.params.validate();
  const auto& o = cfg.options;
  if (o.detuning && !(*o.detuning > 0.0)) throw ConfigError("detuning", 0, "must be > 0");
  if (!(o.gamma > 0.0)) throw ConfigError("gamma", 0, "must be > 0");
  if (!(o.omega_step > 0.0)) throw ConfigError("omega_step", 0, "must be > 0");
  if (!(o.omega_max > o.omega_min)) throw ConfigError("omega_max", 0, "must exceed omega_min");
}

nlohmann::json to_json(const RunConfig& cfg) {
  const auto& p = cfg.params;
  const auto& o = cfg.options;
  nlohmann::json j;
  j["params"] = {{"u11", p.u11},         {"u12", p.u12},     {"u22", p.u22},
                 {"eps21", p.eps21},     {"t1", p.t1},       {"t2", p.t2},
                 {"g_l", p.g_l},         {"g_c", p.g_c},     {"omega_l", p.omega_l},
                 {"omega_c", p.omega_c}, {"mu", p.mu},       {"doping", p.doping}};
  j["options"] = {{"seed", o.seed},
                  {"gamma", o.gamma},
                  {"omega_step", o.omega_step},
                  {"omega_min", o.omega_min},
                  {"omega_max", o.omega_max}};
  j["options"]["grid"] = o.grid ? nlohmann::json(*o.grid) : nlohmann::json(nullptr);
  j["options"]["detuning"] = o.detuning ? nlohmann::json(*o.detuning) : nlohmann::json(nullptr);
  return j;
}

}  // namespace exfl
