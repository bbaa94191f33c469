#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "exfloquet/lattice.hpp"

namespace exfl {

/// Run options that are not model parameters. Unset optionals fall back to
/// the scenario's own default.
struct RunOptions {
  std::optional<int> grid;
  std::uint64_t seed = 7;
  std::optional<double> detuning;
  double gamma = 0.005;
  double omega_step = 0.002;
  double omega_min = 2.5;
  double omega_max = 4.6;
};

struct RunConfig {
  ModelParams params;
  RunOptions options;
};

/// Applies one `key = value` setting. `line` is 0 for command-line overrides.
void apply_setting(RunConfig& cfg, std::string_view key, std::string_view value, int line = 0);

/// Flat `key = value` lines, `#` comments, blank lines ignored. Unknown keys,
/// unparsable numbers and out-of-range values throw ConfigError.
RunConfig parse_config(std::string_view text, RunConfig base = {});

/// Range checks on the whole configuration.
void validate(const RunConfig& cfg);

nlohmann::json to_json(const RunConfig& cfg);

}  // namespace exfl
