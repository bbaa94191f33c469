#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "exfloquet/config.hpp"
#include "exfloquet/parallel.hpp"
#include "exfloquet/scan_result.hpp"

namespace exfl {

/// Named tables produced by one scenario; the first carries the scenario name.
using ScenarioOutput = std::vector<std::pair<std::string, ScanResult>>;

const std::vector<std::string>& scenario_names();

/// Grid size a scenario uses when the config does not set one.
int default_grid(std::string_view scenario);

/// Computes every table of a scenario. Throws ConfigError for an unknown name
/// and propagates solver errors.
ScenarioOutput run_scenario(std::string_view name, const RunConfig& cfg, Workers workers = {});

/// Writes <table>.csv, <table>.json and <table>.meta.json for every table.
void write_outputs(const ScenarioOutput& out, const std::filesystem::path& dir);

/// First sign change of `values`, located by linear interpolation in `axis`.
std::optional<double> zero_crossing(std::span<const double> axis, std::span<const double> values);

}  // namespace exfl
