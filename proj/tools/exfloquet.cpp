#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "exfloquet/config.hpp"
#include "exfloquet/errors.hpp"
#include "exfloquet/scenarios.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw exfl::ConfigError("config", 0, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Screened Floquet theory of a driven, cavity-coupled two-band Hubbard model"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Run a scenario and write its data files");
  std::string scenario;
  std::string config_path;
  std::vector<std::string> sets;
  std::string out_dir = ".";
  int grid = 0;
  long long seed = -1;
  unsigned workers = 1;
  run->add_option("scenario", scenario, "Scenario name")
      ->required()
      ->check(CLI::IsMember(exfl::scenario_names()));
  run->add_option("--config", config_path, "key = value configuration file");
  run->add_option("--set", sets, "Override one setting, key=value (repeatable)");
  run->add_option("--out", out_dir, "Output directory");
  run->add_option("--grid", grid, "Grid size l (l x l momenta)");
  run->add_option("--seed", seed, "Random seed");
  run->add_option("--workers", workers, "Worker threads")->check(CLI::Range(1u, 256u));

  auto* list = app.add_subcommand("list", "List scenarios");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  if (*list) {
    for (const auto& name : exfl::scenario_names()) std::cout << name << '\n';
    return 0;
  }

  exfl::RunConfig cfg;
  try {
    if (!config_path.empty()) cfg = exfl::parse_config(read_file(config_path));
    for (const auto& s : sets) {
      const auto eq = s.find('=');
      if (eq == std::string::npos) throw exfl::ConfigError(s, 0, "expected key=value");
      exfl::apply_setting(cfg, s.substr(0, eq), s.substr(eq + 1));
    }
    if (run->count("--grid") > 0) exfl::apply_setting(cfg, "grid", std::to_string(grid));
    if (run->count("--seed") > 0) exfl::apply_setting(cfg, "seed", std::to_string(seed));
    exfl::validate(cfg);
  } catch (const exfl::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  }

  try {
    const auto out = exfl::run_scenario(scenario, cfg, exfl::Workers{workers});
    exfl::write_outputs(out, out_dir);
    for (const auto& [name, table] : out) std::cout << "wrote " << name << ".csv\n";
  } catch (const exfl::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const exfl::Error& e) {
    std::cerr << scenario << ": solver failure: " << e.what() << '\n';
    return kExitSolver;
  } catch (const std::exception& e) {
    std::cerr << scenario << ": " << e.what() << '\n';
    return 1;
  }
  return 0;
}
