#include "exfloquet/scenarios.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

#include "exfloquet/cavity.hpp"
#include "exfloquet/ed_oracle.hpp"
#include "exfloquet/errors.hpp"
#include "exfloquet/floquet.hpp"
#include "exfloquet/screening.hpp"
#include "exfloquet/spectra.hpp"
#include "exfloquet/version.hpp"

namespace exfl {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Scan axes are built as i / per_unit so every value is the correctly rounded
// decimal it names.
std::vector<double> steps(int first, int last, double per_unit) {
  std::vector<double> v;
  for (int i = first; i <= last; ++i) v.push_back(static_cast<double>(i) / per_unit);
  return v;
}

ModelParams unscreened(ModelParams p) {
  p.u11 = 0.0;
  p.u12 = 0.0;
  return p;
}

struct Context {
  std::string name;
  RunConfig cfg;
  int l = 0;
  double detuning = 0.0;
  Workers workers;

  nlohmann::json metadata(const std::string& table) const {
    nlohmann::json m;
    m["scenario"] = name;
    m["table"] = table;
    m["version"] = kVersion;
    m["config"] = to_json(cfg);
    m["grid"] = l;
    m["seed"] = cfg.options.seed;
    m["detuning"] = detuning;
    return m;
  }
};

void add_path_columns(ScanResult& r, const BZGrid& grid, std::span<const std::size_t> path) {
  std::vector<double> kx, ky;
  for (std::size_t k : path) {
    kx.push_back(grid.momentum(k).kx);
    ky.push_back(grid.momentum(k).ky);
  }
  r.add_column("kx", kx);
  r.add_column("ky", ky);
}

std::vector<double> path_axis(std::size_t n) {
  std::vector<double> a(n);
  for (std::size_t i = 0; i < n; ++i) a[i] = static_cast<double>(i);
  return a;
}

// Stark plus Bloch-Siegert change of the lower band per |g_L|^2, with the
// laser `detuning` below the model's own resonance.
std::vector<double> band_change(const ModelParams& m, const BZGrid& grid, double detuning,
                                Workers workers) {
  const auto occ = occupations(m, grid);
  auto pm = with_laser(m, resonance_reference(m, grid, occ) - detuning);
  pm.g_l = 1.0;
  const auto band = effective_band(pm, grid, occ, workers);
  std::vector<double> change(grid.size());
  for (std::size_t k = 0; k < change.size(); ++k) change[k] = band.stark[k] + band.bs[k];
  return change;
}

ScenarioOutput fig1a(const Context& c) {
  const BZGrid grid(c.l);
  const auto path = grid.high_symmetry_path();
  const auto scr = band_change(c.cfg.params, grid, c.detuning, c.workers);
  const auto bare = band_change(unscreened(c.cfg.params), grid, c.detuning, c.workers);
  ScanResult r;
  r.axis_name = "path_index";
  r.axis = path_axis(path.size());
  add_path_columns(r, grid, path);
  std::vector<double> a, b;
  for (std::size_t k : path) {
    a.push_back(scr[k]);
    b.push_back(bare[k]);
  }
  r.add_column("change_screened", a);
  r.add_column("change_unscreened", b);
  r.metadata = c.metadata("fig1a");
  r.metadata["units"] = "band change per |g_L|^2, 1/eV";
  return {{"fig1a", r}};
}

std::vector<double> hopping_scan(const ModelParams& m, const BZGrid& grid, double detuning,
                                 std::span<const double> g_values, Workers workers) {
  const auto occ = occupations(m, grid);
  auto pm = with_laser(m, resonance_reference(m, grid, occ) - detuning);
  const auto sd = screened_detunings(pm, grid, occ, Spin::up, workers);
  std::vector<double> t(g_values.size());
  for (std::size_t i = 0; i < g_values.size(); ++i) {
    pm.g_l = g_values[i];
    t[i] = effective_hopping(effective_band(pm, grid, sd), grid);
  }
  return t;
}

nlohmann::json optional_json(std::optional<double> v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

ScenarioOutput fig1b(const Context& c) {
  const BZGrid grid(c.l);
  const auto& p = c.cfg.params;
  ScanResult r;
  r.axis_name = "g_l";
  r.axis = steps(0, 100, 2000.0);
  const auto t = hopping_scan(p, grid, c.detuning, r.axis, c.workers);
  const auto t0 = hopping_scan(unscreened(p), grid, c.detuning, r.axis, c.workers);
  r.add_column("t_eff", t);
  r.add_column("t_eff_unscreened", t0);
  r.metadata = c.metadata("fig1b");
  r.metadata["t_eff_zero_crossing"] = optional_json(zero_crossing(r.axis, t));
  r.metadata["t_eff_unscreened_zero_crossing"] = optional_json(zero_crossing(r.axis, t0));
  r.metadata["closed_form_unscreened_zero"] =
      std::sqrt(2.0 * std::abs(p.t1) * c.detuning * c.detuning / (2.0 * std::abs(p.t21())));
  return {{"fig1b", r}};
}

// Rows of an interaction sweep at fixed Δ_ex: re-solve omega_ex, drive
// `detuning` below it, report the Stark/BS ratio at Gamma and the TLA ratio.
ScanResult ratio_sweep(const Context& c, const BZGrid& grid, const char* axis_name,
                       std::vector<double> values, double ModelParams::*field) {
  const std::size_t n = values.size();
  std::vector<double> ok(n, 1.0), omega_ex(n), ratio(n), tla(n);
  parallel_for(n, c.workers, [&](std::size_t i) {
    ModelParams q = c.cfg.params;
    q.*field = values[i];
    try {
      const auto occ = occupations(q, grid);
      const double wex = solve_exciton_resonance(q, grid, occ).omega_ex;
      const auto pm = with_laser(q, wex - c.detuning);
      omega_ex[i] = wex;
      ratio[i] = std::abs(stark_bs_ratio_signed(screened_detunings(pm, grid, occ), grid.gamma()));
      tla[i] = tla_shifts(pm, wex).ratio_magnitude();
    } catch (const Error&) {
      ok[i] = 0.0;
      omega_ex[i] = ratio[i] = tla[i] = kNaN;
    }
  });
  ScanResult r;
  r.axis_name = axis_name;
  r.axis = std::move(values);
  r.add_column("ok", ok);
  r.add_column("omega_ex", omega_ex);
  r.add_column("ratio_gamma", ratio);
  r.add_column("ratio_tla", tla);
  return r;
}

ScenarioOutput fig2(const Context& c) {
  const BZGrid grid(c.l);
  const auto& p = c.cfg.params;
  const auto occ = occupations(p, grid);
  const double wex = solve_exciton_resonance(p, grid, occ).omega_ex;
  const auto bare = unscreened(p);
  const auto bare_occ = occupations(bare, grid);
  const double bare_edge = resonance_reference(bare, grid, bare_occ);

  ScanResult r;
  r.axis_name = "delta_ex";
  r.axis = steps(1, 50, 100.0);
  const std::size_t n = r.axis.size();
  std::vector<double> rg(n), ry(n), rm(n), tla(n), rg0(n);
  const std::size_t ky = grid.y_point();
  const std::size_t km = grid.m_point();
  parallel_for(n, c.workers, [&](std::size_t i) {
    const double d = r.axis[i];
    const auto pm = with_laser(p, wex - d);
    const auto sd = screened_detunings(pm, grid, occ);
    rg[i] = std::abs(stark_bs_ratio_signed(sd, grid.gamma()));
    ry[i] = std::abs(stark_bs_ratio_signed(sd, ky));
    rm[i] = std::abs(stark_bs_ratio_signed(sd, km));
    tla[i] = tla_shifts(pm, wex).ratio_magnitude();
    const auto sd0 = screened_detunings(with_laser(bare, bare_edge - d), grid, bare_occ);
    rg0[i] = std::abs(stark_bs_ratio_signed(sd0, grid.gamma()));
  });
  r.add_column("ratio_gamma", rg);
  r.add_column("ratio_y", ry);
  r.add_column("ratio_m", rm);
  r.add_column("ratio_tla", tla);
  r.add_column("ratio_gamma_unscreened", rg0);
  r.metadata = c.metadata("fig2");
  r.metadata["omega_ex"] = wex;

  auto u11 = ratio_sweep(c, grid, "u11", steps(2, 24, 10.0), &ModelParams::u11);
  u11.metadata = c.metadata("fig2_u11");
  auto u12 = ratio_sweep(c, grid, "u12", steps(2, 24, 20.0), &ModelParams::u12);
  u12.metadata = c.metadata("fig2_u12");
  return {{"fig2", r}, {"fig2_u11", u11}, {"fig2_u12", u12}};
}

ScenarioOutput fig3a(const Context& c) {
  const BZGrid grid(c.l);
  const auto path = grid.high_symmetry_path();
  const auto kernel_for = [&](const ModelParams& m) {
    const auto occ = occupations(m, grid);
    const auto pm = with_laser(m, resonance_reference(m, grid, occ) - c.detuning);
    return interaction_kernel(pm, screened_detunings(pm, grid, occ, Spin::up, c.workers));
  };
  const auto scr = kernel_for(c.cfg.params);
  const auto bare = kernel_for(unscreened(c.cfg.params));
  ScanResult r;
  r.axis_name = "path_index";
  r.axis = path_axis(path.size());
  add_path_columns(r, grid, path);
  std::vector<double> vs, vu, ratio;
  for (std::size_t k : path) {
    vs.push_back(scr.forward(k));
    vu.push_back(bare.forward(k));
    ratio.push_back(vs.back() / vu.back());
  }
  r.add_column("v_screened", vs);
  r.add_column("v_unscreened", vu);
  r.add_column("enhancement", ratio);
  r.metadata = c.metadata("fig3a");
  return {{"fig3a", r}};
}

ScenarioOutput fig3b(const Context& c) {
  const BZGrid grid(c.l);
  const auto& p = c.cfg.params;
  const auto bare = unscreened(p);
  const auto occ = occupations(p, grid);
  const auto bare_occ = occupations(bare, grid);
  const double ref = resonance_reference(p, grid, occ);
  const double bare_ref = resonance_reference(bare, grid, bare_occ);
  const std::size_t points[3] = {grid.gamma(), grid.y_point(), grid.m_point()};

  ScanResult r;
  r.axis_name = "detuning";
  r.axis = steps(5, 50, 100.0);
  const std::size_t n = r.axis.size();
  std::vector<std::vector<double>> cols(3, std::vector<double>(n));
  parallel_for(n, c.workers, [&](std::size_t i) {
    const double d = r.axis[i];
    const auto ks = interaction_kernel(with_laser(p, ref - d), grid, occ);
    const auto ku = interaction_kernel(with_laser(bare, bare_ref - d), grid, bare_occ);
    for (int j = 0; j < 3; ++j) cols[j][i] = ks.forward(points[j]) / ku.forward(points[j]);
  });
  r.add_column("enhancement_gamma", cols[0]);
  r.add_column("enhancement_y", cols[1]);
  r.add_column("enhancement_m", cols[2]);
  r.metadata = c.metadata("fig3b");
  return {{"fig3b", r}};
}

ScenarioOutput fig3c(const Context& c) {
  const BZGrid grid(c.l);
  const auto u12 = steps(2, 24, 20.0);
  auto r = u12_sweep(c.cfg.params, grid, c.detuning, u12, c.workers);
  const auto failures = r.metadata["failures"];
  r.metadata = c.metadata("fig3c");
  r.metadata["failures"] = failures;
  return {{"fig3c", r}};
}

ScenarioOutput fig4(const Context& c) {
  const BZGrid grid(c.l);
  ScanResult r;
  r.axis_name = "omega_l";
  r.axis = steps(1000, 1600, 500.0);
  const std::size_t n = r.axis.size();
  for (double t21 : {-0.2, -0.1, -0.05}) {
    ModelParams m = c.cfg.params;
    m.t1 = m.t2 - t21;
    const auto occ = occupations(m, grid);
    std::vector<double> d(n), d0(n);
    parallel_for(n, c.workers, [&](std::size_t i) {
      try {
        const auto sd = screened_detunings(with_laser(m, r.axis[i]), grid, occ);
        d[i] = sd.delta[grid.gamma()];
        d0[i] = sd.delta0[grid.gamma()];
      } catch (const ResonantDenominator&) {
        d[i] = d0[i] = kNaN;
      }
    });
    const std::string tag = "_t21_" + format_double(t21);
    r.add_column("delta_gamma" + tag, d);
    r.add_column("delta0_gamma" + tag, d0);
  }
  r.metadata = c.metadata("fig4");
  return {{"fig4", r}};
}

ScenarioOutput resonance(const Context& c) {
  const BZGrid grid(c.l);
  const auto& p = c.cfg.params;
  const auto rep = solve_exciton_resonance(p, grid, occupations(p, grid));
  ScanResult r;
  r.axis_name = "l";
  r.axis = {static_cast<double>(c.l)};
  r.add_column("omega_ex", {rep.omega_ex});
  r.add_column("continuum_edge", {rep.continuum_edge});
  r.add_column("binding", {rep.binding});
  r.add_column("delta_ex", {rep.delta_ex});
  r.add_column("converged", {rep.converged ? 1.0 : 0.0});
  r.add_column("residual", {rep.residual});
  r.metadata = c.metadata("resonance");
  return {{"resonance", r}};
}

ScenarioOutput absorbance_scenario(const Context& c) {
  const BZGrid grid(c.l);
  const auto& p = c.cfg.params;
  const auto& o = c.cfg.options;
  const auto occ = occupations(p, grid);
  const auto omegas = frequency_grid(o.omega_min, o.omega_max, o.omega_step);
  const auto curve = absorbance(p, grid, occ, omegas, o.gamma, c.workers);
  ScanResult r;
  r.axis_name = "omega";
  r.axis = curve.omegas;
  r.add_column("alpha", curve.alpha);
  r.metadata = c.metadata("absorbance");
  r.metadata["gamma"] = curve.gamma;
  r.metadata["scale"] = curve.scale;
  try {
    r.metadata["peak_location"] = peak_location(curve);
  } catch (const NoPeak&) {
    r.metadata["peak_location"] = nullptr;
  }
  r.metadata["omega_ex"] = p.u12 > 0.0
                               ? nlohmann::json(solve_exciton_resonance(p, grid, occ).omega_ex)
                               : nlohmann::json(nullptr);
  return {{"absorbance", r}};
}

ScenarioOutput oracle(const Context& c) {
  constexpr int kInstances = 50;
  constexpr int kTrials = 20;
  const auto rep = run_oracle_suite(c.cfg.options.seed, kInstances, kTrials, c.cfg.params);
  ScanResult r;
  r.axis_name = "seed";
  r.axis = {static_cast<double>(rep.seed)};
  r.add_column("instances", {static_cast<double>(rep.instances)});
  r.add_column("stark_relative", {rep.stark_relative});
  r.add_column("eigen_absolute", {rep.eigen_absolute});
  r.add_column("commutator_trials", {static_cast<double>(rep.commutators.trials)});
  r.add_column("fermion_deviation", {rep.commutators.fermion_deviation});
  r.add_column("photon_deviation", {rep.commutators.photon_deviation});
  r.add_column("negative_control", {rep.commutators.negative_control});
  r.add_column("leakage_relative", {rep.leakage_relative});
  r.metadata = c.metadata("oracle");
  r.metadata["fock_dimension"] = rep.commutators.dimension;
  r.metadata["resampled_energies"] = rep.commutators.resampled;
  return {{"oracle", r}};
}

}  // namespace

const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names = {"fig1a", "fig1b",     "fig2",       "fig3a",
                                                 "fig3b", "fig3c",     "fig4",       "resonance",
                                                 "absorbance", "oracle"};
  return names;
}

int default_grid(std::string_view scenario) { return scenario == "resonance" ? 1024 : 256; }

ScenarioOutput run_scenario(std::string_view name, const RunConfig& cfg, Workers workers) {
  validate(cfg);
  Context c;
  c.name = std::string(name);
  c.cfg = cfg;
  c.l = cfg.options.grid.value_or(default_grid(name));
  c.workers = workers;
  const bool fig3 = name.starts_with("fig3");
  c.detuning = cfg.options.detuning.value_or(fig3 ? 0.05 : 0.03);

  if (name == "fig1a") return fig1a(c);
  if (name == "fig1b") return fig1b(c);
  if (name == "fig2") return fig2(c);
  if (name == "fig3a") return fig3a(c);
  if (name == "fig3b") return fig3b(c);
  if (name == "fig3c") return fig3c(c);
  if (name == "fig4") return fig4(c);
  if (name == "resonance") return resonance(c);
  if (name == "absorbance") return absorbance_scenario(c);
  if (name == "oracle") return oracle(c);
  throw ConfigError("scenario", 0, "unknown scenario '" + std::string(name) + "'");
}

void write_outputs(const ScenarioOutput& out, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const auto write = [](const std::filesystem::path& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path.string() + " for writing");
    f << text;
    if (!f) throw std::runtime_error("failed writing " + path.string());
  };
  for (const auto& [name, table] : out) {
    write(dir / (name + ".csv"), to_csv(table));
    write(dir / (name + ".json"), to_json(table).dump(2) + "\n");
    write(dir / (name + ".meta.json"), table.metadata.dump(2) + "\n");
  }
}

std::optional<double> zero_crossing(std::span<const double> axis, std::span<const double> values) {
  if (axis.size() != values.size()) throw std::invalid_argument("zero_crossing: size mismatch");
  for (std::size_t i = 1; i < values.size(); ++i) {
    const double a = values[i - 1];
    const double b = values[i];
    if (a == 0.0) return axis[i - 1];
    if ((a < 0.0) != (b < 0.0) && std::isfinite(a) && std::isfinite(b))
      return axis[i - 1] + (axis[i] - axis[i - 1]) * a / (a - b);
  }
  return std::nullopt;
}

}  // namespace exfl
