#include "exfloquet/cavity.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "exfloquet/errors.hpp"

namespace exfl {

std::vector<double> InteractionKernel::dense() const {
  const auto l = static_cast<std::size_t>(kMaxDenseL);
  if (size() > l * l) throw std::invalid_argument("InteractionKernel::dense: grid too large");
  std::vector<double> m(size() * size());
  for (std::size_t i = 0; i < size(); ++i)
    for (std::size_t j = 0; j < size(); ++j) m[i * size() + j] = (*this)(i, j);
  return m;
}

InteractionKernel interaction_kernel(const ModelParams& p, const ScreenedDetunings& sd) {
  const double dc = p.delta_c();
  if (!(std::abs(dc) >= kResonanceGuard))
    throw ResonantCavity("laser-cavity detuning " + std::to_string(dc) + " eV below guard");
  const std::size_t n = sd.delta.size();
  InteractionKernel kern;
  kern.delta_c = dc;
  kern.sign = dc > 0.0 ? -1.0 : 1.0;
  kern.v.resize(n);
  const double scale = p.g_l * p.g_c / std::sqrt(static_cast<double>(n) * std::abs(dc));
  for (std::size_t k = 0; k < n; ++k) {
    if (!(std::abs(sd.delta[k]) >= kResonanceGuard))
      throw ResonantDenominator("screened denominator vanishes at grid point " + std::to_string(k));
    kern.v[k] = scale / sd.delta[k];
  }
  return kern;
}

InteractionKernel interaction_kernel(const ModelParams& p, const BZGrid& grid,
                                     const Occupation& occ) {
  return interaction_kernel(p, screened_detunings(p, grid, occ));
}

DetunedForward forward_at_detuning(const ModelParams& p, const BZGrid& grid, std::size_t k,
                                   double detuning) {
  const auto occ = occupations(p, grid);
  DetunedForward out;
  out.resonance = resonance_reference(p, grid, occ);
  out.omega_l = out.resonance - detuning;
  const auto driven = with_laser(p, out.omega_l);
  out.v = interaction_kernel(driven, grid, occ).forward(k);
  return out;
}

double enhancement_ratio(const ModelParams& screened, const ModelParams& unscreened,
                         const BZGrid& grid, std::size_t k, double detuning) {
  if (!(detuning > 0.0)) throw std::invalid_argument("enhancement_ratio: detuning must be > 0");
  return forward_at_detuning(screened, grid, k, detuning).v /
         forward_at_detuning(unscreened, grid, k, detuning).v;
}

ScanResult u12_sweep(const ModelParams& p, const BZGrid& grid, double detuning,
                     std::span<const double> u12_values, Workers workers) {
  if (!(detuning > 0.0)) throw std::invalid_argument("u12_sweep: detuning must be > 0");
  ModelParams bare = p;
  bare.u11 = 0.0;
  bare.u12 = 0.0;
  const auto base = forward_at_detuning(bare, grid, grid.gamma(), detuning);

  const std::size_t rows = u12_values.size() + 1;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> axis(rows), baseline(rows, 0.0), ok(rows, 1.0), omega_ex(rows),
      omega_l(rows), v(rows), v_bare(rows, base.v), enhancement(rows);
  std::vector<std::string> failures(rows);

  axis[0] = 0.0;
  baseline[0] = 1.0;
  omega_ex[0] = base.resonance;
  omega_l[0] = base.omega_l;
  v[0] = base.v;
  enhancement[0] = 1.0;

  parallel_for(u12_values.size(), workers, [&](std::size_t i) {
    const std::size_t row = i + 1;
    ModelParams q = p;
    q.u12 = u12_values[i];
    axis[row] = q.u12;
    try {
      const auto fw = forward_at_detuning(q, grid, grid.gamma(), detuning);
      omega_ex[row] = fw.resonance;
      omega_l[row] = fw.omega_l;
      v[row] = fw.v;
      enhancement[row] = fw.v / base.v;
    } catch (const Error& e) {
      ok[row] = 0.0;
      omega_ex[row] = omega_l[row] = v[row] = enhancement[row] = nan;
      failures[row] = e.what();
    }
  });

  ScanResult r;
  r.axis_name = "u12";
  r.axis = axis;
  r.add_column("baseline", baseline);
  r.add_column("ok", ok);
  r.add_column("omega_ex", omega_ex);
  r.add_column("omega_l", omega_l);
  r.add_column("v_gamma", v);
  r.add_column("v_gamma_unscreened", v_bare);
  r.add_column("enhancement", enhancement);
  nlohmann::json fails = nlohmann::json::array();
  for (std::size_t row = 0; row < rows; ++row)
    if (!failures[row].empty()) fails.push_back({{"u12", axis[row]}, {"error", failures[row]}});
  r.metadata["failures"] = fails;
  r.metadata["detuning"] = detuning;
  return r;
}

}  // namespace exfl
