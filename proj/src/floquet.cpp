#include "exfloquet/floquet.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "exfloquet/errors.hpp"

namespace exfl {

namespace {

void guard(const std::vector<double>& d, const char* what) {
  for (std::size_t k = 0; k < d.size(); ++k)
    if (!(std::abs(d[k]) >= kResonanceGuard))
      throw ResonantDenominator(std::string(what) + " vanishes at grid point " + std::to_string(k));
}

double curvature_hopping(const EffectiveBand& band, const BZGrid& grid, bool along_x) {
  if (grid.l() < 3) throw std::invalid_argument("effective_hopping: grid too coarse");
  if (band.energies.size() != grid.size())
    throw std::invalid_argument("effective_hopping: band does not match grid");
  const double h = 2.0 * std::numbers::pi / grid.l();
  const std::size_t plus = along_x ? grid.index(1, 0) : grid.index(0, 1);
  const std::size_t minus = along_x ? grid.index(-1, 0) : grid.index(0, -1);
  const auto& e = band.energies;
  const double second = (e[plus] - 2.0 * e[grid.gamma()] + e[minus]) / (h * h);
  return -0.5 * second;
}

}  // namespace

EffectiveBand effective_band(const ModelParams& p, const BZGrid& grid,
                             const ScreenedDetunings& sd) {
  guard(sd.delta, "screened Stark denominator");
  guard(sd.delta_bs, "screened Bloch-Siegert denominator");
  const auto e1 = band_energies(p, grid, Band::lower);
  const double g2 = p.g_l * p.g_l;
  EffectiveBand b;
  b.energies.resize(e1.size());
  b.stark.resize(e1.size());
  b.bs.resize(e1.size());
  for (std::size_t k = 0; k < e1.size(); ++k) {
    b.stark[k] = -g2 / sd.delta[k];
    b.bs[k] = -g2 / sd.delta_bs[k];
    b.energies[k] = e1[k] + b.stark[k] + b.bs[k];
  }
  return b;
}

EffectiveBand effective_band(const ModelParams& p, const BZGrid& grid, const Occupation& occ,
                             Workers workers) {
  return effective_band(p, grid, screened_detunings(p, grid, occ, Spin::up, workers));
}

double effective_hopping(const EffectiveBand& band, const BZGrid& grid) {
  return curvature_hopping(band, grid, true);
}

double effective_hopping_y(const EffectiveBand& band, const BZGrid& grid) {
  return curvature_hopping(band, grid, false);
}

double TlaShifts::ratio_magnitude() const { return std::abs(stark / bs); }

TlaShifts tla_shifts(const ModelParams& p, double omega_ex) {
  const double detuning = p.omega_l - omega_ex;
  if (!(std::abs(detuning) >= 1e-12))
    throw ResonantDenominator("two-level Stark shift: laser on the exciton resonance");
  const double g2 = p.g_l * p.g_l;
  return {g2 / detuning, g2 / (p.omega_l + omega_ex)};
}

double stark_bs_ratio_signed(const ScreenedDetunings& sd, std::size_t k) {
  if (!(std::abs(sd.delta.at(k)) >= kResonanceGuard))
    throw ResonantDenominator("screened Stark denominator vanishes");
  return sd.delta_bs[k] / sd.delta[k];
}

double stark_bs_ratio_signed(const ModelParams& p, const BZGrid& grid, const Occupation& occ,
                             std::size_t k) {
  return stark_bs_ratio_signed(screened_detunings(p, grid, occ), k);
}

double stark_bs_ratio(const ModelParams& p, const BZGrid& grid, const Occupation& occ,
                      std::size_t k) {
  return std::abs(stark_bs_ratio_signed(p, grid, occ, k));
}

}  // namespace exfl
