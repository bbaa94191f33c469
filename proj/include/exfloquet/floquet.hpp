#pragma once

#include <cstddef>
#include <vector>

#include "exfloquet/lattice.hpp"
#include "exfloquet/parallel.hpp"
#include "exfloquet/screening.hpp"

namespace exfl {

/// Laser-dressed lower band: eps_k - |g_L|^2/Δ_{k,s} - |g_L|^2/Δ^BS_{k,s}.
/// The chemical potential is dropped (a constant shift).
struct EffectiveBand {
  std::vector<double> energies;
  std::vector<double> stark;  // -|g_L|^2 / Δ_{k,s}
  std::vector<double> bs;     // -|g_L|^2 / Δ^BS_{k,s}
};

EffectiveBand effective_band(const ModelParams& p, const BZGrid& grid, const Occupation& occ,
                             Workers workers = {});
EffectiveBand effective_band(const ModelParams& p, const BZGrid& grid,
                             const ScreenedDetunings& sd);

/// Nearest-neighbour hopping of the cosine band with the same curvature at
/// Gamma, from a central second difference along kx with spacing 2 pi / l.
double effective_hopping(const EffectiveBand& band, const BZGrid& grid);
/// Same along ky; equal to the kx value by square symmetry.
double effective_hopping_y(const EffectiveBand& band, const BZGrid& grid);

struct TlaShifts {
  double stark = 0.0;  // |g_L|^2 / (omega_L - omega_ex)
  double bs = 0.0;     // |g_L|^2 / (omega_L + omega_ex)

  double ratio_magnitude() const;
};

/// Stark and Bloch-Siegert shifts of an isolated two-level emitter at omega_ex.
TlaShifts tla_shifts(const ModelParams& p, double omega_ex);

/// Δ^BS_{k,s} / Δ_{k,s}, i.e. Stark over Bloch-Siegert shift (signed).
double stark_bs_ratio_signed(const ScreenedDetunings& sd, std::size_t k);
double stark_bs_ratio_signed(const ModelParams& p, const BZGrid& grid, const Occupation& occ,
                             std::size_t k);
/// Magnitude of the above.
double stark_bs_ratio(const ModelParams& p, const BZGrid& grid, const Occupation& occ,
                      std::size_t k);

}  // namespace exfl
