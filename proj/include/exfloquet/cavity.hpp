#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "exfloquet/lattice.hpp"
#include "exfloquet/parallel.hpp"
#include "exfloquet/scan_result.hpp"
#include "exfloquet/screening.hpp"

namespace exfl {

/// Cavity-mediated, laser-stimulated density-density interaction
///   V(k, k') = -|g_L g_c|^2 / (N Δ_c Δ_{k,s} Δ_{k',s'}),
/// stored in rank-1 form V = sign * v v^T with
///   v_k = g_L g_c / (sqrt(N |Δ_c|) Δ_{k,s}),  sign = -sgn(Δ_c).
struct InteractionKernel {
  std::vector<double> v;
  double sign = -1.0;
  double delta_c = 0.0;

  std::size_t size() const { return v.size(); }
  double operator()(std::size_t k, std::size_t kp) const { return sign * v[k] * v[kp]; }
  double forward(std::size_t k) const { return (*this)(k, k); }

  /// Row-major N x N matrix; only for grids with l <= kMaxDenseL.
  std::vector<double> dense() const;
  static constexpr int kMaxDenseL = 64;
};

InteractionKernel interaction_kernel(const ModelParams& p, const BZGrid& grid,
                                     const Occupation& occ);
InteractionKernel interaction_kernel(const ModelParams& p, const ScreenedDetunings& sd);

/// Forward-scattering strength V(k, k) of a model driven `detuning` below its
/// own resonance (exciton if U12 > 0, continuum edge otherwise), with Δ_c held
/// at p.delta_c().
struct DetunedForward {
  double resonance = 0.0;
  double omega_l = 0.0;
  double v = 0.0;
};
DetunedForward forward_at_detuning(const ModelParams& p, const BZGrid& grid, std::size_t k,
                                   double detuning);

/// V_screened(k, k) / V_unscreened(k, k) with each model detuned by the same
/// amount from its own resonance.
double enhancement_ratio(const ModelParams& screened, const ModelParams& unscreened,
                         const BZGrid& grid, std::size_t k, double detuning);

/// Forward interaction at Gamma and its excitonic enhancement versus U12 at a
/// fixed detuning from the re-solved exciton. Row 0 is the unscreened baseline
/// (U11 = U12 = 0, baseline = 1). Rows whose solve fails have ok = 0 and NaN
/// values.
ScanResult u12_sweep(const ModelParams& p, const BZGrid& grid, double detuning,
                     std::span<const double> u12_values, Workers workers = {});

}  // namespace exfl
