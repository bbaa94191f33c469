#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "exfloquet/lattice.hpp"
#include "exfloquet/parallel.hpp"

namespace exfl {

/// Closest a Hartree-shifted denominator may come to zero, in eV.
inline constexpr double kResonanceGuard = 1e-9;
/// Root tolerance for the exciton condition (eV and dimensionless residual).
inline constexpr double kExcitonTolerance = 1e-10;

/// Interband transitions of a band structure: one gap and one lower-band
/// occupation per momentum, plus the per-spin filling used by the Hartree
/// shifts. The lattice and the small-system oracle both reduce to this.
struct TransitionSet {
  std::vector<double> gaps;
  std::vector<double> occ;
  double nu = 1.0;

  std::size_t size() const { return gaps.size(); }
};

TransitionSet transitions(const ModelParams& p, const BZGrid& grid, const Occupation& occ);

/// -U11 nu_sbar + U12 (nu_up + nu_down).
double hartree_shift(const ModelParams& p, double nu_same, double nu_opposite);
double hartree_shift(const ModelParams& p, const Occupation& occ, Spin s = Spin::up);

/// (U12/N) sum_k n_k / (gap_k - omega + shift): the left side of the exciton
/// condition. Throws ResonantDenominator when a term sits on its pole.
double exciton_sum(const TransitionSet& t, double u12, double shift, double omega);
std::complex<double> exciton_sum(const TransitionSet& t, double u12, double shift,
                                 std::complex<double> omega);

struct ScreenedDetunings {
  std::vector<double> delta0;    // bare Δ⁰_k
  std::vector<double> delta;     // screened Stark denominator Δ_{k,s}
  std::vector<double> delta_bs;  // screened Bloch-Siegert denominator Δ^BS_{k,s}
};

/// Screened Stark denominators of an arbitrary transition set, driven at
/// p.omega_l with equal per-spin fillings t.nu.
std::vector<double> screened_detunings(const TransitionSet& t, const ModelParams& p);

/// Both screened denominators on every grid point in O(N).
ScreenedDetunings screened_detunings(const ModelParams& p, const BZGrid& grid,
                                     const Occupation& occ, Spin s = Spin::up,
                                     Workers workers = {});

/// Δ_{k,s} = D_k - (U12/N) sum_k' n_k' D_k / D_k', D_k = Δ⁰_k - U11 nu_sbar + U12 sum nu.
double screened_detuning(const ModelParams& p, const BZGrid& grid, const Occupation& occ,
                         std::size_t k, Spin s = Spin::up);

/// As screened_detuning with Δ⁰ -> Δ⁰ + 2 omega_L throughout.
double screened_detuning_bs(const ModelParams& p, const BZGrid& grid, const Occupation& occ,
                            std::size_t k, Spin s = Spin::up);

/// min_k (gap_k - U11 nu_sbar + U12 sum nu): bottom of the Hartree-shifted
/// interband continuum.
double band_resonance_edge(const ModelParams& p, const BZGrid& grid, const Occupation& occ);

struct ResonanceReport {
  double omega_ex = 0.0;
  double continuum_edge = 0.0;
  double binding = 0.0;   // continuum_edge - omega_ex
  double delta_ex = 0.0;  // omega_ex - omega_L
  bool converged = false;
  double residual = 0.0;  // |exciton_sum - 1| at omega_ex
};

/// Bisection for the exciton condition on an arbitrary transition set.
ResonanceReport solve_exciton_resonance(const TransitionSet& t, double u11, double u12,
                                        double omega_l);
ResonanceReport solve_exciton_resonance(const ModelParams& p, const BZGrid& grid,
                                        const Occupation& occ);

/// Resonance the laser is detuned from when comparing models: the exciton when
/// U12 > 0, otherwise the continuum edge.
double resonance_reference(const ModelParams& p, const BZGrid& grid, const Occupation& occ);

/// Static, zero-temperature electron-hole t-matrix of the ladder series.
double grpa_tmatrix(const ModelParams& p, const BZGrid& grid, const Occupation& occ);

struct StarkPair {
  double grpa = 0.0;      // |g_L|^2 (-n_k / D_k) T
  double screened = 0.0;  // -|g_L|^2 n_k / Δ_{k,s}
};

StarkPair grpa_stark_equivalence(const ModelParams& p, const BZGrid& grid, const Occupation& occ,
                                 std::size_t k);

}  // namespace exfl
