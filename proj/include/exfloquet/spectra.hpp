#pragma once

#include <span>
#include <vector>

#include "exfloquet/lattice.hpp"
#include "exfloquet/parallel.hpp"

namespace exfl {

/// Mean-field absorbance, normalized to unit maximum. `scale` is the
/// unnormalized maximum, so alpha * scale recovers absolute spectral weight.
struct SpectrumCurve {
  std::vector<double> omegas;
  std::vector<double> alpha;
  double gamma = 0.0;
  double scale = 1.0;
};

/// alpha(w) ∝ (1/(pi N)) sum_k n_k Im[1 / Δ_k(w + i gamma)], with the complex
/// frequency entering only through the bare detuning.
SpectrumCurve absorbance(const ModelParams& p, const BZGrid& grid, const Occupation& occ,
                         std::span<const double> omegas, double gamma, Workers workers = {});

/// Evenly spaced frequencies lo, lo + step, ... up to hi (inclusive within
/// half a step).
std::vector<double> frequency_grid(double lo, double hi, double step);

/// Lowest-frequency interior local maximum above 10% of the global maximum.
/// Throws NoPeak if there is none.
double peak_location(const SpectrumCurve& curve);

/// Trapezoid integral of the unnormalized spectrum.
double spectral_weight(const SpectrumCurve& curve);

}  // namespace exfl
