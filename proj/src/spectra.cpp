#include "exfloquet/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "exfloquet/errors.hpp"
#include "exfloquet/screening.hpp"
#include "exfloquet/summation.hpp"

namespace exfl {

SpectrumCurve absorbance(const ModelParams& p, const BZGrid& grid, const Occupation& occ,
                         std::span<const double> omegas, double gamma, Workers workers) {
  if (!(gamma > 0.0)) throw std::invalid_argument("absorbance: gamma must be > 0");
  const auto t = transitions(p, grid, occ);
  const double shift = hartree_shift(p, occ);
  const double n = static_cast<double>(t.size());

  SpectrumCurve c;
  c.omegas.assign(omegas.begin(), omegas.end());
  c.gamma = gamma;
  c.alpha.resize(omegas.size());
  parallel_for(omegas.size(), workers, [&](std::size_t i) {
    const std::complex<double> z(omegas[i], gamma);
    std::vector<std::complex<double>> terms(t.size());
    for (std::size_t k = 0; k < t.size(); ++k)
      terms[k] = t.occ[k] == 0.0 ? 0.0 : t.occ[k] / (t.gaps[k] - z + shift);
    const std::complex<double> s = pairwise_sum(terms);
    const std::complex<double> a = p.u12 * s / n;
    c.alpha[i] = (s / (1.0 - a)).imag() / (std::numbers::pi * n);
  });

  const double peak = c.alpha.empty() ? 0.0 : *std::max_element(c.alpha.begin(), c.alpha.end());
  if (peak > 0.0) {
    c.scale = peak;
    for (double& a : c.alpha) a /= peak;
  }
  return c;
}

std::vector<double> frequency_grid(double lo, double hi, double step) {
  if (!(step > 0.0) || !(hi >= lo)) throw std::invalid_argument("frequency_grid: bad range");
  const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 0.5)) + 1;
  std::vector<double> w(count);
  for (std::size_t i = 0; i < count; ++i) w[i] = lo + static_cast<double>(i) * step;
  return w;
}

double peak_location(const SpectrumCurve& curve) {
  const auto& a = curve.alpha;
  if (a.size() != curve.omegas.size()) throw std::invalid_argument("peak_location: size mismatch");
  if (a.size() < 3) throw NoPeak("spectrum has fewer than three points");
  const double top = *std::max_element(a.begin(), a.end());
  for (std::size_t i = 1; i + 1 < a.size(); ++i)
    if (a[i] > a[i - 1] && a[i] >= a[i + 1] && a[i] > 0.1 * top) return curve.omegas[i];
  throw NoPeak("spectrum has no interior local maximum above 10% of its maximum");
}

double spectral_weight(const SpectrumCurve& curve) {
  double sum = 0.0;
  for (std::size_t i = 1; i < curve.omegas.size(); ++i)
    sum += 0.5 * (curve.alpha[i] + curve.alpha[i - 1]) * (curve.omegas[i] - curve.omegas[i - 1]);
  return sum * curve.scale;
}

}  // namespace exfl
