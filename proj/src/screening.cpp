#include "exfloquet/screening.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "exfloquet/errors.hpp"
#include "exfloquet/summation.hpp"

namespace exfl {

namespace {

[[noreturn]] void throw_resonant(const char* what, std::size_t k, double value) {
  std::ostringstream os;
  os << what << " at grid point " << k << " (value " << value << " eV)";
  throw ResonantDenominator(os.str());
}

void guard_denominators(std::span<const double> d, const char* what) {
  for (std::size_t k = 0; k < d.size(); ++k)
    if (!(std::abs(d[k]) >= kResonanceGuard)) throw_resonant(what, k, d[k]);
}

// (U12/N) sum_k n_k / d_k over precomputed Hartree-shifted denominators.
double ladder_weight(std::span<const double> d, std::span<const double> occ, double u12) {
  std::vector<double> terms(d.size());
  for (std::size_t k = 0; k < d.size(); ++k) terms[k] = occ[k] == 0.0 ? 0.0 : occ[k] / d[k];
  return u12 * pairwise_sum(terms) / static_cast<double>(d.size());
}

// Screens a set of Hartree-shifted denominators in place.
void screen(std::vector<double>& d, std::span<const double> occ, double u12) {
  const double a = ladder_weight(d, occ, u12);
  for (double& x : d) x = x - x * a;
}

}  // namespace

TransitionSet transitions(const ModelParams& p, const BZGrid& grid, const Occupation& occ) {
  if (occ.n_k.size() != grid.size())
    throw std::invalid_argument("transitions: occupation does not match grid");
  return {band_gaps(p, grid), occ.n_k, occ.nu};
}

double hartree_shift(const ModelParams& p, double nu_same, double nu_opposite) {
  return -p.u11 * nu_opposite + p.u12 * (nu_same + nu_opposite);
}

double hartree_shift(const ModelParams& p, const Occupation& occ, Spin s) {
  const Spin other = s == Spin::up ? Spin::down : Spin::up;
  return hartree_shift(p, occ.nu_of(s), occ.nu_of(other));
}

double exciton_sum(const TransitionSet& t, double u12, double shift, double omega) {
  std::vector<double> d(t.size());
  for (std::size_t k = 0; k < d.size(); ++k) {
    d[k] = t.gaps[k] - omega + shift;
    if (t.occ[k] != 0.0 && !(std::abs(d[k]) >= kResonanceGuard))
      throw_resonant("exciton condition pole", k, d[k]);
  }
  return ladder_weight(d, t.occ, u12);
}

std::complex<double> exciton_sum(const TransitionSet& t, double u12, double shift,
                                 std::complex<double> omega) {
  std::vector<std::complex<double>> terms(t.size());
  for (std::size_t k = 0; k < terms.size(); ++k)
    terms[k] = t.occ[k] == 0.0 ? 0.0 : t.occ[k] / (t.gaps[k] - omega + shift);
  return u12 * pairwise_sum(terms) / static_cast<double>(t.size());
}

std::vector<double> screened_detunings(const TransitionSet& t, const ModelParams& p) {
  const double shift = hartree_shift(p, t.nu, t.nu);
  std::vector<double> d(t.size());
  for (std::size_t k = 0; k < d.size(); ++k) d[k] = t.gaps[k] - p.omega_l + shift;
  guard_denominators(d, "Hartree-shifted band resonance");
  screen(d, t.occ, p.u12);
  return d;
}

ScreenedDetunings screened_detunings(const ModelParams& p, const BZGrid& grid,
                                     const Occupation& occ, Spin s, Workers workers) {
  if (occ.n_k.size() != grid.size())
    throw std::invalid_argument("screened_detunings: occupation does not match grid");
  const auto c = grid.cos_sum();
  const std::size_t n = grid.size();
  const double shift = hartree_shift(p, occ, s);

  ScreenedDetunings out;
  out.delta0.resize(n);
  out.delta.resize(n);
  out.delta_bs.resize(n);
  parallel_for(n, workers, [&](std::size_t k) {
    const double gap = (p.eps21 + 2.0 * p.t2 * c[k]) - 2.0 * p.t1 * c[k];
    out.delta0[k] = gap - p.omega_l;
    out.delta[k] = out.delta0[k] + shift;
    out.delta_bs[k] = (out.delta0[k] + 2.0 * p.omega_l) + shift;
  });
  guard_denominators(out.delta, "Hartree-shifted band resonance");
  guard_denominators(out.delta_bs, "Hartree-shifted Bloch-Siegert resonance");
  screen(out.delta, occ.n_k, p.u12);
  screen(out.delta_bs, occ.n_k, p.u12);
  return out;
}

double screened_detuning(const ModelParams& p, const BZGrid& grid, const Occupation& occ,
                         std::size_t k, Spin s) {
  return screened_detunings(p, grid, occ, s).delta.at(k);
}

double screened_detuning_bs(const ModelParams& p, const BZGrid& grid, const Occupation& occ,
                            std::size_t k, Spin s) {
  return screened_detunings(p, grid, occ, s).delta_bs.at(k);
}

double band_resonance_edge(const ModelParams& p, const BZGrid& grid, const Occupation& occ) {
  const auto gaps = band_gaps(p, grid);
  const double shift = hartree_shift(p, occ);
  double edge = std::numeric_limits<double>::infinity();
  for (double g : gaps) edge = std::min(edge, g + shift);
  return edge;
}

ResonanceReport solve_exciton_resonance(const TransitionSet& t, double u11, double u12,
                                        double omega_l) {
  if (!(u12 > 0.0)) throw NoResonance("exciton solver needs U12 > 0");
  if (!(t.nu > 0.0)) throw NoResonance("exciton solver needs a non-empty lower band");
  if (t.size() == 0) throw NoResonance("exciton solver needs at least one transition");

  ModelParams mf;
  mf.u11 = u11;
  mf.u12 = u12;
  const double shift = hartree_shift(mf, t.nu, t.nu);
  double edge = std::numeric_limits<double>::infinity();
  std::size_t k_edge = 0;
  for (std::size_t k = 0; k < t.size(); ++k)
    if (t.occ[k] > 0.0 && t.gaps[k] + shift < edge) {
      edge = t.gaps[k] + shift;
      k_edge = k;
    }

  ResonanceReport r;
  r.continuum_edge = edge;
  const auto f = [&](double w) { return exciton_sum(t, u12, shift, w) - 1.0; };

  double lo = edge - u11 - 5.0 * u12;
  double hi = edge - kResonanceGuard;
  // Rounding in gap - omega + shift can land the edge term just inside the
  // guard; step down until it clears.
  while (!(std::abs(t.gaps[k_edge] - hi + shift) >= kResonanceGuard))
    hi = std::nextafter(hi, -std::numeric_limits<double>::infinity());
  const double f_lo = f(lo);
  const double f_hi = f(hi);
  if (!(f_lo < 0.0 && f_hi > 0.0)) {
    std::ostringstream os;
    os << "no sign change of the exciton condition in [" << lo << ", " << hi
       << "] (U11=" << u11 << ", U12=" << u12 << ")";
    throw NoResonance(os.str());
  }
  // The condition is increasing in omega below the edge, so plain bisection
  // down to adjacent doubles.
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (!(mid > lo && mid < hi)) break;
    if (f(mid) > 0.0)
      hi = mid;
    else
      lo = mid;
  }
  const double f_lo_end = f(lo);
  const double f_hi_end = f(hi);
  r.omega_ex = std::abs(f_lo_end) <= std::abs(f_hi_end) ? lo : hi;
  r.residual = std::min(std::abs(f_lo_end), std::abs(f_hi_end));
  r.converged = (hi - lo) <= kExcitonTolerance && r.residual <= kExcitonTolerance;
  r.binding = edge - r.omega_ex;
  r.delta_ex = r.omega_ex - omega_l;
  return r;
}

ResonanceReport solve_exciton_resonance(const ModelParams& p, const BZGrid& grid,
                                        const Occupation& occ) {
  return solve_exciton_resonance(transitions(p, grid, occ), p.u11, p.u12, p.omega_l);
}

double resonance_reference(const ModelParams& p, const BZGrid& grid, const Occupation& occ) {
  if (p.u12 > 0.0) return solve_exciton_resonance(p, grid, occ).omega_ex;
  return band_resonance_edge(p, grid, occ);
}

double grpa_tmatrix(const ModelParams& p, const BZGrid& grid, const Occupation& occ) {
  const auto t = transitions(p, grid, occ);
  const double shift = hartree_shift(p, occ);
  // Electron-hole bubble at the laser frequency, sum_q n_q / (-Δ⁰_q + U11 nu - U12 sum nu).
  std::vector<double> terms(t.size());
  for (std::size_t q = 0; q < t.size(); ++q) {
    if (t.occ[q] == 0.0) continue;
    const double d = t.gaps[q] - p.omega_l + shift;
    if (!(std::abs(d) >= kResonanceGuard)) throw_resonant("t-matrix bubble pole", q, d);
    terms[q] = t.occ[q] / (-d);
  }
  const double inverse_t = 1.0 + p.u12 * pairwise_sum(terms) / static_cast<double>(t.size());
  if (!(std::abs(inverse_t) >= 1e-12)) throw ResonantDenominator("t-matrix at the exciton pole");
  return 1.0 / inverse_t;
}

StarkPair grpa_stark_equivalence(const ModelParams& p, const BZGrid& grid, const Occupation& occ,
                                 std::size_t k) {
  const double tm = grpa_tmatrix(p, grid, occ);
  const auto sd = screened_detunings(p, grid, occ);
  const double g2 = p.g_l * p.g_l;
  const double n = occ.n_k.at(k);
  const double d = sd.delta0[k] + hartree_shift(p, occ);
  StarkPair out;
  out.grpa = g2 * (-n / d) * tm;
  out.screened = -g2 * n / sd.delta[k];
  return out;
}

}  // namespace exfl
