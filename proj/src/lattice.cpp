#include "exfloquet/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

#include "exfloquet/errors.hpp"
#include "exfloquet/summation.hpp"

namespace exfl {

namespace {

void require_finite(const char* key, double v) {
  if (!std::isfinite(v)) throw ConfigError(key, 0, "value must be finite");
}

// cos(2 pi n / l) evaluated on the reduced angle so that n and l - n give
// bit-identical results.
double grid_cos(int n, int l) {
  const int m = std::min(n, l - n);
  return std::cos(2.0 * std::numbers::pi * static_cast<double>(m) / static_cast<double>(l));
}

}  // namespace

void ModelParams::validate() const {
  require_finite("u11", u11);
  require_finite("u12", u12);
  require_finite("u22", u22);
  require_finite("eps21", eps21);
  require_finite("t1", t1);
  require_finite("t2", t2);
  require_finite("g_l", g_l);
  require_finite("g_c", g_c);
  require_finite("omega_l", omega_l);
  require_finite("omega_c", omega_c);
  require_finite("mu", mu);
  require_finite("doping", doping);
  if (u11 < 0.0) throw ConfigError("u11", 0, "must be >= 0");
  if (u12 < 0.0) throw ConfigError("u12", 0, "must be >= 0");
  if (doping < 0.0 || doping >= 1.0) throw ConfigError("doping", 0, "must lie in [0, 1)");
}

ModelParams with_laser(const ModelParams& p, double omega_l) {
  ModelParams q = p;
  q.omega_c = omega_l + p.delta_c();
  q.omega_l = omega_l;
  return q;
}

double dispersion(const ModelParams& p, Band band, Momentum k) {
  const double c = std::cos(k.kx) + std::cos(k.ky);
  return band == Band::lower ? 2.0 * p.t1 * c : p.eps21 + 2.0 * p.t2 * c;
}

double bare_detuning(const ModelParams& p, Momentum k) {
  return dispersion(p, Band::upper, k) - dispersion(p, Band::lower, k) - p.omega_l;
}

BZGrid::BZGrid(int l) : l_(l) {
  if (l < 1) throw std::invalid_argument("BZGrid: l must be positive");
  std::vector<double> cosines(static_cast<std::size_t>(l));
  for (int n = 0; n < l; ++n) cosines[static_cast<std::size_t>(n)] = grid_cos(n, l);
  cos_sum_.resize(static_cast<std::size_t>(l) * static_cast<std::size_t>(l));
  for (int ix = 0; ix < l; ++ix)
    for (int iy = 0; iy < l; ++iy)
      cos_sum_[index(ix, iy)] = cosines[static_cast<std::size_t>(ix)] + cosines[static_cast<std::size_t>(iy)];
}

std::size_t BZGrid::index(int ix, int iy) const {
  const auto wrap = [this](int n) { return ((n % l_) + l_) % l_; };
  return static_cast<std::size_t>(wrap(ix)) * static_cast<std::size_t>(l_) +
         static_cast<std::size_t>(wrap(iy));
}

Momentum BZGrid::momentum(std::size_t i) const {
  const double h = 2.0 * std::numbers::pi / static_cast<double>(l_);
  return {h * ix(i), h * iy(i)};
}

std::size_t BZGrid::inverse(std::size_t i) const { return index(-ix(i), -iy(i)); }

std::size_t BZGrid::y_point() const {
  if (l_ % 2 != 0) throw std::invalid_argument("BZGrid: Y point needs even l");
  return index(0, l_ / 2);
}

std::size_t BZGrid::m_point() const {
  if (l_ % 2 != 0) throw std::invalid_argument("BZGrid: M point needs even l");
  return index(l_ / 2, l_ / 2);
}

std::vector<std::size_t> BZGrid::high_symmetry_path() const {
  if (l_ % 2 != 0) throw std::invalid_argument("BZGrid: high-symmetry path needs even l");
  std::vector<std::size_t> path;
  const int half = l_ / 2;
  for (int j = half; j > 0; --j) path.push_back(index(0, j));
  for (int j = 0; j <= half; ++j) path.push_back(index(j, j));
  return path;
}

std::vector<double> band_energies(const ModelParams& p, const BZGrid& grid, Band band) {
  const auto c = grid.cos_sum();
  std::vector<double> e(c.size());
  const double center = band == Band::lower ? 0.0 : p.eps21;
  const double t = band == Band::lower ? p.t1 : p.t2;
  for (std::size_t i = 0; i < c.size(); ++i) e[i] = center + 2.0 * t * c[i];
  return e;
}

std::vector<double> band_gaps(const ModelParams& p, const BZGrid& grid) {
  const auto e1 = band_energies(p, grid, Band::lower);
  const auto e2 = band_energies(p, grid, Band::upper);
  std::vector<double> g(e1.size());
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = e2[i] - e1[i];
  return g;
}

Occupation fill_lowest(std::span<const double> energies, std::span<const std::size_t> keys,
                       double doping) {
  if (!(doping >= 0.0 && doping < 1.0)) throw ConfigError("doping", 0, "must lie in [0, 1)");
  if (energies.size() != keys.size())
    throw std::invalid_argument("fill_lowest: energies and keys differ in length");
  const std::size_t n = energies.size();
  const auto filled = static_cast<std::size_t>(std::llround((1.0 - doping) * static_cast<double>(n)));

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (energies[a] != energies[b]) return energies[a] < energies[b];
    return keys[a] < keys[b];
  });

  Occupation occ;
  occ.n_k.assign(n, 0.0);
  for (std::size_t j = 0; j < std::min(filled, n); ++j) occ.n_k[order[j]] = 1.0;
  occ.nu = n == 0 ? 0.0 : pairwise_sum(occ.n_k) / static_cast<double>(n);
  return occ;
}

Occupation occupations(const ModelParams& p, const BZGrid& grid) {
  const auto e1 = band_energies(p, grid, Band::lower);
  // Grid index order is already lexicographic in (kx, ky).
  std::vector<std::size_t> keys(grid.size());
  std::iota(keys.begin(), keys.end(), std::size_t{0});
  return fill_lowest(e1, keys, p.doping);
}

}  // namespace exfl
