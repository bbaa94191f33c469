#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace exfl {

/// Physical parameters of the driven, cavity-coupled two-band Hubbard model.
/// All energies in eV with hbar = 1. Defaults are the tetracene-like set:
/// U11 = 1.6, U12 = 0.8, eps21 = 3.7, t1 = 0.05, t2 = -0.15.
struct ModelParams {
  double u11 = 1.6;
  double u12 = 0.8;
  double u22 = 0.0;  // stored only; no implemented formula uses it
  double eps21 = 3.7;
  double t1 = 0.05;
  double t2 = -0.15;
  double g_l = 0.01;
  double g_c = 0.001;
  double omega_l = 2.68;
  double omega_c = 2.78;
  double mu = 0.0;      // cancels in every detuning
  double doping = 0.0;  // hole fraction per spin, [0, 1)

  double t21() const { return t2 - t1; }
  double delta_c() const { return omega_c - omega_l; }

  /// Throws ConfigError naming the first invalid field.
  void validate() const;
};

/// Copy of p driven at a new laser frequency with the laser-cavity detuning
/// held fixed.
ModelParams with_laser(const ModelParams& p, double omega_l);

enum class Band { lower = 1, upper = 2 };
enum class Spin { up, down };

struct Momentum {
  double kx = 0.0;
  double ky = 0.0;
};

/// eps_b + 2 t_b (cos kx + cos ky), with eps_1 = 0 and eps_2 = eps21.
double dispersion(const ModelParams& p, Band band, Momentum k);

/// eps_{k,2} - eps_{k,1} - omega_L.
double bare_detuning(const ModelParams& p, Momentum k);

/// Uniform l x l mesh over the Brillouin zone, k = 2 pi n / l with n = 0..l-1,
/// so Gamma is always on-mesh. Points are ordered lexicographically by
/// (ix, iy); index = ix * l + iy.
class BZGrid {
 public:
  explicit BZGrid(int l);

  int l() const { return l_; }
  std::size_t size() const { return cos_sum_.size(); }
  double weight() const { return 1.0 / static_cast<double>(size()); }

  std::size_t index(int ix, int iy) const;
  int ix(std::size_t i) const { return static_cast<int>(i / static_cast<std::size_t>(l_)); }
  int iy(std::size_t i) const { return static_cast<int>(i % static_cast<std::size_t>(l_)); }
  Momentum momentum(std::size_t i) const;

  /// Index of -k (mod 2 pi).
  std::size_t inverse(std::size_t i) const;

  std::size_t gamma() const { return 0; }
  /// (0, pi); requires even l.
  std::size_t y_point() const;
  /// (pi, pi); requires even l.
  std::size_t m_point() const;

  /// Cached cos kx + cos ky per point. Exactly inversion symmetric.
  std::span<const double> cos_sum() const { return cos_sum_; }

  /// Grid-commensurate path Y -> Gamma -> M (both legs inclusive of Gamma once).
  std::vector<std::size_t> high_symmetry_path() const;

 private:
  int l_;
  std::vector<double> cos_sum_;
};

/// Band energies on the grid, using the cached structure factor.
std::vector<double> band_energies(const ModelParams& p, const BZGrid& grid, Band band);
/// eps_{k,2} - eps_{k,1} on the grid.
std::vector<double> band_gaps(const ModelParams& p, const BZGrid& grid);

/// Zero-temperature lower-band occupation (spin-symmetric).
struct Occupation {
  std::vector<double> n_k;  // 0 or 1 per grid point
  double nu = 1.0;          // filling per spin

  double nu_of(Spin) const { return nu; }
};

/// Fills the round((1 - doping) N) lowest states of `energies`. Ties are broken
/// by `keys` (ascending), so the result does not depend on enumeration order.
Occupation fill_lowest(std::span<const double> energies,
                       std::span<const std::size_t> keys, double doping);

/// Step-function filling of the lower band, ties broken by (kx, ky).
Occupation occupations(const ModelParams& p, const BZGrid& grid);

}  // namespace exfl
