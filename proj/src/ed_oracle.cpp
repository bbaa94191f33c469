#include "exfloquet/ed_oracle.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "exfloquet/errors.hpp"
#include "exfloquet/summation.hpp"

namespace exfl {

namespace {

void check_system(const SmallSystem& sys, std::size_t max_k) {
  if (sys.eps1.size() != sys.eps2.size())
    throw std::invalid_argument("SmallSystem: eps1 and eps2 differ in length");
  if (sys.n_k() == 0 || sys.n_k() > max_k)
    throw std::invalid_argument("SmallSystem: need 1.." + std::to_string(max_k) + " momenta");
}

using State = std::uint32_t;

double parity_below(State x, unsigned mode) {
  return (std::popcount(x & ((State{1} << mode) - 1)) & 1) ? -1.0 : 1.0;
}

// c†_m c_n |x>, returns false when the result vanishes.
bool hop(State x, unsigned m, unsigned n, State& out, double& sign) {
  if (!(x >> n & 1)) return false;
  sign = parity_below(x, n);
  x ^= State{1} << n;
  if (x >> m & 1) return false;
  sign *= parity_below(x, m);
  out = x | State{1} << m;
  return true;
}

// Sparse matrix elementwise max |a - b| / max(|a|, |b|).
double relative_deviation(const Eigen::SparseMatrix<double>& a,
                          const Eigen::SparseMatrix<double>& b) {
  const Eigen::SparseMatrix<double> diff = a - b;
  double worst = 0.0;
  for (int col = 0; col < diff.outerSize(); ++col)
    for (Eigen::SparseMatrix<double>::InnerIterator it(diff, col); it; ++it) {
      const double scale = std::max(std::abs(a.coeff(it.row(), col)), std::abs(b.coeff(it.row(), col)));
      if (scale > 0.0) worst = std::max(worst, std::abs(it.value()) / scale);
    }
  return worst;
}

}  // namespace

std::vector<double> SmallSystem::gaps() const {
  std::vector<double> g(n_k());
  for (std::size_t q = 0; q < g.size(); ++q) g[q] = eps2[q] - eps1[q];
  return g;
}

TransitionSet SmallSystem::transitions() const {
  return {gaps(), std::vector<double>(n_k(), 1.0), 1.0};
}

std::vector<double> pair_hamiltonian(const SmallSystem& sys) {
  check_system(sys, kMaxOracleMomenta);
  const auto& p = sys.params;
  const std::size_t n = sys.n_k();
  const std::size_t dim = 1 + 2 * n;
  const auto g = sys.gaps();
  std::vector<double> h(dim * dim, 0.0);
  const double exchange = p.u12 / static_cast<double>(n);
  for (std::size_t s = 0; s < 2; ++s)
    for (std::size_t q = 0; q < n; ++q) {
      const std::size_t i = 1 + s * n + q;
      for (std::size_t qp = 0; qp < n; ++qp) h[i * dim + 1 + s * n + qp] = -exchange;
      h[i * dim + i] += g[q] - p.u11 + 2.0 * p.u12;
    }
  return h;
}

double oracle_stark(const SmallSystem& sys) {
  const auto h = pair_hamiltonian(sys);
  const auto dim = static_cast<Eigen::Index>(1 + 2 * sys.n_k());
  const Eigen::MatrixXd hm =
      Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
          h.data(), dim, dim);
  const Eigen::MatrixXd m = sys.params.omega_l * Eigen::MatrixXd::Identity(dim, dim) - hm;
  Eigen::VectorXd dipole = Eigen::VectorXd::Ones(dim);
  dipole(0) = 0.0;
  const Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
  if (!lu.isInvertible() || lu.rcond() < 1e-14)
    throw SingularSolve("omega_L sits on an eigenvalue of the pair Hamiltonian");
  const Eigen::VectorXd x = lu.solve(dipole);
  return dipole.dot(x);
}

double analytic_stark(const SmallSystem& sys) {
  check_system(sys, kMaxOracleMomenta);
  const auto delta = screened_detunings(sys.transitions(), sys.params);
  std::vector<double> terms;
  terms.reserve(2 * delta.size());
  for (int s = 0; s < 2; ++s)
    for (double d : delta) terms.push_back(-1.0 / d);
  return pairwise_sum(terms);
}

double oracle_exciton_eigen(const SmallSystem& sys) {
  const auto h = pair_hamiltonian(sys);
  const auto n = static_cast<Eigen::Index>(sys.n_k());
  const auto dim = 1 + 2 * n;
  Eigen::MatrixXd block(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) block(i, j) = h[(1 + i) * dim + 1 + j];
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(block, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

double full_fock_stark(const SmallSystem& sys) {
  check_system(sys, 2);
  if (sys.n_k() != 2) throw std::invalid_argument("full_fock_stark: needs n_k = 2");
  const auto& p = sys.params;
  // Modes (site, band, spin) -> (site * 2 + band) * 2 + spin, sites at r = 0, 1
  // and momenta 0, pi, so the site-space hopping of band b is
  // [(e0 + epi) / 2, (e0 - epi) / 2; (e0 - epi) / 2, (e0 + epi) / 2].
  const auto mode = [](unsigned site, unsigned band, unsigned spin) {
    return (site * 2 + band) * 2 + spin;
  };
  State up_mask = 0;
  for (unsigned site = 0; site < 2; ++site)
    for (unsigned band = 0; band < 2; ++band) up_mask |= State{1} << mode(site, band, 0);
  // H conserves the number of each spin, so the sector of the sea (two up,
  // two down) is the whole space the dipole can reach.
  std::vector<State> basis;
  std::vector<int> position(256, -1);
  for (State x = 0; x < 256; ++x)
    if (std::popcount(x & up_mask) == 2 && std::popcount(x & ~up_mask) == 2) {
      position[x] = static_cast<int>(basis.size());
      basis.push_back(x);
    }
  const auto dim = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
  const double* eps[2] = {sys.eps1.data(), sys.eps2.data()};
  for (Eigen::Index col = 0; col < dim; ++col) {
    const State x = basis[static_cast<std::size_t>(col)];
    for (unsigned band = 0; band < 2; ++band) {
      const double onsite = 0.5 * (eps[band][0] + eps[band][1]);
      const double bond = 0.5 * (eps[band][0] - eps[band][1]);
      for (unsigned spin = 0; spin < 2; ++spin)
        for (unsigned a = 0; a < 2; ++a)
          for (unsigned b = 0; b < 2; ++b) {
            State y;
            double sign;
            if (hop(x, mode(a, band, spin), mode(b, band, spin), y, sign))
              h(position[y], col) += sign * (a == b ? onsite : bond);
          }
    }
    for (unsigned site = 0; site < 2; ++site) {
      const auto occ = [&](unsigned band, unsigned spin) {
        return static_cast<double>(x >> mode(site, band, spin) & 1);
      };
      h(col, col) += p.u11 * occ(0, 0) * occ(0, 1) + p.u22 * occ(1, 0) * occ(1, 1) +
                     p.u12 * (occ(0, 0) + occ(0, 1)) * (occ(1, 0) + occ(1, 1));
    }
  }
  State sea = 0;
  for (unsigned site = 0; site < 2; ++site)
    for (unsigned spin = 0; spin < 2; ++spin) sea |= State{1} << mode(site, 0, spin);
  const double e_sea = h(position[sea], position[sea]);

  Eigen::VectorXd dipole = Eigen::VectorXd::Zero(dim);
  for (unsigned site = 0; site < 2; ++site)
    for (unsigned spin = 0; spin < 2; ++spin) {
      State y;
      double sign;
      if (hop(sea, mode(site, 1, spin), mode(site, 0, spin), y, sign)) dipole(position[y]) += sign;
    }
  const Eigen::MatrixXd m = (p.omega_l + e_sea) * Eigen::MatrixXd::Identity(dim, dim) - h;
  const Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
  if (!lu.isInvertible()) throw SingularSolve("omega_L sits on an eigenvalue of the Fock Hamiltonian");
  return dipole.dot(lu.solve(dipole));
}

CommutatorReport check_commutator_identities(const SmallSystem& sys, int trials,
                                             std::uint64_t seed) {
  check_system(sys, 3);
  if (trials <= 0) throw std::invalid_argument("check_commutator_identities: trials must be > 0");
  const auto& p = sys.params;
  const unsigned n = static_cast<unsigned>(sys.n_k());
  const unsigned modes = 4 * n;  // (k, band, spin) -> (k * 2 + band) * 2 + spin
  const int max_photons = 2;
  const std::size_t fermion_states = std::size_t{1} << modes;
  const std::size_t dim = fermion_states * (max_photons + 1);

  std::vector<double> mode_energy(modes);
  for (unsigned k = 0; k < n; ++k)
    for (unsigned band = 0; band < 2; ++band)
      for (unsigned spin = 0; spin < 2; ++spin)
        mode_energy[(k * 2 + band) * 2 + spin] = (band == 0 ? sys.eps1[k] : sys.eps2[k]) - p.mu;

  std::vector<double> h0(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    const auto x = static_cast<State>(i % fermion_states);
    double e = static_cast<double>(i / fermion_states) * p.omega_c;
    for (unsigned m = 0; m < modes; ++m)
      if (x >> m & 1) e += mode_energy[m];
    h0[i] = e;
  }
  const auto [lo_it, hi_it] = std::minmax_element(h0.begin(), h0.end());
  const double lo = *lo_it - 2.0;
  const double hi = *hi_it + 2.0;

  const auto idx = static_cast<Eigen::Index>(dim);
  const auto resolvent = [&](double e) {
    Eigen::SparseMatrix<double> g(idx, idx);
    g.reserve(Eigen::VectorXi::Constant(idx, 1));
    for (std::size_t i = 0; i < dim; ++i)
      g.insert(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = 1.0 / (e - h0[i]);
    g.makeCompressed();
    return g;
  };

  std::vector<Eigen::SparseMatrix<double>> raise;
  std::vector<double> shift;
  for (unsigned m = 0; m < modes; ++m) {
    std::vector<Eigen::Triplet<double>> trip;
    for (std::size_t i = 0; i < dim; ++i) {
      const auto x = static_cast<State>(i % fermion_states);
      if (x >> m & 1) continue;
      const std::size_t j = i - x + (x | State{1} << m);
      trip.emplace_back(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i),
                        parity_below(x, m));
    }
    Eigen::SparseMatrix<double> c(idx, idx);
    c.setFromTriplets(trip.begin(), trip.end());
    raise.push_back(std::move(c));
    shift.push_back(mode_energy[m]);
  }
  {
    std::vector<Eigen::Triplet<double>> trip;
    for (std::size_t i = 0; i + fermion_states < dim; ++i) {
      const double np = static_cast<double>(i / fermion_states);
      trip.emplace_back(static_cast<Eigen::Index>(i + fermion_states),
                        static_cast<Eigen::Index>(i), std::sqrt(np + 1.0));
    }
    Eigen::SparseMatrix<double> a(idx, idx);
    a.setFromTriplets(trip.begin(), trip.end());
    raise.push_back(std::move(a));
    shift.push_back(p.omega_c);
  }

  // Energies closer than this to a pole of any resolvent in a comparison are
  // redrawn, keeping rounding in 1/(E - h) far below the tolerance.
  constexpr double kPoleClearance = 0.02;
  const auto clear_of_spectrum = [&](double e) {
    for (double v : h0)
      if (std::abs(e - v) < kPoleClearance) return false;
    return true;
  };

  CommutatorReport r;
  r.dimension = dim;
  r.trials = trials;
  r.seed = seed;
  r.negative_control = std::numeric_limits<double>::infinity();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> pick(lo, hi);
  for (int t = 0; t < trials; ++t) {
    double control = 0.0;
    for (std::size_t op = 0; op < raise.size(); ++op) {
      const double s = shift[op];
      double e = pick(rng);
      for (int attempt = 0; !(clear_of_spectrum(e) && clear_of_spectrum(e - s) &&
                              clear_of_spectrum(e - 0.5 * s));
           ++attempt) {
        if (attempt > 100000) throw std::runtime_error("could not draw an admissible energy");
        ++r.resampled;
        e = pick(rng);
      }
      const Eigen::SparseMatrix<double> lhs = resolvent(e) * raise[op];
      const Eigen::SparseMatrix<double> rhs = raise[op] * resolvent(e - s);
      const double dev = relative_deviation(lhs, rhs);
      double& slot = op + 1 == raise.size() ? r.photon_deviation : r.fermion_deviation;
      slot = std::max(slot, dev);
      const Eigen::SparseMatrix<double> wrong = raise[op] * resolvent(e - 0.5 * s);
      control = std::max(control, relative_deviation(lhs, wrong));
    }
    r.negative_control = std::min(r.negative_control, control);
  }
  return r;
}

SmallSystem random_system(std::mt19937_64& rng, std::size_t n_k, const ModelParams& base,
                          double gap_lo, double gap_hi) {
  std::uniform_real_distribution<double> lower(-0.5, 0.5);
  std::uniform_real_distribution<double> gap(gap_lo, gap_hi);
  SmallSystem sys;
  sys.params = base;
  for (std::size_t q = 0; q < n_k; ++q) {
    const double e1 = lower(rng);
    sys.eps1.push_back(e1);
    sys.eps2.push_back(e1 + gap(rng));
  }
  return sys;
}

OracleSuiteReport run_oracle_suite(std::uint64_t seed, int instances, int trials,
                                   const ModelParams& base) {
  OracleSuiteReport r;
  r.seed = seed;
  r.instances = instances;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> size(1, 4);
  std::uniform_real_distribution<double> drive(2.0, 3.0);
  for (int i = 0; i < instances; ++i) {
    auto sys = random_system(rng, static_cast<std::size_t>(size(rng)), base);
    // Keep the drive at least 0.05 eV from every pair level so both routes
    // stay well conditioned.
    const auto h = pair_hamiltonian(sys);
    const auto dim = static_cast<Eigen::Index>(1 + 2 * sys.n_k());
    const Eigen::MatrixXd hm =
        Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
            h.data(), dim, dim);
    const Eigen::VectorXd levels =
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(hm, Eigen::EigenvaluesOnly).eigenvalues();
    do {
      sys.params.omega_l = drive(rng);
    } while ((levels.array() - sys.params.omega_l).abs().minCoeff() < 0.05);

    const double analytic = analytic_stark(sys);
    r.stark_relative =
        std::max(r.stark_relative, std::abs(oracle_stark(sys) - analytic) / std::abs(analytic));
    if (sys.params.u12 > 0.0) {
      const auto res = solve_exciton_resonance(sys.transitions(), sys.params.u11,
                                               sys.params.u12, sys.params.omega_l);
      r.eigen_absolute = std::max(r.eigen_absolute, std::abs(oracle_exciton_eigen(sys) - res.omega_ex));
    }
  }

  auto pair = random_system(rng, 2, base);
  pair.params.omega_l = oracle_exciton_eigen(pair) - 0.3;
  r.commutators = check_commutator_identities(pair, trials, seed);
  const double restricted = oracle_stark(pair);
  r.leakage_relative = std::abs(full_fock_stark(pair) - restricted) / std::abs(restricted);
  return r;
}

}  // namespace exfl
