#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "exfloquet/lattice.hpp"
#include "exfloquet/screening.hpp"

namespace exfl {

/// A handful of momenta with arbitrary band energies and a completely filled
/// lower band.
struct SmallSystem {
  std::vector<double> eps1;
  std::vector<double> eps2;
  ModelParams params;

  std::size_t n_k() const { return eps1.size(); }
  std::vector<double> gaps() const;
  TransitionSet transitions() const;
};

inline constexpr std::size_t kMaxOracleMomenta = 6;

/// Restricted Hamiltonian on {|sea>} ∪ {b†_{q,s}|sea>}, energies relative to
/// the sea. Basis order: sea, then (s, q) with index 1 + s n_k + q.
std::vector<double> pair_hamiltonian(const SmallSystem& sys);

/// <sea| D† (omega_L - H_pair)^{-1} D |sea> / |g_L|^2 by dense LU solve.
double oracle_stark(const SmallSystem& sys);
/// sum_{q,s} (-Δ_{q,s})^{-1} from the screened-denominator formula.
double analytic_stark(const SmallSystem& sys);

/// Lowest eigenvalue of one spin block of H_pair.
double oracle_exciton_eigen(const SmallSystem& sys);

/// Same Stark quantity from the full interacting Hamiltonian of two lattice
/// sites (n_k = 2 at k = 0 and pi, both bands, both spins), restricted only by
/// its conserved spin-resolved particle numbers.
double full_fock_stark(const SmallSystem& sys);

struct CommutatorReport {
  std::size_t dimension = 0;
  int trials = 0;
  int resampled = 0;
  std::uint64_t seed = 0;
  double fermion_deviation = 0.0;   // max |g(E) c† - c† g(E - eps + mu)|
  double photon_deviation = 0.0;    // max |g(E) a† - a† g(E - omega_c)|
  double negative_control = 0.0;    // min over trials of the wrong-shift deviation
};

/// Checks the free-resolvent commutation identities as sparse matrix
/// identities on the Fock space of all 4 n_k fermion modes times photon
/// numbers 0..2 (n_k <= 3).
CommutatorReport check_commutator_identities(const SmallSystem& sys, int trials,
                                             std::uint64_t seed);

/// Random instance with gaps in [gap_lo, gap_hi] and eps1 in [-0.5, 0.5].
SmallSystem random_system(std::mt19937_64& rng, std::size_t n_k, const ModelParams& base,
                          double gap_lo = 2.5, double gap_hi = 4.5);

struct OracleSuiteReport {
  std::uint64_t seed = 0;
  int instances = 0;
  double stark_relative = 0.0;   // max |oracle - analytic| / |analytic|
  double eigen_absolute = 0.0;   // max |lowest eigenvalue - solver omega_ex|
  CommutatorReport commutators;
  double leakage_relative = 0.0;  // full Fock vs restricted, n_k = 2
};

/// Random small instances (n_k in 1..4, full filling) plus the commutator
/// suite on an n_k = 2 system.
OracleSuiteReport run_oracle_suite(std::uint64_t seed, int instances, int trials,
                                   const ModelParams& base);

}  // namespace exfl
