#include <doctest.h>

#include <cmath>
#include <vector>

#include "exfloquet/errors.hpp"
#include "exfloquet/lattice.hpp"
#include "exfloquet/screening.hpp"
#include "reference.hpp"

using namespace exfl;

namespace {
ModelParams unscreened() {
  ModelParams p;
  p.u11 = 0.0;
  p.u12 = 0.0;
  return p;
}
double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }
}  // namespace

TEST_CASE("unscreened collapse is exact on every grid point") {
  const auto p = unscreened();
  const BZGrid g(32);
  const auto occ = occupations(p, g);
  const auto sd = screened_detunings(p, g, occ);
  for (std::size_t k = 0; k < g.size(); ++k) {
    CHECK(sd.delta[k] == sd.delta0[k]);
    CHECK(sd.delta_bs[k] == sd.delta0[k] + 2.0 * p.omega_l);
    CHECK(std::abs(sd.delta0[k] - bare_detuning(p, g.momentum(k))) <= 1e-14);
  }
}

TEST_CASE("dispersionless bands: uniform shift by U12") {
  ModelParams p;
  p.t1 = p.t2 = 0.05;
  const BZGrid g(16);
  const auto occ = occupations(p, g);
  const auto sd = screened_detunings(p, g, occ);
  for (std::size_t k = 0; k < g.size(); ++k)
    CHECK(sd.delta[k] == doctest::Approx(sd.delta0[k] - p.u11 + p.u12).epsilon(1e-12));
}

TEST_CASE("screened detunings match the naive reference evaluator") {
  const ModelParams p;
  SUBCASE("Gamma on a 512 mesh, both denominators") {
    const BZGrid g(512);
    const auto occ = occupations(p, g);
    const double want = ref::screened(p, 512, p.omega_l, {0, 0});
    CHECK(rel(screened_detuning(p, g, occ, g.gamma()), want) <= 1e-12);
    const double want_bs = ref::screened(p, 512, -p.omega_l, {0, 0});
    CHECK(rel(screened_detuning_bs(p, g, occ, g.gamma()), want_bs) <= 1e-12);
  }
  SUBCASE("every point of a 32 mesh by the O(N^2) double loop") {
    const BZGrid g(32);
    const auto occ = occupations(p, g);
    const auto sd = screened_detunings(p, g, occ);
    const auto want = ref::screened_all(p, 32, p.omega_l);
    double worst = 0.0;
    for (std::size_t k = 0; k < g.size(); ++k) worst = std::max(worst, rel(sd.delta[k], want[k]));
    CHECK(worst <= 1e-12);
  }
}

TEST_CASE("Bloch-Siegert denominators coincide with Stark ones at zero drive") {
  ModelParams p;
  p.omega_l = 0.0;
  const BZGrid g(16);
  const auto sd = screened_detunings(p, g, occupations(p, g));
  for (std::size_t k = 0; k < g.size(); ++k) CHECK(sd.delta_bs[k] == sd.delta[k]);
}

TEST_CASE("spin-symmetric occupations give identical spin channels") {
  ModelParams p;
  p.doping = 0.2;
  const BZGrid g(24);
  const auto occ = occupations(p, g);
  const auto up = screened_detunings(p, g, occ, Spin::up);
  const auto down = screened_detunings(p, g, occ, Spin::down);
  CHECK(up.delta == down.delta);
  CHECK(up.delta_bs == down.delta_bs);
}

TEST_CASE("Sherman-Morrison closed form at full filling") {
  const ModelParams p;
  const int l = 64;
  const BZGrid g(l);
  const auto sd = screened_detunings(p, g, occupations(p, g));
  long double lhs = 0.0L, s = 0.0L;
  for (std::size_t k = 0; k < g.size(); ++k) lhs += -1.0L / sd.delta[k];
  for (const auto& k : ref::mesh(l)) s += -1.0L / ref::hartree(p, p.omega_l, k);
  const long double rhs = s / (1.0L + p.u12 * s / g.size());
  CHECK(std::abs(static_cast<double>((lhs - rhs) / rhs)) <= 1e-12);
}

TEST_CASE("continuum edge examples") {
  ModelParams p;
  const BZGrid g(8);
  CHECK(band_resonance_edge(p, g, occupations(p, g)) == doctest::Approx(2.9).epsilon(1e-14));
  p.u11 = 0.0;
  CHECK(band_resonance_edge(p, g, occupations(p, g)) == doctest::Approx(4.5).epsilon(1e-14));
  p = {};
  p.t1 = p.t2 = 0.1;
  CHECK(band_resonance_edge(p, g, occupations(p, g)) ==
        doctest::Approx(p.eps21 - p.u11 + 2.0 * p.u12).epsilon(1e-14));
}

TEST_CASE("exciton resonance with default parameters") {
  const ModelParams p;
  const BZGrid g(1024);
  const auto r = solve_exciton_resonance(p, g, occupations(p, g));
  CHECK(r.converged);
  CHECK(r.residual <= kExcitonTolerance);
  CHECK(r.omega_ex < r.continuum_edge);
  CHECK(r.omega_ex == doctest::Approx(2.71).epsilon(0.02 / 2.71));
  CHECK(r.binding == doctest::Approx(r.continuum_edge - r.omega_ex));
  CHECK(r.delta_ex == doctest::Approx(r.omega_ex - p.omega_l));
}

TEST_CASE("dispersionless binding energy equals U12") {
  for (double u12 : {0.2, 0.5, 0.8}) {
    ModelParams p;
    p.t1 = p.t2 = 0.05;
    p.u12 = u12;
    const BZGrid g(16);
    const auto r = solve_exciton_resonance(p, g, occupations(p, g));
    CHECK(std::abs(r.binding - u12) <= 1e-10);
    CHECK(std::abs(r.omega_ex - (p.eps21 - p.u11 + 2.0 * u12 - u12)) <= 1e-10);
  }
}

TEST_CASE("grid refinement of the exciton resonance") {
  const ModelParams p;
  const auto solve = [&](int l) {
    const BZGrid g(l);
    return solve_exciton_resonance(p, g, occupations(p, g)).omega_ex;
  };
  // The periodic trapezoid sum converges exponentially, so the strict
  // shrinking of successive differences is visible on coarse meshes only.
  std::vector<double> coarse;
  for (int l : {4, 8, 16, 32}) coarse.push_back(solve(l));
  double last = INFINITY;
  for (std::size_t i = 1; i < coarse.size(); ++i) {
    const double d = std::abs(coarse[i] - coarse[i - 1]);
    CHECK(d < last);
    last = d;
  }
  const double fine = solve(128);
  for (int l : {256, 512, 1024}) CHECK(std::abs(solve(l) - fine) <= 1e-12);
}

TEST_CASE("exciton solver failure modes") {
  ModelParams p;
  p.u12 = 0.0;
  const BZGrid g(8);
  CHECK_THROWS_AS(solve_exciton_resonance(p, g, occupations(p, g)), NoResonance);
}

TEST_CASE("exciton condition is increasing below the edge") {
  const ModelParams p;
  const BZGrid g(64);
  const auto occ = occupations(p, g);
  const auto t = transitions(p, g, occ);
  const double shift = hartree_shift(p, occ);
  const double edge = band_resonance_edge(p, g, occ);
  double prev = -INFINITY;
  for (int i = 0; i < 400; ++i) {
    const double w = edge - 4.0 + 0.01 * i;
    const double f = exciton_sum(t, p.u12, shift, w);
    CHECK(f > prev);
    prev = f;
  }
}

TEST_CASE("t-matrix") {
  const BZGrid g(64);
  SUBCASE("unity without inter-band coupling") {
    ModelParams p;
    p.u12 = 0.0;
    CHECK(grpa_tmatrix(p, g, occupations(p, g)) == 1.0);
  }
  SUBCASE("geometric series of ladder insertions") {
    // x = (U12/N) sum_q n_q / D_q, T = sum_n x^n.
    const auto ladder = [&](const ModelParams& p) {
      long double s = 0.0L;
      for (const auto& q : ref::mesh(64)) s += 1.0L / ref::hartree(p, p.omega_l, q);
      return static_cast<double>(p.u12 * s / g.size());
    };
    ModelParams p;
    p.omega_l = 2.0;
    double x = ladder(p);
    double partial = 0.0, term = 1.0;
    for (int n = 0; n < 50; ++n, term *= x) partial += term;
    CHECK(rel(grpa_tmatrix(p, g, occupations(p, g)), partial) <= 1e-12);

    p.omega_l = 2.68;
    const double t = grpa_tmatrix(p, g, occupations(p, g));
    CHECK(t > 0.0);
    CHECK(std::isfinite(t));
    x = ladder(p);
    partial = 0.0;
    term = 1.0;
    for (int n = 0; n < 50; ++n, term *= x) partial += term;
    // Near the pole 50 terms are not enough; the remainder is the geometric tail.
    CHECK(rel(t - partial, t * term) <= 1e-9);
  }
  SUBCASE("inverse vanishes linearly at the exciton") {
    ModelParams p;
    const auto occ = occupations(p, g);
    const double wex = solve_exciton_resonance(p, g, occ).omega_ex;
    std::vector<double> slope;
    for (double eps : {1e-3, 1e-4, 1e-5}) {
      p.omega_l = wex - eps;
      slope.push_back(1.0 / grpa_tmatrix(p, g, occ) / eps);
    }
    CHECK(slope[1] == doctest::Approx(slope[2]).epsilon(1e-3));
    CHECK(slope[0] == doctest::Approx(slope[2]).epsilon(1e-2));
    p.omega_l = wex;
    CHECK_THROWS_AS(grpa_tmatrix(p, g, occ), ResonantDenominator);
  }
}

TEST_CASE("GRPA bubble equals the screened Stark shift") {
  SUBCASE("defaults, every point") {
    const ModelParams p;
    const BZGrid g(32);
    const auto occ = occupations(p, g);
    for (std::size_t k = 0; k < g.size(); ++k) {
      const auto s = grpa_stark_equivalence(p, g, occ, k);
      CHECK(rel(s.grpa, s.screened) <= 1e-12);
    }
  }
  SUBCASE("no inter-band coupling") {
    ModelParams p;
    p.u12 = 0.0;
    const BZGrid g(16);
    const auto occ = occupations(p, g);
    const auto s = grpa_stark_equivalence(p, g, occ, 5);
    const double want = -p.g_l * p.g_l / (bare_detuning(p, g.momentum(5)) - p.u11);
    CHECK(s.grpa == doctest::Approx(want).epsilon(1e-14));
    CHECK(s.screened == doctest::Approx(want).epsilon(1e-14));
  }
  SUBCASE("empty state") {
    ModelParams p;
    p.doping = 0.25;
    const BZGrid g(16);
    const auto occ = occupations(p, g);
    std::size_t empty = 0;
    while (occ.n_k[empty] != 0.0) ++empty;
    const auto s = grpa_stark_equivalence(p, g, occ, empty);
    CHECK(s.grpa == 0.0);
    CHECK(s.screened == 0.0);
  }
}

TEST_CASE("resonant denominators are rejected") {
  ModelParams p;
  const BZGrid g(8);
  const auto occ = occupations(p, g);
  p.omega_l = band_resonance_edge(p, g, occ);
  CHECK_THROWS_AS(screened_detunings(p, g, occ), ResonantDenominator);
}
