#include <doctest.h>

#include <cmath>

#include "exfloquet/errors.hpp"
#include "exfloquet/floquet.hpp"
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
ModelParams at_exciton_detuning(ModelParams p, const BZGrid& g, double d) {
  const double wex = solve_exciton_resonance(p, g, occupations(p, g)).omega_ex;
  return with_laser(p, wex - d);
}
}  // namespace

TEST_CASE("effective band without drive is the bare lower band") {
  ModelParams p;
  p.g_l = 0.0;
  const BZGrid g(16);
  const auto b = effective_band(p, g, occupations(p, g));
  for (std::size_t k = 0; k < g.size(); ++k) {
    const auto m = g.momentum(k);
    CHECK(b.energies[k] == doctest::Approx(2.0 * p.t1 * (std::cos(m.kx) + std::cos(m.ky))).epsilon(1e-14));
  }
}

TEST_CASE("effective band decomposition and sign of the shifts") {
  const BZGrid g(32);
  const auto p = at_exciton_detuning(ModelParams{}, g, 0.03);
  const auto b = effective_band(p, g, occupations(p, g));
  const auto e1 = band_energies(p, g, Band::lower);
  for (std::size_t k = 0; k < g.size(); ++k) {
    CHECK(b.energies[k] == e1[k] + b.stark[k] + b.bs[k]);
    CHECK(b.stark[k] < 0.0);
    CHECK(b.bs[k] < 0.0);
  }
}

TEST_CASE("unscreened Stark shift at Gamma") {
  auto p = unscreened();
  p.omega_l = 2.9 - 0.03;
  const BZGrid g(16);
  const auto b = effective_band(p, g, occupations(p, g));
  CHECK(b.stark[g.gamma()] == doctest::Approx(-p.g_l * p.g_l / 0.03).epsilon(1e-10));
}

TEST_CASE("shifts scale as the square of the Rabi frequency") {
  const BZGrid g(16);
  auto p = at_exciton_detuning(ModelParams{}, g, 0.05);
  const auto occ = occupations(p, g);
  const auto e1 = band_energies(p, g, Band::lower);
  const auto b1 = effective_band(p, g, occ);
  p.g_l *= 2.0;
  const auto b2 = effective_band(p, g, occ);
  for (std::size_t k = 0; k < g.size(); ++k)
    CHECK(b2.energies[k] - e1[k] == doctest::Approx(4.0 * (b1.energies[k] - e1[k])).epsilon(1e-12));
}

TEST_CASE("screened band change broadens relative to the unscreened one") {
  const int l = 32;
  const BZGrid g(l);
  auto ps = at_exciton_detuning(ModelParams{}, g, 0.03);
  auto pu = unscreened();
  pu.omega_l = 2.9 - 0.03;
  ps.g_l = pu.g_l = 1.0;
  const auto bs = effective_band(ps, g, occupations(ps, g));
  const auto bu = effective_band(pu, g, occupations(pu, g));
  const std::size_t m = g.m_point();
  CHECK(std::abs(bs.stark[m] + bs.bs[m]) > std::abs(bu.stark[m] + bu.bs[m]));

  // Largest change on the path against the reference evaluator.
  double lib = 0.0, want = 0.0;
  for (std::size_t k : g.high_symmetry_path()) {
    lib = std::max(lib, std::abs(bs.stark[k] + bs.bs[k]));
    const auto mk = g.momentum(k);
    const double st = -1.0 / ref::screened(ps, l, ps.omega_l, {mk.kx, mk.ky});
    const double bl = -1.0 / ref::screened(ps, l, -ps.omega_l, {mk.kx, mk.ky});
    want = std::max(want, std::abs(st + bl));
  }
  CHECK(lib == doctest::Approx(want).epsilon(0.05));
}

TEST_CASE("effective hopping") {
  SUBCASE("bare band recovers t1 to second order") {
    ModelParams p;
    p.g_l = 0.0;
    double prev_err = 0.0;
    for (int l : {16, 32, 64}) {
      const BZGrid g(l);
      const auto b = effective_band(p, g, occupations(p, g));
      const double t = effective_hopping(b, g);
      CHECK(t == doctest::Approx(p.t1).epsilon(0.02));
      CHECK(effective_hopping_y(b, g) == doctest::Approx(t).epsilon(1e-10));
      const double err = std::abs(t - p.t1);
      if (prev_err > 0.0) CHECK(prev_err / err == doctest::Approx(4.0).epsilon(0.01));
      prev_err = err;
    }
  }
  SUBCASE("second-difference error shrinks fourfold on a dressed band") {
    auto p = unscreened();
    p.omega_l = 2.9 - 0.1;
    p.g_l = 0.03;
    std::vector<double> t;
    for (int l : {64, 128, 256}) {
      const BZGrid g(l);
      t.push_back(effective_hopping(effective_band(p, g, occupations(p, g)), g));
    }
    CHECK(std::abs(t[0] - t[1]) / std::abs(t[1] - t[2]) == doctest::Approx(4.0).epsilon(0.05));
  }
  SUBCASE("screening keeps the hopping positive where the bare model flattens") {
    const BZGrid g(256);
    auto p = at_exciton_detuning(ModelParams{}, g, 0.03);
    p.g_l = 0.015;
    CHECK(effective_hopping(effective_band(p, g, occupations(p, g)), g) > 0.0);
  }
}

TEST_CASE("two-level comparison") {
  ModelParams p;
  p.omega_l = 2.68;
  const auto s = tla_shifts(p, 2.71);
  CHECK(s.ratio_magnitude() == doctest::Approx(5.39 / 0.03).epsilon(1e-12));
  CHECK(s.ratio_magnitude() == doctest::Approx(179.67).epsilon(1e-4));
  const auto far = tla_shifts(p, 1e12);
  CHECK(std::abs(far.stark) < 1e-15);
  CHECK(std::abs(far.bs) < 1e-15);
  p.omega_l = 0.0;
  const auto z = tla_shifts(p, 2.71);
  CHECK(z.stark == -z.bs);
  p.omega_l = 2.71;
  CHECK_THROWS_AS(tla_shifts(p, 2.71), ResonantDenominator);
}

TEST_CASE("Stark over Bloch-Siegert ratio") {
  SUBCASE("unscreened collapse") {
    auto p = unscreened();
    p.omega_l = 2.87;
    const BZGrid g(16);
    const auto occ = occupations(p, g);
    CHECK(stark_bs_ratio(p, g, occ, g.gamma()) == doctest::Approx(192.3).epsilon(1e-3));
    const auto sd = screened_detunings(p, g, occ);
    for (std::size_t k = 0; k < g.size(); ++k) {
      const double d0 = sd.delta0[k];
      CHECK(stark_bs_ratio_signed(sd, k) == (d0 + 2.0 * p.omega_l) / d0);
      CHECK(std::abs(d0 - bare_detuning(p, g.momentum(k))) <= 1e-14);
    }
  }
  SUBCASE("orderings against the two-level value") {
    const BZGrid g(256);
    const ModelParams base;
    const auto occ = occupations(base, g);
    const double wex = solve_exciton_resonance(base, g, occ).omega_ex;
    const auto p = with_laser(base, wex - 0.03);
    const double tla = tla_shifts(p, wex).ratio_magnitude();
    CHECK(stark_bs_ratio(p, g, occ, g.gamma()) > tla);
    CHECK(stark_bs_ratio(p, g, occ, g.m_point()) < tla);
    CHECK(stark_bs_ratio(p, g, occ, g.y_point()) < tla);
  }
}
