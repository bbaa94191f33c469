#include <doctest.h>

#include <cmath>
#include <numbers>

#include "exfloquet/errors.hpp"
#include "exfloquet/screening.hpp"
#include "exfloquet/spectra.hpp"

using namespace exfl;

TEST_CASE("peak of a single Lorentzian is its center") {
  SpectrumCurve c;
  c.omegas = frequency_grid(0.0, 2.0, 0.01);
  for (double w : c.omegas) c.alpha.push_back(0.01 / ((w - 1.23) * (w - 1.23) + 1e-4));
  CHECK(peak_location(c) == doctest::Approx(1.23).epsilon(1e-12));
}

TEST_CASE("monotone curves have no peak") {
  SpectrumCurve c;
  c.omegas = frequency_grid(0.0, 1.0, 0.1);
  for (double w : c.omegas) c.alpha.push_back(w);
  CHECK_THROWS_AS(peak_location(c), NoPeak);
}

TEST_CASE("frequency grid") {
  const auto w = frequency_grid(2.5, 4.6, 0.002);
  CHECK(w.size() == 1051);
  CHECK(w.back() == doctest::Approx(4.6));
  CHECK_THROWS_AS(frequency_grid(1.0, 0.0, 0.1), std::invalid_argument);
}

TEST_CASE("absorbance without interactions lies in the band continuum") {
  ModelParams p;
  p.u11 = p.u12 = 0.0;
  const BZGrid g(128);
  const auto c = absorbance(p, g, occupations(p, g), frequency_grid(2.0, 5.0, 0.002), 0.005);
  for (double a : c.alpha) CHECK(a >= 0.0);
  const double peak = peak_location(c);
  CHECK(peak >= 2.9);
  CHECK(peak <= 4.5);
  CHECK(c.gamma == 0.005);
}

TEST_CASE("absorbance of the interacting model") {
  const ModelParams p;
  const BZGrid g(256);
  const auto occ = occupations(p, g);
  const double wex = solve_exciton_resonance(p, g, occ).omega_ex;
  const auto omegas = frequency_grid(2.5, 4.6, 0.002);
  const auto c = absorbance(p, g, occ, omegas, 0.005);
  SUBCASE("normalized, non-negative, peak at the exciton") {
    double top = 0.0;
    for (double a : c.alpha) {
      CHECK(a >= 0.0);
      top = std::max(top, a);
    }
    CHECK(top == 1.0);
    CHECK(std::abs(peak_location(c) - wex) <= 0.002);
  }
  SUBCASE("narrower broadening sharpens the same peak") {
    const auto half = absorbance(p, g, occ, omegas, 0.0025);
    CHECK(half.scale > c.scale);
    CHECK(std::abs(peak_location(half) - peak_location(c)) <= 0.002);
  }
  SUBCASE("spectral weight survives halving the broadening") {
    const auto half = absorbance(p, g, occ, omegas, 0.0025);
    const double w1 = spectral_weight(c);
    const double w2 = spectral_weight(half);
    CHECK(std::abs(w2 - w1) / w1 < 0.01);
  }
  SUBCASE("thread count does not change the spectrum") {
    const auto c8 = absorbance(p, g, occ, omegas, 0.005, Workers{8});
    CHECK(c8.alpha == c.alpha);
  }
}

TEST_CASE("no in-gap peak without inter-band attraction") {
  ModelParams p;
  p.u12 = 0.0;
  const BZGrid g(128);
  const auto occ = occupations(p, g);
  const double edge = band_resonance_edge(p, g, occ);
  const auto c = absorbance(p, g, occ, frequency_grid(edge - 1.0, edge + 1.7, 0.002), 0.005);
  CHECK(peak_location(c) >= edge - 0.002);
}
