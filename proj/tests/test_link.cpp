#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "fris/link.hpp"

using namespace fris;
using cplx = std::complex<double>;

namespace {

Eigen::VectorXcd random_vec(std::mt19937& gen, int m) {
  std::normal_distribution<double> n(0.0, 1.0);
  Eigen::VectorXcd v(m);
  for (int i = 0; i < m; ++i) v[i] = cplx(n(gen), n(gen));
  return v;
}

SelectionMask full_mask(int m) {
  SelectionMask mask;
  for (int i = 0; i < m; ++i) mask.on_indices.push_back(i);
  return mask;
}

}  // namespace

TEST_CASE("optimal_phases aligns every term") {
  std::mt19937 gen(11);

  SUBCASE("self-alignment gives sum of |h|^2") {
    Eigen::VectorXcd h = random_vec(gen, 6);
    SelectionMask mask = full_mask(6);
    PhaseProfile pp = optimal_phases(h, h, mask);
    cplx heq = equivalent_channel(h, h, mask, pp);
    CHECK(heq.real() == doctest::Approx(h.squaredNorm()));
    CHECK(heq.imag() == doctest::Approx(0.0).epsilon(1e-12));
  }

  SUBCASE("single element, orthogonal phases") {
    Eigen::VectorXcd hb(1), hr(1);
    hb[0] = cplx(1, 0);
    hr[0] = cplx(0, 1);
    SelectionMask mask = full_mask(1);
    PhaseProfile pp = optimal_phases(hb, hr, mask);
    cplx heq = equivalent_channel(hb, hr, mask, pp);
    CHECK(std::abs(heq) == doctest::Approx(1.0));
    CHECK(heq.imag() == doctest::Approx(0.0).epsilon(1e-12));
  }

  SUBCASE("dominates 1000 random phase profiles") {
    const int m = 16;
    Eigen::VectorXcd hb = random_vec(gen, m);
    Eigen::VectorXcd hr = random_vec(gen, m);
    SelectionMask mask{{0, 2, 3, 5, 8, 9, 12, 15}};  // M_o = 8
    PhaseProfile opt = optimal_phases(hb, hr, mask);
    const double best = std::abs(equivalent_channel(hb, hr, mask, opt));
    // Equals the coherent sum of magnitudes.
    double coherent = 0.0;
    for (int i : mask.on_indices) coherent += std::abs(hr[i]) * std::abs(hb[i]);
    CHECK(best == doctest::Approx(coherent).epsilon(1e-12));
    std::uniform_real_distribution<double> u(-M_PI, M_PI);
    for (int rep = 0; rep < 1000; ++rep) {
      PhaseProfile rnd;
      for (std::size_t k = 0; k < mask.on_indices.size(); ++k)
        rnd.phases.push_back(u(gen));
      CHECK(std::abs(equivalent_channel(hb, hr, mask, rnd)) <= best + 1e-12);
    }
  }
}

TEST_CASE("equivalent_channel") {
  SUBCASE("empty mask sums to zero") {
    Eigen::VectorXcd h = Eigen::VectorXcd::Ones(3);
    CHECK(equivalent_channel(h, h, SelectionMask{}, PhaseProfile{}) ==
          cplx(0, 0));
  }

  SUBCASE("constructed cancellation under zero phases") {
    Eigen::VectorXcd hb(2), hr(2);
    hb[0] = cplx(1, 0);
    hr[0] = cplx(1, 0);  // term +1
    hb[1] = cplx(-1, 0);
    hr[1] = cplx(1, 0);  // term -1
    SelectionMask mask = full_mask(2);
    PhaseProfile zeros{{0.0, 0.0}};
    const double coherent = 2.0;
    CHECK(std::abs(equivalent_channel(hb, hr, mask, zeros)) <
          coherent - 1e-9);
  }
}

TEST_CASE("instantaneous_snr") {
  LinkBudget unit{1, 1, 1, 1};
  BackscatterParams bp{1.0, 1};
  CHECK(instantaneous_snr(unit, bp, cplx(1, 0), cplx(0, 0)) == 0.0);
  CHECK(instantaneous_snr(unit, bp, cplx(1, 0), cplx(1, 0)) ==
        doctest::Approx(1.0));
  const double g1 = instantaneous_snr(unit, bp, cplx(0.3, 0.4), cplx(1, 1));
  const double g2 = instantaneous_snr(unit, bp, cplx(0.3, 0.4), cplx(2, 2));
  CHECK(g2 == doctest::Approx(4.0 * g1));
  // bd_symbol has no effect.
  BackscatterParams flipped{1.0, -1};
  CHECK(instantaneous_snr(unit, flipped, cplx(0.3, 0.4), cplx(1, 1)) == g1);
}

TEST_CASE("rate") {
  CHECK(rate(0.0) == 0.0);
  CHECK(rate(1.0) == doctest::Approx(1.0));
  CHECK(rate(3.0) == doctest::Approx(2.0));
  CHECK_THROWS_AS(rate(-0.1), std::invalid_argument);
}

TEST_CASE("scale covariance of the optimally phased link") {
  std::mt19937 gen(4);
  Eigen::VectorXcd hb = random_vec(gen, 5);
  Eigen::VectorXcd hr = random_vec(gen, 5);
  SelectionMask mask = full_mask(5);
  PhaseProfile pp = optimal_phases(hb, hr, mask);
  const double h1 = std::abs(equivalent_channel(hb, hr, mask, pp));
  Eigen::VectorXcd hb3 = 3.0 * hb;
  PhaseProfile pp3 = optimal_phases(hb3, hr, mask);
  const double h3 = std::abs(equivalent_channel(hb3, hr, mask, pp3));
  CHECK(h3 == doctest::Approx(3.0 * h1));
}

TEST_CASE("saa_rate") {
  ScenarioConfig sc;
  sc.grid_mx = 4;
  sc.grid_mz = 4;
  sc.m_o = 2;
  sc.n_draws = 5;
  sc.gain_scale = 1.0;
  const ChannelSet cs = draw_channel_set(16, 99, 5);
  const Layout grid = sc.candidate_grid();
  SelectionMask mask{{3, 9}};

  SUBCASE("matches naive direct-summation oracle") {
    const double fast = saa_rate(cs, grid, mask, sc);
    const double oracle = ref::saa_rate(cs, grid, mask, sc);
    CHECK(fast == doctest::Approx(oracle).epsilon(1e-10));
  }

  SUBCASE("N=1 equals the single-draw instantaneous rate") {
    ScenarioConfig one = sc;
    one.n_draws = 1;
    const ChannelSet cs1 = draw_channel_set(16, 99, 1);
    const ColoredDraws cd = color_draws(cs1, grid, one);
    const double direct =
        std::log2(1.0 + per_draw_snr(cd, mask)[0]);
    CHECK(saa_rate(cs1, grid, mask, one) == doctest::Approx(direct));
  }

  SUBCASE("monotone in the ON set") {
    SelectionMask sub{{3, 9}};
    SelectionMask super{{1, 3, 9, 14}};
    CHECK(saa_rate(cs, grid, super, sc) >= saa_rate(cs, grid, sub, sc));
  }
}

TEST_CASE("penalty") {
  Aperture ap{1.0, 1.0};
  PenaltyParams pp{2.0};

  CHECK(penalty({{0.2, 0.2}, {0.8, 0.8}}, ap, {0.1}, pp) == 0.0);
  // 0.1 m outside along x: tau * 0.01.
  CHECK(penalty({{1.1, 0.5}}, ap, {0.0}, pp) == doctest::Approx(2.0 * 0.01));
  // Two points at d_min/2: tau * (d_min/2)^2.
  const double d_min = 0.2;
  CHECK(penalty({{0.5, 0.5}, {0.6, 0.5}}, ap, {d_min}, pp) ==
        doctest::Approx(2.0 * 0.01));

  // Continuity near the feasibility boundary.
  const double eps = 1e-7;
  CHECK(penalty({{0.5, 0.5}, {0.5 + d_min - eps, 0.5}}, ap, {d_min}, pp) <
        1e-10);
}
