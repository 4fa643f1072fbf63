#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include "fris/geometry.hpp"

using namespace fris;

TEST_CASE("grid_layout cell-centered pitch") {
  const double lambda = 0.0857;
  Aperture ap{3 * lambda, 3 * lambda};
  Layout g = grid_layout(ap, 20, 20);
  CHECK(g.size() == 400);
  const double pitch = 3 * lambda / 20.0;  // 0.15 lambda
  CHECK(g.positions[0].x == doctest::Approx(pitch / 2));
  CHECK(g.positions[0].z == doctest::Approx(pitch / 2));
  // Row-major, x fastest.
  CHECK(g.positions[1].x == doctest::Approx(1.5 * pitch));
  CHECK(g.positions[1].z == doctest::Approx(pitch / 2));
  CHECK(g.positions[20].x == doctest::Approx(pitch / 2));
  CHECK(g.positions[20].z == doctest::Approx(1.5 * pitch));
}

TEST_CASE("grid_layout degenerate and small grids") {
  Layout single = grid_layout({2.0, 4.0}, 1, 1);
  CHECK(single.size() == 1);
  CHECK(single.positions[0].x == doctest::Approx(1.0));
  CHECK(single.positions[0].z == doctest::Approx(2.0));

  Layout two = grid_layout({1.0, 1.0}, 2, 1);
  CHECK(two.positions[0].x == doctest::Approx(0.25));
  CHECK(two.positions[0].z == doctest::Approx(0.5));
  CHECK(two.positions[1].x == doctest::Approx(0.75));

  CHECK_THROWS_AS(grid_layout({1.0, 1.0}, 0, 2), std::invalid_argument);
}

TEST_CASE("min_spacing_ok") {
  Layout l;
  l.positions = {{0.0, 0.0}, {0.05, 0.0}};
  SelectionMask both{{0, 1}};
  CHECK(min_spacing_ok(l, both, {0.04}));
  CHECK_FALSE(min_spacing_ok(l, both, {0.06}));
  SelectionMask one{{0}};
  CHECK(min_spacing_ok(l, one, {100.0}));
}

TEST_CASE("selection_from_scores") {
  SelectionMask m = selection_from_scores({0.1, 0.9, 0.5}, 2);
  CHECK(m.on_indices == std::vector<int>{1, 2});
  CHECK(selection_from_scores({0.3, 0.3, 0.3}, 2).on_indices ==
        std::vector<int>{0, 1});
  CHECK(selection_from_scores({0.1, 0.9, 0.5}, 3).cardinality() == 3);
  CHECK_THROWS_AS(selection_from_scores({0.1}, 2), std::invalid_argument);
}

TEST_CASE("selection property: selected min >= unselected max") {
  std::mt19937 gen(7);
  std::uniform_real_distribution<double> u(0, 1);
  for (int rep = 0; rep < 200; ++rep) {
    std::vector<double> scores(17);
    for (auto& s : scores) s = u(gen);
    const int m_o = 1 + static_cast<int>(gen() % 16);
    SelectionMask mask = selection_from_scores(scores, m_o);
    std::vector<bool> on(scores.size(), false);
    double sel_min = 1e300, unsel_max = -1e300;
    for (int i : mask.on_indices) {
      on[i] = true;
      sel_min = std::min(sel_min, scores[i]);
    }
    for (std::size_t i = 0; i < scores.size(); ++i)
      if (!on[i]) unsel_max = std::max(unsel_max, scores[i]);
    if (m_o < static_cast<int>(scores.size())) CHECK(sel_min >= unsel_max);
  }
}

TEST_CASE("selection_from_anchor") {
  CHECK(selection_from_anchor(0, 0, 2, 2, 3, 3).on_indices ==
        std::vector<int>{0, 1, 3, 4});
  CHECK(selection_from_anchor(1, 1, 2, 2, 3, 3).on_indices ==
        std::vector<int>{4, 5, 7, 8});
  CHECK(selection_from_anchor(0, 0, 20, 20, 20, 20).cardinality() == 400);
  CHECK_THROWS_AS(selection_from_anchor(2, 2, 2, 2, 3, 3),
                  std::invalid_argument);
}

TEST_CASE("project_positions") {
  Aperture ap{1.0, 1.0};

  SUBCASE("fixed point on feasible input") {
    std::vector<Point> pts = {{0.2, 0.2}, {0.8, 0.8}};
    auto r = project_positions(pts, ap, {0.1});
    REQUIRE(r.feasible);
    CHECK(r.positions[0].x == doctest::Approx(0.2));
    CHECK(r.positions[1].z == doctest::Approx(0.8));
  }

  SUBCASE("box clamp") {
    auto r = project_positions({{-0.1, 0.5}}, ap, {0.0});
    CHECK(r.positions[0].x == 0.0);
    CHECK(r.positions[0].z == 0.5);
  }

  SUBCASE("coincident points get separated") {
    auto r = project_positions({{0.5, 0.5}, {0.5, 0.5}}, ap, {0.01});
    REQUIRE(r.feasible);
    const double d = std::hypot(r.positions[0].x - r.positions[1].x,
                                r.positions[0].z - r.positions[1].z);
    CHECK(d >= 0.01);
  }

  SUBCASE("idempotent") {
    std::mt19937 gen(3);
    std::uniform_real_distribution<double> u(-0.2, 1.2);
    for (int rep = 0; rep < 50; ++rep) {
      std::vector<Point> pts(6);
      for (auto& p : pts) p = {u(gen), u(gen)};
      auto r1 = project_positions(pts, ap, {0.05});
      if (!r1.feasible) continue;
      auto r2 = project_positions(r1.positions, ap, {0.05});
      for (std::size_t i = 0; i < pts.size(); ++i) {
        CHECK(r2.positions[i].x == doctest::Approx(r1.positions[i].x));
        CHECK(r2.positions[i].z == doctest::Approx(r1.positions[i].z));
      }
    }
  }
}

TEST_CASE("grid spacing is structural") {
  Aperture ap{0.3, 0.2};
  Layout g = grid_layout(ap, 6, 4);
  const double d_min = std::min(0.3 / 6, 0.2 / 4) - 1e-12;
  SelectionMask all;
  all.on_indices.resize(g.size());
  std::iota(all.on_indices.begin(), all.on_indices.end(), 0);
  CHECK(min_spacing_ok(g, all, {d_min}));
}

TEST_CASE("ris_baseline_layout") {
  auto [layout, mask] = ris_baseline_layout(5, 0.0857);
  CHECK(layout.size() == 25);
  CHECK(mask.cardinality() == 25);
  CHECK(layout.positions[1].x - layout.positions[0].x ==
        doctest::Approx(0.04285));
  auto [l1, m1] = ris_baseline_layout(1, 0.1);
  CHECK(l1.size() == 1);
  auto [l15, m15] = ris_baseline_layout(15, 0.0857);
  CHECK(l15.size() == 225);
}
