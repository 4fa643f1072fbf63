// Timing comparison of the OpenMP kernels against the serial reference
// path: channel coloring and SAA rate evaluation on the default grid.

#include <chrono>
#include <cstdio>

#include <omp.h>

#include "fris/experiments.hpp"
#include "fris/link.hpp"

using clock_type = std::chrono::steady_clock;

static double time_ms(const std::function<void()>& fn, int reps) {
  const auto t0 = clock_type::now();
  for (int i = 0; i < reps; ++i) fn();
  const auto t1 = clock_type::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count() / reps;
}

int main() {
  fris::ScenarioConfig sc;  // 20x20 grid
  sc.n_draws = 50;          // enough draws to make the kernels measurable
  fris::validate(sc);
  const fris::Layout grid = sc.candidate_grid();
  const fris::ChannelSet cs =
      fris::draw_channel_set(sc.total_elements(), 42, sc.n_draws);
  const fris::SelectionMask mask = fris::selection_from_anchor(
      5, 5, 10, 10, sc.grid_mx, sc.grid_mz);

  std::printf("threads: %d\n", omp_get_max_threads());

  constexpr int reps = 5;
  double sink = 0.0;
  const double t_omp = time_ms(
      [&] { sink += fris::saa_rate(cs, grid, mask, sc); }, reps);
  const double t_ref = time_ms(
      [&] { sink += fris::ref::saa_rate(cs, grid, mask, sc); }, reps);
  std::printf("color+saa (M=%d, N=%d):\n", sc.total_elements(), sc.n_draws);
  std::printf("  openmp: %8.2f ms\n", t_omp);
  std::printf("  serial: %8.2f ms  (speedup %.2fx)\n", t_ref, t_ref / t_omp);

  const fris::ColoredDraws cd = fris::color_draws(cs, grid, sc);
  const double t_saa = time_ms(
      [&] {
        for (int i = 0; i < 1000; ++i) sink += fris::saa_rate_from(cd, mask);
      },
      reps);
  std::printf("saa_rate_from x1000 (precolored): %8.2f ms\n", t_saa);
  std::printf("(checksum %g)\n", sink);
  return 0;
}
