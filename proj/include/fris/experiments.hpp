#ifndef FRIS_EXPERIMENTS_HPP
#define FRIS_EXPERIMENTS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "fris/config.hpp"
#include "fris/pso.hpp"

namespace fris {

// Seeds for an experiment point: base, base+1, ...
std::vector<std::uint64_t> seed_list(std::uint64_t base, int n);

// Mean and sample standard deviation ((n-1) divisor).
struct SampleStats {
  double mean = 0.0;
  double stddev = 0.0;
};
SampleStats sample_stats(const std::vector<double>& xs);

// Layout dump consumed by the `layout` subcommand:
// header index,x_m,z_m,on with coordinates at >= 9 significant digits.
std::string layout_csv(const Layout& layout, const SelectionMask& mask);

// SAA rate of the fixed lambda/2 m x m lattice, all elements ON, optimal
// phases, no optimization. cs must be drawn for m_side^2 elements.
double ris_baseline_rate(const ScenarioConfig& scenario, int m_side,
                         const ChannelSet& cs);

// Scale L_s*L_b*L_r so the mean M_o=100 optimized endpoint at
// gamma_bar = 10 dB lands on target_rate. Two fixed-point rounds:
// optimize under the current scale, then bisect the scalar multiplier on
// the realized per-draw SNRs.
double calibrate_gain_scale(ScenarioConfig scenario, PsoConfig cfg,
                            const std::vector<std::uint64_t>& seeds,
                            double target_rate = 10.6);

// Resolve scenario.gain_scale: explicit value passes through, 0 triggers
// calibration with the given seeds.
double resolve_gain_scale(const ScenarioConfig& scenario, const PsoConfig& cfg,
                          const std::vector<std::uint64_t>& seeds);

struct LayoutRunResult {
  OptResult opt;
  std::string csv;
  std::string result_json;
};

struct ConvergenceResult {
  std::vector<int> m_o_list;
  // mean_trace[k][t]: mean global best over seeds, budget k, iteration t.
  std::vector<std::vector<double>> mean_trace;
  // per_seed_trace[k][s][t]
  std::vector<std::vector<std::vector<double>>> per_seed_trace;
  double gain_scale = 1.0;
  std::string csv;
};

struct SweepRow {
  double snr_db = 0.0;
  int mx = 0, mz = 0;
  std::string system;  // "fris" or "ris"
  int m_o = 0;
  std::vector<double> per_seed;
  double mean = 0.0;
  double stddev = 0.0;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  double gain_scale = 1.0;
  std::string csv;
};

// One optimization run; dumps the decoded best layout.
LayoutRunResult run_layout(const ScenarioConfig& scenario,
                           const PsoConfig& cfg, std::uint64_t seed);

// Per-iteration mean global best at gamma_bar = 10 dB for each ON budget
// Columns: iter, rate_Mo<value>...
ConvergenceResult run_convergence(const ScenarioConfig& scenario,
                                  const PsoConfig& cfg,
                                  const std::vector<std::uint64_t>& seeds,
                                  const std::vector<int>& m_o_list = {25, 100,
                                                                      225});

// FRIS (optimized) vs RIS baseline across the gamma_bar sweep.
// Columns: snr_db,system,m_o,mean_rate,std_rate.
SweepResult run_rate_vs_snr(const ScenarioConfig& scenario,
                            const PsoConfig& cfg,
                            const std::vector<std::uint64_t>& seeds,
                            const std::vector<int>& m_o_list = {25, 100, 225});

// Rate vs host-lattice size at fixed ON budget.
// Columns: mx,mz,system,m_o,mean_rate,std_rate.
SweepResult run_rate_vs_lattice(
    const ScenarioConfig& scenario, const PsoConfig& cfg,
    const std::vector<std::uint64_t>& seeds,
    const std::vector<std::pair<int, int>>& lattices = {{10, 10},
                                                        {12, 12},
                                                        {14, 14},
                                                        {16, 16},
                                                        {18, 18},
                                                        {20, 20}},
    const std::vector<int>& m_o_list = {25, 64});

// Experiment metadata sidecar (seeds, gain scale, RNG identifier).
std::string experiment_meta_json(const std::string& experiment,
                                 const ScenarioConfig& scenario,
                                 const PsoConfig& cfg,
                                 const std::vector<std::uint64_t>& seeds,
                                 double gain_scale);

}  // namespace fris

#endif  // FRIS_EXPERIMENTS_HPP
