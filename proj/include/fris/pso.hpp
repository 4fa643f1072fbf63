#ifndef FRIS_PSO_HPP
#define FRIS_PSO_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "fris/config.hpp"
#include "fris/link.hpp"
#include "fris/rng.hpp"

namespace fris {

// Particle state vector layout depends on (mode, encoding):
//   grid/general:        [scores nu (M)]
//   grid/mask:           [anchor i0, j0]
//   continuous/general:  [x_1 z_1 ... x_M z_M, scores nu (M)]
//   continuous/mask:     [x_1 z_1 ... x_M z_M, anchor i0, j0]
struct Particle {
  Eigen::VectorXd state;
  Eigen::VectorXd velocity;
  Eigen::VectorXd pbest_state;
  double pbest_fitness = 0.0;
};

struct Swarm {
  std::vector<Particle> particles;
  Eigen::VectorXd gbest_state;
  double gbest_fitness = 0.0;
};

struct OptResult {
  Layout best_layout;
  SelectionMask best_mask;
  double best_fitness = 0.0;
  std::vector<double> trace;  // global best after each iteration
  std::uint64_t seed = 0;
  Encoding encoding = Encoding::Mask;
  Mode mode = Mode::Grid;
  double jitter_used = 0.0;       // from the candidate-grid correlation factor
  int projection_failures = 0;    // spacing repair non-convergence events
  double gain_scale_used = 1.0;
};

// Shared per-run context: the frozen channel draws plus, in grid mode,
// the candidate grid colored once and reused by every particle.
class FitnessContext {
 public:
  FitnessContext(const ScenarioConfig& scenario, const PsoConfig& cfg,
                 const ChannelSet& cs);

  double evaluate(const Particle& p) const;
  std::pair<Layout, SelectionMask> decode(const Particle& p) const;

  const ScenarioConfig& scenario() const { return scenario_; }
  const PsoConfig& cfg() const { return cfg_; }
  const ChannelSet& channels() const { return cs_; }
  const ColoredDraws& grid_draws() const { return grid_draws_; }
  double grid_jitter() const { return grid_jitter_; }
  std::pair<int, int> mask_dims() const { return mask_dims_; }
  int state_dim() const { return state_dim_; }
  // Per-dimension box used for init, reflection/clamping and the
  // velocity clamp.
  double lower_bound(int dim) const;
  double upper_bound(int dim) const;

 private:
  const ScenarioConfig& scenario_;
  const PsoConfig& cfg_;
  const ChannelSet& cs_;
  Layout grid_;
  ColoredDraws grid_draws_;  // grid mode only
  double grid_jitter_ = 0.0;
  std::pair<int, int> mask_dims_ = {0, 0};
  int state_dim_ = 0;
  int position_dims_ = 0;  // 2M in continuous mode, 0 in grid mode
};

// Feasible initial particles with zero velocities; global best is the
// best initial particle (lowest index on ties).
Swarm init_swarm(const FitnessContext& ctx, RngStream& rng);

// One synchronous velocity/position/best update. r1, r2 are pre-drawn
// particle-major from `rng`, so the result does not depend on how the
// fitness evaluations are scheduled.
void step(Swarm& swarm, const FitnessContext& ctx, RngStream& rng,
          int* projection_failures);

// Algorithm: init, T synchronous iterations, decode the global best.
OptResult optimize(const ScenarioConfig& scenario, const PsoConfig& cfg,
                   std::uint64_t seed);
OptResult optimize(const ScenarioConfig& scenario, const PsoConfig& cfg,
                   std::uint64_t seed, const ChannelSet& cs);

// Exhaustive anchor sweep for the contiguous-mask encoding (grid mode).
// Ties resolve to the lowest row-major anchor.
std::pair<std::pair<int, int>, double> brute_force_mask(
    const ScenarioConfig& scenario, const ChannelSet& cs);

// Exhaustive subset enumeration for the general encoding (grid mode).
// Refuses when C(M, m_o) exceeds `cap`.
std::pair<SelectionMask, double> brute_force_subset(
    const ScenarioConfig& scenario, const ChannelSet& cs, int m_o,
    std::uint64_t cap = 1000000);

// Deterministic key-value serialization (config snapshot, trace, decoded
// best layout rows, RNG identifier).
std::string serialize_result(const OptResult& res,
                             const ScenarioConfig& scenario,
                             const PsoConfig& cfg);

}  // namespace fris

#endif  // FRIS_PSO_HPP
