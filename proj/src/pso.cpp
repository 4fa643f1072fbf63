#include "fris/pso.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace fris {

FitnessContext::FitnessContext(const ScenarioConfig& scenario,
                               const PsoConfig& cfg, const ChannelSet& cs)
    : scenario_(scenario), cfg_(cfg), cs_(cs) {
  validate(scenario);
  validate(cfg, scenario);
  if (cs.m != scenario.total_elements())
    throw std::invalid_argument("FitnessContext: ChannelSet M mismatch");
  grid_ = scenario.candidate_grid();
  if (cfg.encoding == Encoding::Mask)
    mask_dims_ = mask_dims_for(scenario.m_o, scenario.grid_mx,
                               scenario.grid_mz);
  if (cfg.mode == Mode::Grid) {
    const CorrelationFactor factor =
        jakes_matrix(grid_, scenario.wavelength);
    grid_jitter_ = factor.jitter_used;
    grid_draws_ = color_draws(cs, grid_, scenario, factor);
  }
  const int m = scenario.total_elements();
  position_dims_ = (cfg.mode == Mode::Continuous) ? 2 * m : 0;
  const int activation_dims = (cfg.encoding == Encoding::General) ? m : 2;
  state_dim_ = position_dims_ + activation_dims;
}

double FitnessContext::lower_bound(int) const { return 0.0; }

double FitnessContext::upper_bound(int dim) const {
  const Aperture ap = scenario_.aperture();
  if (dim < position_dims_)
    return (dim % 2 == 0) ? ap.width_x : ap.width_z;
  const int a = dim - position_dims_;
  if (cfg_.encoding == Encoding::General) return 1.0;
  return a == 0 ? static_cast<double>(scenario_.grid_mx - mask_dims_.first)
                : static_cast<double>(scenario_.grid_mz - mask_dims_.second);
}

std::pair<Layout, SelectionMask> FitnessContext::decode(
    const Particle& p) const {
  Layout layout;
  if (cfg_.mode == Mode::Grid) {
    layout = grid_;
  } else {
    const int m = scenario_.total_elements();
    layout.positions.resize(m);
    for (int i = 0; i < m; ++i)
      layout.positions[i] = {p.state[2 * i], p.state[2 * i + 1]};
  }
  SelectionMask mask;
  if (cfg_.encoding == Encoding::General) {
    std::vector<double> scores(p.state.data() + position_dims_,
                               p.state.data() + p.state.size());
    mask = selection_from_scores(scores, scenario_.m_o);
  } else {
    const auto [mx, mz] = mask_dims_;
    int i0 = static_cast<int>(std::lround(p.state[position_dims_]));
    int j0 = static_cast<int>(std::lround(p.state[position_dims_ + 1]));
    i0 = std::clamp(i0, 0, scenario_.grid_mx - mx);
    j0 = std::clamp(j0, 0, scenario_.grid_mz - mz);
    mask = selection_from_anchor(i0, j0, mx, mz, scenario_.grid_mx,
                                 scenario_.grid_mz);
  }
  return {std::move(layout), std::move(mask)};
}

double FitnessContext::evaluate(const Particle& p) const {
  auto [layout, mask] = decode(p);
  if (cfg_.mode == Mode::Grid) return saa_rate_from(grid_draws_, mask);
  const double fit = saa_rate(cs_, layout, mask, scenario_);
  // Spacing applies to the ON elements; OFF candidates are virtual sites.
  std::vector<Point> on_positions;
  on_positions.reserve(mask.on_indices.size());
  for (int i : mask.on_indices) on_positions.push_back(layout.positions[i]);
  const double pen =
      penalty(on_positions, scenario_.aperture(),
              {scenario_.effective_d_min(cfg_.mode)}, {scenario_.tau});
  return fit - pen;
}

namespace {

// Reflect a coordinate into [lo, hi].
double reflect(double x, double lo, double hi) {
  if (hi <= lo) return lo;
  const double span = hi - lo;
  double t = std::fmod(x - lo, 2.0 * span);
  if (t < 0.0) t += 2.0 * span;
  return lo + (t <= span ? t : 2.0 * span - t);
}

// Project a particle state onto the feasible set: activation block
// reflected/clamped to its box, positions clamped to the aperture with
// spacing repair over the decoded ON set.
void project_state(Eigen::VectorXd& state, const FitnessContext& ctx,
                   int* projection_failures) {
  const auto& cfg = ctx.cfg();
  const auto& sc = ctx.scenario();
  const int pos_dims =
      (cfg.mode == Mode::Continuous) ? 2 * sc.total_elements() : 0;
  for (int d = pos_dims; d < ctx.state_dim(); ++d) {
    if (cfg.encoding == Encoding::General)
      state[d] = reflect(state[d], 0.0, 1.0);
    else
      state[d] = std::clamp(state[d], ctx.lower_bound(d), ctx.upper_bound(d));
  }
  if (pos_dims == 0) return;

  const Aperture ap = sc.aperture();
  for (int d = 0; d < pos_dims; ++d)
    state[d] = std::clamp(state[d], 0.0, ctx.upper_bound(d));

  const double d_min = sc.effective_d_min(cfg.mode);
  if (d_min <= 0.0) return;
  Particle probe;
  probe.state = state;
  const auto [layout, mask] = ctx.decode(probe);
  std::vector<Point> on_positions;
  on_positions.reserve(mask.on_indices.size());
  for (int i : mask.on_indices) on_positions.push_back(layout.positions[i]);
  const ProjectionResult pr = project_positions(on_positions, ap, {d_min});
  for (std::size_t k = 0; k < mask.on_indices.size(); ++k) {
    const int i = mask.on_indices[k];
    state[2 * i] = pr.positions[k].x;
    state[2 * i + 1] = pr.positions[k].z;
  }
  if (!pr.feasible && projection_failures) ++(*projection_failures);
}

void evaluate_all(const Swarm& swarm, const FitnessContext& ctx,
                  std::vector<double>& fitness) {
  const int n = static_cast<int>(swarm.particles.size());
  fitness.resize(n);
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < n; ++i)
    fitness[i] = ctx.evaluate(swarm.particles[i]);
}

}  // namespace

Swarm init_swarm(const FitnessContext& ctx, RngStream& rng) {
  Swarm swarm;
  swarm.particles.resize(ctx.cfg().n_particles);
  const int dim = ctx.state_dim();
  for (auto& p : swarm.particles) {
    p.state.resize(dim);
    for (int d = 0; d < dim; ++d) {
      const double lo = ctx.lower_bound(d);
      const double hi = ctx.upper_bound(d);
      p.state[d] = lo + rng.uniform() * (hi - lo);
    }
    project_state(p.state, ctx, nullptr);
    p.velocity = Eigen::VectorXd::Zero(dim);
  }
  std::vector<double> fitness;
  evaluate_all(swarm, ctx, fitness);
  swarm.gbest_fitness = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < swarm.particles.size(); ++i) {
    auto& p = swarm.particles[i];
    p.pbest_state = p.state;
    p.pbest_fitness = fitness[i];
    if (fitness[i] > swarm.gbest_fitness) {
      swarm.gbest_fitness = fitness[i];
      swarm.gbest_state = p.state;
    }
  }
  return swarm;
}

void step(Swarm& swarm, const FitnessContext& ctx, RngStream& rng,
          int* projection_failures) {
  const auto& cfg = ctx.cfg();
  const int dim = ctx.state_dim();
  const int n = static_cast<int>(swarm.particles.size());

  // All randomness for this iteration is drawn up front, particle-major,
  // so the parallel evaluation below cannot perturb the stream.
  Eigen::MatrixXd r1(n, dim), r2(n, dim);
  for (int i = 0; i < n; ++i) {
    for (int d = 0; d < dim; ++d) r1(i, d) = rng.uniform();
    for (int d = 0; d < dim; ++d) r2(i, d) = rng.uniform();
  }

  for (int i = 0; i < n; ++i) {
    Particle& p = swarm.particles[i];
    for (int d = 0; d < dim; ++d) {
      double v = cfg.inertia * p.velocity[d] +
                 cfg.c_cog * r1(i, d) * (p.pbest_state[d] - p.state[d]) +
                 cfg.c_soc * r2(i, d) * (swarm.gbest_state[d] - p.state[d]);
      const double v_max =
          cfg.v_max_frac * (ctx.upper_bound(d) - ctx.lower_bound(d));
      p.velocity[d] = std::clamp(v, -v_max, v_max);
      p.state[d] += p.velocity[d];
    }
    project_state(p.state, ctx, projection_failures);
  }

  std::vector<double> fitness;
  evaluate_all(swarm, ctx, fitness);
  for (int i = 0; i < n; ++i) {
    Particle& p = swarm.particles[i];
    if (fitness[i] > p.pbest_fitness) {  // incumbent kept on exact ties
      p.pbest_fitness = fitness[i];
      p.pbest_state = p.state;
    }
    if (fitness[i] > swarm.gbest_fitness) {
      swarm.gbest_fitness = fitness[i];
      swarm.gbest_state = p.state;
    }
  }
}

OptResult optimize(const ScenarioConfig& scenario, const PsoConfig& cfg,
                   std::uint64_t seed) {
  const ChannelSet cs = draw_channel_set(scenario.total_elements(),
                                         mix_seed(seed, 0), scenario.n_draws);
  return optimize(scenario, cfg, seed, cs);
}

OptResult optimize(const ScenarioConfig& scenario, const PsoConfig& cfg,
                   std::uint64_t seed, const ChannelSet& cs) {
  FitnessContext ctx(scenario, cfg, cs);
  RngStream rng(mix_seed(seed, 1));
  Swarm swarm = init_swarm(ctx, rng);

  OptResult res;
  res.seed = seed;
  res.encoding = cfg.encoding;
  res.mode = cfg.mode;
  res.jitter_used = ctx.grid_jitter();
  res.gain_scale_used = scenario.gain_scale > 0.0 ? scenario.gain_scale : 1.0;
  res.trace.reserve(cfg.n_iters);
  for (int t = 0; t < cfg.n_iters; ++t) {
    step(swarm, ctx, rng, &res.projection_failures);
    res.trace.push_back(swarm.gbest_fitness);
  }
  Particle best;
  best.state = swarm.gbest_state;
  std::tie(res.best_layout, res.best_mask) = ctx.decode(best);
  res.best_fitness = swarm.gbest_fitness;
  return res;
}

std::pair<std::pair<int, int>, double> brute_force_mask(
    const ScenarioConfig& scenario, const ChannelSet& cs) {
  const auto [mx, mz] =
      mask_dims_for(scenario.m_o, scenario.grid_mx, scenario.grid_mz);
  const Layout grid = scenario.candidate_grid();
  const ColoredDraws cd = color_draws(cs, grid, scenario);
  std::pair<int, int> best_anchor = {0, 0};
  double best = -std::numeric_limits<double>::infinity();
  for (int j0 = 0; j0 + mz <= scenario.grid_mz; ++j0)
    for (int i0 = 0; i0 + mx <= scenario.grid_mx; ++i0) {
      const SelectionMask mask = selection_from_anchor(
          i0, j0, mx, mz, scenario.grid_mx, scenario.grid_mz);
      const double fit = saa_rate_from(cd, mask);
      if (fit > best) {
        best = fit;
        best_anchor = {i0, j0};
      }
    }
  return {best_anchor, best};
}

std::pair<SelectionMask, double> brute_force_subset(
    const ScenarioConfig& scenario, const ChannelSet& cs, int m_o,
    std::uint64_t cap) {
  const int m = scenario.total_elements();
  if (m_o < 1 || m_o > m)
    throw std::invalid_argument("brute_force_subset: bad m_o");
  // C(m, m_o) with an early bail-out against the cap.
  double count = 1.0;
  for (int k = 1; k <= m_o; ++k) {
    count *= static_cast<double>(m - m_o + k) / k;
    if (count > 2.0 * static_cast<double>(cap)) break;
  }
  if (count > static_cast<double>(cap)) {
    std::ostringstream os;
    os << "brute_force_subset: C(" << m << "," << m_o << ") exceeds cap "
       << cap;
    throw std::invalid_argument(os.str());
  }

  const Layout grid = scenario.candidate_grid();
  const ColoredDraws cd = color_draws(cs, grid, scenario);
  std::vector<int> combo(m_o);
  for (int k = 0; k < m_o; ++k) combo[k] = k;
  SelectionMask best_mask;
  double best = -std::numeric_limits<double>::infinity();
  while (true) {
    SelectionMask mask;
    mask.on_indices = combo;
    const double fit = saa_rate_from(cd, mask);
    if (fit > best) {
      best = fit;
      best_mask = mask;
    }
    // Next lexicographic combination.
    int k = m_o - 1;
    while (k >= 0 && combo[k] == m - m_o + k) --k;
    if (k < 0) break;
    ++combo[k];
    for (int j = k + 1; j < m_o; ++j) combo[j] = combo[j - 1] + 1;
  }
  return {best_mask, best};
}

std::string serialize_result(const OptResult& res,
                             const ScenarioConfig& scenario,
                             const PsoConfig& cfg) {
  nlohmann::ordered_json j;
  j["rng_algorithm"] = kRngAlgorithm;
  j["seed"] = res.seed;
  j["encoding"] = to_string(res.encoding);
  j["mode"] = to_string(res.mode);
  j["scenario"] = {
      {"wavelength", scenario.wavelength},
      {"carrier_hz", scenario.carrier_hz},
      {"aperture_wx", scenario.aperture_wx},
      {"aperture_wz", scenario.aperture_wz},
      {"grid_mx", scenario.grid_mx},
      {"grid_mz", scenario.grid_mz},
      {"m_o", scenario.m_o},
      {"rician_k", scenario.rician_k},
      {"alpha_exp", scenario.alpha_exp},
      {"rho", scenario.rho},
      {"bd_amplitude", scenario.bd_amplitude},
      {"gamma_bar_db", scenario.gamma_bar_db},
      {"n_draws", scenario.n_draws},
      {"d_min", scenario.effective_d_min(res.mode)},
      {"gain_scale", res.gain_scale_used},
      {"tau", scenario.tau},
  };
  j["pso"] = {
      {"n_particles", cfg.n_particles}, {"n_iters", cfg.n_iters},
      {"inertia", cfg.inertia},         {"c_cog", cfg.c_cog},
      {"c_soc", cfg.c_soc},             {"v_max_frac", cfg.v_max_frac},
  };
  j["jitter_used"] = res.jitter_used;
  j["projection_failures"] = res.projection_failures;
  j["best_fitness"] = res.best_fitness;
  j["trace"] = res.trace;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  std::vector<bool> on(res.best_layout.positions.size(), false);
  for (int i : res.best_mask.on_indices) on[i] = true;
  for (std::size_t i = 0; i < res.best_layout.positions.size(); ++i)
    rows.push_back({i, res.best_layout.positions[i].x,
                    res.best_layout.positions[i].z, on[i] ? 1 : 0});
  j["best_layout"] = rows;
  return j.dump(2) + "\n";
}

}  // namespace fris
