#ifndef FRIS_CONFIG_HPP
#define FRIS_CONFIG_HPP

#include <string>
#include <utility>
#include <vector>

#include "fris/channel.hpp"
#include "fris/geometry.hpp"

namespace fris {

enum class Encoding { General, Mask };
enum class Mode { Grid, Continuous };

std::string to_string(Encoding e);
std::string to_string(Mode m);
Encoding encoding_from_string(const std::string& s);
Mode mode_from_string(const std::string& s);

// Physical and experimental parameters. Defaults reproduce the benchmark
// setup: 3.5 GHz carrier, 3x3 lambda aperture on a 20x20 candidate grid,
// correlated Rician K=5 fading, exponent-2.5 path loss.
struct ScenarioConfig {
  double wavelength = 0.0857;  // meters
  double carrier_hz = 3.5e9;
  double aperture_wx = 3.0;  // aperture width, in wavelengths
  double aperture_wz = 3.0;
  int grid_mx = 20;
  int grid_mz = 20;
  int m_o = 100;  // ON budget
  double rician_k = 5.0;
  double alpha_exp = 2.5;
  double rho = 1.0;
  double bd_amplitude = 1.0;  // backscatter reflection magnitude in (0,1]
  int bd_symbol = 1;          // +-1; cancels in the SNR
  double gamma_bar_db = 10.0;
  std::vector<double> gamma_sweep_db = {0, 5, 10, 15, 20, 25, 30};
  double p_max_db = 30.0;  // regulatory bound on gamma_bar_db
  int n_draws = 5;         // sample-average depth N
  double sigma_sq = 1e-9;  // informational; only gamma_bar enters the SNR
  HopGeometry hop_source = {10.0, 0.0, 0.0};  // only distance is used
  HopGeometry hop_tag_fris = {3.0, 30.0 * M_PI / 180.0, 20.0 * M_PI / 180.0};
  HopGeometry hop_fris_reader = {5.0, -40.0 * M_PI / 180.0,
                                 10.0 * M_PI / 180.0};
  // Minimum spacing. Negative = mode default: 0 on the candidate grid
  // (spacing is structural there), lambda/4 in continuous mode.
  double d_min = -1.0;
  // Multiplies L_s*L_b*L_r. 0 = auto-calibrate in the experiment runners.
  double gain_scale = 0.0;
  double tau = 1e3;  // penalty weight

  int total_elements() const { return grid_mx * grid_mz; }
  Aperture aperture() const {
    return {aperture_wx * wavelength, aperture_wz * wavelength};
  }
  PathLossParams path_loss_params() const { return {rho, alpha_exp}; }
  RicianParams rician_params() const { return {rician_k, wavelength}; }
  // L_s * L_b * L_r * gain_scale (scale treated as 1 when unset).
  double cascaded_gain() const;
  double gamma_bar_linear() const;
  double effective_d_min(Mode mode) const;
  Layout candidate_grid() const {
    return grid_layout(aperture(), grid_mx, grid_mz);
  }
};

struct PsoConfig {
  int n_particles = 50;
  int n_iters = 50;
  double inertia = 0.6;
  double c_cog = 1.2;
  double c_soc = 1.2;
  Encoding encoding = Encoding::Mask;
  Mode mode = Mode::Grid;
  double v_max_frac = 0.2;  // velocity clamp, fraction of each range
};

// Squarest factorization m_x * m_z = m_o with m_x <= m_z, preferring the
// largest divisor of m_o not exceeding sqrt(m_o). Throws when no
// factorization fits inside the grid.
std::pair<int, int> mask_dims_for(int m_o, int grid_mx, int grid_mz);

// Parse a JSON config file. Empty file or empty object yields the full
// default scenario; unknown keys are hard errors.
std::pair<ScenarioConfig, PsoConfig> load_config(const std::string& path);

// Validation shared by load_config and programmatic construction.
void validate(const ScenarioConfig& sc);
void validate(const PsoConfig& pc, const ScenarioConfig& sc);

}  // namespace fris

#endif  // FRIS_CONFIG_HPP
