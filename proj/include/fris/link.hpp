#ifndef FRIS_LINK_HPP
#define FRIS_LINK_HPP

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "fris/channel.hpp"
#include "fris/config.hpp"
#include "fris/geometry.hpp"

namespace fris {

struct BackscatterParams {
  double bd_amplitude = 1.0;
  int bd_symbol = 1;
};

struct LinkBudget {
  double gamma_bar = 1.0;  // linear average transmit SNR P_s / sigma^2
  double l_s = 1.0;
  double l_b = 1.0;
  double l_r = 1.0;
};

// Per-element phases over the ON set, in mask order.
struct PhaseProfile {
  std::vector<double> phases;
};

struct PenaltyParams {
  double tau = 1e3;
};

// phi_m chosen so every ON term conj(h_r,m) e^{j phi_m} h_b,m is real
// nonnegative, i.e. the coherent-combining optimum.
PhaseProfile optimal_phases(const Eigen::VectorXcd& h_b,
                            const Eigen::VectorXcd& h_r,
                            const SelectionMask& mask);

// H_eq = sum over ON m of conj(h_r,m) e^{j phi_m} h_b,m.
std::complex<double> equivalent_channel(const Eigen::VectorXcd& h_b,
                                        const Eigen::VectorXcd& h_r,
                                        const SelectionMask& mask,
                                        const PhaseProfile& pp);

// gamma_r = gamma_bar * a^2 * L_s L_b L_r * |h_s|^2 * |H_eq|^2
double instantaneous_snr(const LinkBudget& lb, const BackscatterParams& bp,
                         std::complex<double> h_s, std::complex<double> h_eq);

// Shannon bound log2(1 + gamma_r).
double rate(double gamma_r);

// Channel draws colored under one layout and reduced to what the
// optimally-phased rate needs: per-draw elementwise |h_r,m| |h_b,m|
// (small-scale only) and the per-draw SNR prefactor
// gamma_bar * a^2 * L_s L_b L_r * gain_scale * |h_s|^2.
struct ColoredDraws {
  Eigen::ArrayXXd gains;      // n_draws x M
  Eigen::ArrayXd snr_prefix;  // n_draws
};

// OpenMP-parallel over draws; bitwise-deterministic for any thread count.
ColoredDraws color_draws(const ChannelSet& cs, const Layout& layout,
                         const ScenarioConfig& scenario);
ColoredDraws color_draws(const ChannelSet& cs, const Layout& layout,
                         const ScenarioConfig& scenario,
                         const CorrelationFactor& factor);

double saa_rate_from(const ColoredDraws& cd, const SelectionMask& mask);

// Per-draw instantaneous SNR at the mask (calibration input).
std::vector<double> per_draw_snr(const ColoredDraws& cd,
                                 const SelectionMask& mask);

// Sample-average optimally-phased rate of (layout, mask) over the frozen
// draws: (1/N) sum log2(1 + gamma_r^{(n)}).
double saa_rate(const ChannelSet& cs, const Layout& layout,
                const SelectionMask& mask, const ScenarioConfig& scenario);

// tau * (B_space + B_apert); zero exactly on the feasible set.
double penalty(const std::vector<Point>& positions, const Aperture& aperture,
               const SpacingConstraint& c, const PenaltyParams& pp);

// Serial reference implementations, kept independent of the OpenMP path
// and used by the test and benchmark targets.
namespace ref {
ColoredDraws color_draws(const ChannelSet& cs, const Layout& layout,
                         const ScenarioConfig& scenario);
double saa_rate(const ChannelSet& cs, const Layout& layout,
                const SelectionMask& mask, const ScenarioConfig& scenario);
}  // namespace ref

}  // namespace fris

#endif  // FRIS_LINK_HPP
