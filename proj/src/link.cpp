#include "fris/link.hpp"

#include <cmath>
#include <stdexcept>

namespace fris {

PhaseProfile optimal_phases(const Eigen::VectorXcd& h_b,
                            const Eigen::VectorXcd& h_r,
                            const SelectionMask& mask) {
  PhaseProfile pp;
  pp.phases.reserve(mask.on_indices.size());
  for (int m : mask.on_indices) {
    // Each ON term conj(h_r,m) e^{j phi} h_b,m becomes real nonnegative.
    pp.phases.push_back(std::arg(h_r[m]) - std::arg(h_b[m]));
  }
  return pp;
}

std::complex<double> equivalent_channel(const Eigen::VectorXcd& h_b,
                                        const Eigen::VectorXcd& h_r,
                                        const SelectionMask& mask,
                                        const PhaseProfile& pp) {
  if (pp.phases.size() != mask.on_indices.size())
    throw std::invalid_argument("equivalent_channel: phase/mask size mismatch");
  std::complex<double> sum = 0.0;
  for (std::size_t k = 0; k < mask.on_indices.size(); ++k) {
    const int m = mask.on_indices[k];
    const std::complex<double> rot(std::cos(pp.phases[k]),
                                   std::sin(pp.phases[k]));
    sum += std::conj(h_r[m]) * rot * h_b[m];
  }
  return sum;
}

double instantaneous_snr(const LinkBudget& lb, const BackscatterParams& bp,
                         std::complex<double> h_s, std::complex<double> h_eq) {
  return lb.gamma_bar * bp.bd_amplitude * bp.bd_amplitude * lb.l_s * lb.l_b *
         lb.l_r * std::norm(h_s) * std::norm(h_eq);
}

double rate(double gamma_r) {
  if (gamma_r < 0.0) throw std::invalid_argument("rate: gamma_r must be >= 0");
  return std::log2(1.0 + gamma_r);
}

ColoredDraws color_draws(const ChannelSet& cs, const Layout& layout,
                         const ScenarioConfig& scenario) {
  return color_draws(cs, layout, scenario,
                     jakes_matrix(layout, scenario.wavelength));
}

ColoredDraws color_draws(const ChannelSet& cs, const Layout& layout,
                         const ScenarioConfig& scenario,
                         const CorrelationFactor& factor) {
  const int n = cs.n_draws;
  const int m = layout.size();
  if (cs.m != m)
    throw std::invalid_argument("color_draws: ChannelSet/layout M mismatch");
  const RicianParams rp = scenario.rician_params();
  const Eigen::VectorXcd los_b =
      steering_vector(layout, scenario.hop_tag_fris, scenario.wavelength);
  const Eigen::VectorXcd los_r =
      steering_vector(layout, scenario.hop_fris_reader, scenario.wavelength);
  const double prefix = scenario.gamma_bar_linear() * scenario.bd_amplitude *
                        scenario.bd_amplitude * scenario.cascaded_gain();

  ColoredDraws cd;
  cd.gains.resize(n, m);
  cd.snr_prefix.resize(n);
  // Each draw writes its own row; the reduction later is serial, so the
  // result is identical for any thread count.
#pragma omp parallel for schedule(static)
  for (int d = 0; d < n; ++d) {
    const Eigen::VectorXcd h_b =
        color_channels(cs, d, Hop::TagToSurface, los_b, factor, rp, 1.0);
    const Eigen::VectorXcd h_r =
        color_channels(cs, d, Hop::SurfaceToReader, los_r, factor, rp, 1.0);
    for (int i = 0; i < m; ++i)
      cd.gains(d, i) = std::abs(h_r[i]) * std::abs(h_b[i]);
    const std::complex<double> h_s = scalar_rician(cs, d, rp, 1.0);
    cd.snr_prefix[d] = prefix * std::norm(h_s);
  }
  return cd;
}

double saa_rate_from(const ColoredDraws& cd, const SelectionMask& mask) {
  const int n = static_cast<int>(cd.gains.rows());
  double acc = 0.0;
  for (int d = 0; d < n; ++d) {
    double coherent = 0.0;
    for (int m : mask.on_indices) coherent += cd.gains(d, m);
    acc += std::log2(1.0 + cd.snr_prefix[d] * coherent * coherent);
  }
  return acc / n;
}

std::vector<double> per_draw_snr(const ColoredDraws& cd,
                                 const SelectionMask& mask) {
  const int n = static_cast<int>(cd.gains.rows());
  std::vector<double> snr(n);
  for (int d = 0; d < n; ++d) {
    double coherent = 0.0;
    for (int m : mask.on_indices) coherent += cd.gains(d, m);
    snr[d] = cd.snr_prefix[d] * coherent * coherent;
  }
  return snr;
}

double saa_rate(const ChannelSet& cs, const Layout& layout,
                const SelectionMask& mask, const ScenarioConfig& scenario) {
  return saa_rate_from(color_draws(cs, layout, scenario), mask);
}

double penalty(const std::vector<Point>& positions, const Aperture& aperture,
               const SpacingConstraint& c, const PenaltyParams& pp) {
  double b_space = 0.0;
  for (std::size_t a = 0; a < positions.size(); ++a)
    for (std::size_t b = a + 1; b < positions.size(); ++b) {
      const double d = std::hypot(positions[a].x - positions[b].x,
                                  positions[a].z - positions[b].z);
      const double v = std::max(0.0, c.d_min - d);
      b_space += v * v;
    }
  double b_apert = 0.0;
  for (const auto& p : positions) {
    const double dx = std::max({0.0, -p.x, p.x - aperture.width_x});
    const double dz = std::max({0.0, -p.z, p.z - aperture.width_z});
    b_apert += dx * dx + dz * dz;
  }
  return pp.tau * (b_space + b_apert);
}

}  // namespace fris
