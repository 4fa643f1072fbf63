#include <cmath>
#include <stdexcept>
#include <vector>

#include "fris/link.hpp"

// Serial reference path. Written as plain loops, with its own Cholesky,
// so it shares no kernel code with the OpenMP implementation it checks.

namespace fris::ref {

namespace {

// Unblocked lower Cholesky of a dense SPD matrix; returns false on a
// non-positive pivot.
bool cholesky_lower(std::vector<std::vector<double>>& a) {
  const int n = static_cast<int>(a.size());
  for (int j = 0; j < n; ++j) {
    double diag = a[j][j];
    for (int k = 0; k < j; ++k) diag -= a[j][k] * a[j][k];
    if (diag <= 0.0) return false;
    a[j][j] = std::sqrt(diag);
    for (int i = j + 1; i < n; ++i) {
      double s = a[i][j];
      for (int k = 0; k < j; ++k) s -= a[i][k] * a[j][k];
      a[i][j] = s / a[j][j];
    }
    for (int k = j + 1; k < n; ++k) a[j][k] = 0.0;
  }
  return true;
}

}  // namespace

ColoredDraws color_draws(const ChannelSet& cs, const Layout& layout,
                         const ScenarioConfig& scenario) {
  const int n = cs.n_draws;
  const int m = layout.size();
  if (cs.m != m)
    throw std::invalid_argument("ref::color_draws: M mismatch");
  const double lambda = scenario.wavelength;
  const double k_wave = 2.0 * M_PI / lambda;

  // Jakes matrix with the same jitter escalation as the main path.
  std::vector<std::vector<double>> factor;
  bool ok = false;
  for (double jitter : {0.0, 1e-12, 1e-10, 1e-8}) {
    factor.assign(m, std::vector<double>(m, 0.0));
    for (int i = 0; i < m; ++i) {
      factor[i][i] = 1.0 + jitter;
      for (int j = 0; j < i; ++j) {
        const double d = std::hypot(layout.positions[i].x - layout.positions[j].x,
                                    layout.positions[i].z - layout.positions[j].z);
        factor[i][j] = factor[j][i] = std::cyl_bessel_j(0.0, k_wave * d);
      }
    }
    if (cholesky_lower(factor)) {
      ok = true;
      break;
    }
  }
  if (!ok) throw std::runtime_error("ref::color_draws: Cholesky failed");

  const double k_fac = scenario.rician_k;
  const bool pure_los = std::isinf(k_fac);
  const double w_los = pure_los ? 1.0 : std::sqrt(k_fac / (k_fac + 1.0));
  const double w_sct = pure_los ? 0.0 : std::sqrt(1.0 / (k_fac + 1.0));

  auto los_phase = [&](const Point& p, const HopGeometry& g) {
    return k_wave * (p.x * std::sin(g.az) * std::cos(g.el) +
                     p.z * std::sin(g.el));
  };

  const double prefix = scenario.gamma_bar_linear() * scenario.bd_amplitude *
                        scenario.bd_amplitude * scenario.cascaded_gain();

  ColoredDraws cd;
  cd.gains.resize(n, m);
  cd.snr_prefix.resize(n);
  for (int d = 0; d < n; ++d) {
    for (int i = 0; i < m; ++i) {
      std::complex<double> sb = 0.0, sr = 0.0;
      for (int j = 0; j <= i; ++j) {
        sb += factor[i][j] * cs.w_b[d][j];
        sr += factor[i][j] * cs.w_r[d][j];
      }
      const double pb = los_phase(layout.positions[i], scenario.hop_tag_fris);
      const double pr =
          los_phase(layout.positions[i], scenario.hop_fris_reader);
      const std::complex<double> hb =
          w_los * std::complex<double>(std::cos(pb), std::sin(pb)) + w_sct * sb;
      const std::complex<double> hr =
          w_los * std::complex<double>(std::cos(pr), std::sin(pr)) + w_sct * sr;
      cd.gains(d, i) = std::abs(hr) * std::abs(hb);
    }
    const std::complex<double> hs = w_los * cs.h_s_los + w_sct * cs.w_s[d];
    cd.snr_prefix[d] = prefix * std::norm(hs);
  }
  return cd;
}

double saa_rate(const ChannelSet& cs, const Layout& layout,
                const SelectionMask& mask, const ScenarioConfig& scenario) {
  const ColoredDraws cd = ref::color_draws(cs, layout, scenario);
  double acc = 0.0;
  for (int d = 0; d < cs.n_draws; ++d) {
    double coherent = 0.0;
    for (int i : mask.on_indices) coherent += cd.gains(d, i);
    acc += std::log2(1.0 + cd.snr_prefix[d] * coherent * coherent);
  }
  return acc / cs.n_draws;
}

}  // namespace fris::ref
