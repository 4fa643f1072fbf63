#include "fris/channel.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "fris/rng.hpp"

namespace fris {

double path_loss(double d, const PathLossParams& p) {
  if (d <= 0.0) throw std::invalid_argument("path_loss: distance must be > 0");
  return p.rho * std::pow(d, -p.alpha_exp);
}

Eigen::VectorXcd steering_vector(const Layout& layout, const HopGeometry& geom,
                                 double wavelength) {
  if (layout.size() == 0)
    throw std::invalid_argument("steering_vector: empty layout");
  const double k = 2.0 * M_PI / wavelength;
  const double cx = std::sin(geom.az) * std::cos(geom.el);
  const double cz = std::sin(geom.el);
  Eigen::VectorXcd v(layout.size());
  for (int m = 0; m < layout.size(); ++m) {
    const auto& p = layout.positions[m];
    const double phase = k * (p.x * cx + p.z * cz);
    v[m] = std::complex<double>(std::cos(phase), std::sin(phase));
  }
  return v;
}

CorrelationFactor jakes_matrix(const Layout& layout, double wavelength) {
  const int m = layout.size();
  CorrelationFactor cf;
  cf.j.resize(m, m);
  const double k = 2.0 * M_PI / wavelength;
  for (int i = 0; i < m; ++i) {
    cf.j(i, i) = 1.0;
    for (int jx = i + 1; jx < m; ++jx) {
      const auto& a = layout.positions[i];
      const auto& b = layout.positions[jx];
      const double d = std::hypot(a.x - b.x, a.z - b.z);
      const double val = std::cyl_bessel_j(0.0, k * d);
      cf.j(i, jx) = val;
      cf.j(jx, i) = val;
    }
  }
  // J0 kernels are PSD in exact arithmetic; dense grids can need jitter.
  for (double jitter : {0.0, 1e-12, 1e-10, 1e-8}) {
    Eigen::MatrixXd shifted = cf.j;
    shifted.diagonal().array() += jitter;
    Eigen::LLT<Eigen::MatrixXd> llt(shifted);
    if (llt.info() == Eigen::Success) {
      cf.sqrt_factor = llt.matrixL();
      cf.jitter_used = jitter;
      return cf;
    }
  }
  std::ostringstream os;
  os << "jakes_matrix: Cholesky failed after max jitter for M=" << m
     << " layout; first positions:";
  for (int i = 0; i < std::min(m, 4); ++i)
    os << " (" << layout.positions[i].x << "," << layout.positions[i].z << ")";
  throw std::runtime_error(os.str());
}

ChannelSet draw_channel_set(int m, std::uint64_t seed, int n) {
  if (n < 1) throw std::invalid_argument("draw_channel_set: n must be >= 1");
  if (m < 1) throw std::invalid_argument("draw_channel_set: m must be >= 1");
  ChannelSet cs;
  cs.n_draws = n;
  cs.m = m;
  cs.seed = seed;
  cs.w_s.resize(n);
  cs.w_b.resize(n);
  cs.w_r.resize(n);
  RngStream rng(seed);
  for (int d = 0; d < n; ++d) {
    cs.w_s[d] = rng.complex_normal();
    cs.w_b[d].resize(m);
    for (int i = 0; i < m; ++i) cs.w_b[d][i] = rng.complex_normal();
    cs.w_r[d].resize(m);
    for (int i = 0; i < m; ++i) cs.w_r[d][i] = rng.complex_normal();
  }
  return cs;
}

namespace {

// sqrt(K/(K+1)) and sqrt(1/(K+1)) with the +inf pure-LoS sentinel.
void rician_weights(double k_factor, double& w_los, double& w_scatter) {
  if (std::isinf(k_factor)) {
    w_los = 1.0;
    w_scatter = 0.0;
  } else {
    w_los = std::sqrt(k_factor / (k_factor + 1.0));
    w_scatter = std::sqrt(1.0 / (k_factor + 1.0));
  }
}

}  // namespace

Eigen::VectorXcd color_channels(const ChannelSet& cs, int draw, Hop hop,
                                const Eigen::VectorXcd& los,
                                const CorrelationFactor& factor,
                                const RicianParams& rp, double l_gain) {
  const auto& w = (hop == Hop::TagToSurface) ? cs.w_b[draw] : cs.w_r[draw];
  if (factor.sqrt_factor.rows() != w.size() || los.size() != w.size())
    throw std::invalid_argument("color_channels: dimension mismatch");
  double w_los, w_scatter;
  rician_weights(rp.k_factor, w_los, w_scatter);
  const double amp = std::sqrt(l_gain);
  if (w_scatter == 0.0) return amp * w_los * los;
  // Real factor times complex vector, split to avoid a complex cast.
  Eigen::VectorXd cr = factor.sqrt_factor * w.real();
  Eigen::VectorXd ci = factor.sqrt_factor * w.imag();
  Eigen::VectorXcd out(w.size());
  for (int i = 0; i < w.size(); ++i)
    out[i] = amp * (w_los * los[i] +
                    w_scatter * std::complex<double>(cr[i], ci[i]));
  return out;
}

std::complex<double> scalar_rician(const ChannelSet& cs, int draw,
                                   const RicianParams& rp, double l_s) {
  if (draw < 0 || draw >= cs.n_draws)
    throw std::invalid_argument("scalar_rician: draw out of range");
  double w_los, w_scatter;
  rician_weights(rp.k_factor, w_los, w_scatter);
  return std::sqrt(l_s) * (w_los * cs.h_s_los + w_scatter * cs.w_s[draw]);
}

}  // namespace fris
