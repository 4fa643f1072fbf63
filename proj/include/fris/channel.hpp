#ifndef FRIS_CHANNEL_HPP
#define FRIS_CHANNEL_HPP

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <vector>

#include "fris/geometry.hpp"

namespace fris {

struct PathLossParams {
  double rho = 1.0;        // reference gain
  double alpha_exp = 2.5;  // path-loss exponent
};

// One propagation hop: distance plus azimuth/elevation seen from the surface.
struct HopGeometry {
  double distance = 1.0;  // meters
  double az = 0.0;        // radians
  double el = 0.0;        // radians
};

struct RicianParams {
  double k_factor = 5.0;  // +infinity selects the pure-LoS limit
  double wavelength = 0.0857;
};

enum class Hop { TagToSurface, SurfaceToReader };

// Jakes correlation matrix J and a factor with F * F^T = J + jitter*I.
struct CorrelationFactor {
  Eigen::MatrixXd j;
  Eigen::MatrixXd sqrt_factor;
  double jitter_used = 0.0;
};

// Frozen white randomness for N Monte-Carlo draws: scattered parts are
// stored uncolored so one set can be re-colored under any layout's
// correlation factor (common random numbers across candidate layouts).
struct ChannelSet {
  int n_draws = 0;
  int m = 0;  // element count the white vectors were drawn for
  std::uint64_t seed = 0;
  std::vector<std::complex<double>> w_s;   // per draw, scalar source->tag
  std::vector<Eigen::VectorXcd> w_b;       // per draw, tag->surface
  std::vector<Eigen::VectorXcd> w_r;       // per draw, surface->reader
  std::complex<double> h_s_los = {1.0, 0.0};
};

// rho * d^(-alpha)
double path_loss(double d, const PathLossParams& p);

// Planar-wavefront LoS phases: entry m is
// exp(j 2pi/lambda (x_m sin(az) cos(el) + z_m sin(el))).
Eigen::VectorXcd steering_vector(const Layout& layout, const HopGeometry& geom,
                                 double wavelength);

// [J]_{i,j} = J0(2 pi d_{i,j} / lambda) from raw pairwise coordinates,
// factored by Cholesky with escalating diagonal jitter (1e-12, 1e-10, 1e-8).
CorrelationFactor jakes_matrix(const Layout& layout, double wavelength);

// Deterministic white draws for m elements. Per draw the order is
// w_s, then w_b[0..m), then w_r[0..m), one complex normal each.
ChannelSet draw_channel_set(int m, std::uint64_t seed, int n);

// sqrt(L) (sqrt(K/(K+1)) los + sqrt(1/(K+1)) F w) for the chosen hop.
Eigen::VectorXcd color_channels(const ChannelSet& cs, int draw, Hop hop,
                                const Eigen::VectorXcd& los,
                                const CorrelationFactor& factor,
                                const RicianParams& rp, double l_gain);

// Scalar Rician source->tag coefficient for one draw.
std::complex<double> scalar_rician(const ChannelSet& cs, int draw,
                                   const RicianParams& rp, double l_s);

}  // namespace fris

#endif  // FRIS_CHANNEL_HPP
