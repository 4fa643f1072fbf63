#ifndef FRIS_RNG_HPP
#define FRIS_RNG_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

namespace fris {

// Algorithm identifier recorded in all result metadata so runs can be
// reproduced by any implementation of the same generator contract.
inline constexpr const char* kRngAlgorithm = "mt19937_64/box-muller";

// Deterministic 64-bit stream. Uniforms come from the top 53 bits of
// mt19937_64; normals use Box-Muller with no state caching, so every
// complex normal consumes exactly two raw draws.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : gen_(seed) {}

  // Uniform on (0, 1].
  double uniform() {
    return static_cast<double>((gen_() >> 11) + 1) * 0x1.0p-53;
  }

  // Uniform on (0, 1) pair -> standard complex normal CN(0, 1),
  // i.e. real/imag parts each N(0, 1/2).
  std::complex<double> complex_normal() {
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-std::log(u1));
    return {r * std::cos(2.0 * M_PI * u2), r * std::sin(2.0 * M_PI * u2)};
  }

  // Real standard normal N(0, 1); consumes two raw draws like complex_normal.
  double normal() {
    const double u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }

  std::uint64_t raw() { return gen_(); }

 private:
  std::mt19937_64 gen_;
};

// splitmix64 finalizer, used to derive independent sub-stream seeds
// (channel draws vs. swarm randomness) from one user-facing seed.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace fris

#endif  // FRIS_RNG_HPP
