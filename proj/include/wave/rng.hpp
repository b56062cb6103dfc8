//==============================================================================
// rng.hpp
// Deterministic random fields for tests, probes and diagnostics. mt19937_64
// with a fixed bit-to-double map so streams are identical across platforms.
//==============================================================================
#pragma once

#include <random>

#include "wave/grid.hpp"

namespace wave {

struct Rng {
  std::mt19937_64 gen;
  explicit Rng(std::uint64_t seed) : gen(seed) {}
  double uniform() {  // [0,1), 53-bit
    return double(gen() >> 11) * 0x1.0p-53;
  }
  double sym() { return 2.0 * uniform() - 1.0; }  // (-1,1)
};

// Complex field with coefficients ~ weight(k) · (uniform square); no symmetry.
inline SpectralField random_field(const TorusGrid& g, std::uint64_t seed,
                                  const std::function<double(const KVec&)>& weight =
                                      [](const KVec&) { return 1.0; }) {
  Rng r(seed);
  SpectralField u(g);
  for (int i = 0; i < g.total(); ++i) {
    const double w = weight(kvec_of(g, i));
    u.coeff[i] = cplx(r.sym(), r.sym()) * w;
  }
  return u;
}

// Real-valued field (conjugate-symmetric coefficients, zero Nyquist imag).
inline SpectralField random_real_field(const TorusGrid& g, std::uint64_t seed,
                                       const std::function<double(const KVec&)>& weight =
                                           [](const KVec&) { return 1.0; }) {
  SpectralField u = random_field(g, seed, weight);
  make_real(u);
  return u;
}

// Smooth decaying profile ⟨k⟩^{-p}, handy for quadrature-sensitive checks.
inline std::function<double(const KVec&)> decay_weight(double p) {
  return [p](const KVec& k) { return std::pow(kbracket(k), -p); };
}

}  // namespace wave
