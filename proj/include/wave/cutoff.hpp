//==============================================================================
// cutoff.hpp
// Admissible frequency cutoffs for the paradifferential quantization.
//
// χ(θ,η) = ρ(|θ|/⟨η⟩) with ρ a C^∞ plateau ramp: ρ ≡ 1 on [0,eps1],
// ρ ≡ 0 on [eps2,∞), 0 < eps1 < eps2 < 1/2. ρ is built from the CDF of the
// bump exp(−c/(τ(1−τ))) tabulated once and evaluated by cubic Hermite
// interpolation (the analytic derivative is known, so the interpolant is
// accurate to ~1e−14 — well below every tolerance in the test suite).
//
// The companion pi_fn is the smooth zero-frequency cutoff (0 below 1/4,
// 1 above 3/4); on the integer lattice it coincides with the sharp
// projector 1_{k≠0}, which is what the quantization actually uses.
//==============================================================================
#pragma once

#include <functional>

#include "wave/grid.hpp"

namespace wave {

class PlateauRamp {
 public:
  // 1 on (-inf, lo], 0 on [hi, inf), C^∞ in between; `sharp` scales the bump.
  PlateauRamp(double lo, double hi, double sharp = 1.0);
  double operator()(double t) const;

 private:
  double lo_, hi_;
  std::vector<double> val_, der_;  // CDF and its derivative on [0,1]
};

struct CutoffPair {
  double eps1 = 0.1;
  double eps2 = 0.3;
  std::function<double(const KVec& theta, const KVec& eta)> chi;
  std::function<double(double)> pi_fn;
};

// The cutoff all production code uses: eps1 = 0.1, eps2 = 0.3, unit bump.
const CutoffPair& standard_cutoff();
// A second admissible choice (different support and bump sharpness) used to
// check that downstream quantities do not secretly depend on the ramp.
const CutoffPair& alternate_cutoff();

}  // namespace wave
