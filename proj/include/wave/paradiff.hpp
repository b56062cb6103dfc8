//==============================================================================
// paradiff.hpp
// Discrete paradifferential / pseudodifferential quantization on the torus.
//
// For a symbol a(x,ξ) sampled on (grid points) × (lattice), with â(θ,η) the
// 1/n^d-normalised x-DFT of the column a(·,η):
//
//   paradiff:    out(ξ) = Σ_η χ(ξ−η, η) â(ξ−η, η) π(η) û(η)
//   pseudodiff:  out(ξ) = Σ_η          â(ξ−η, η) [π(η)] û(η)
//
// with π(η) = 1_{η≠0} (the smooth pi_fn of the cutoff coincides with this on
// integers) and ξ−η the *true* integer difference — terms leaving the stored
// lattice are dropped, never wrapped. With eps2 < 1/2 the χ support never
// reaches a wrap, so the paradifferential matrix is unambiguous.
//
// Adjoints are the exact discrete transposes of these sums; everything the
// control layer needs (symmetric Gram operators, dual evolutions) leans on
// that exactness, so the adjoint entry points live here next to the forward
// ones.
//
// x-independent symbols collapse to Fourier multipliers (only θ = 0
// contributes and χ(0,η) = 1), so e.g. T_1 = π(D) holds exactly; the prepared
// form detects this and takes the O(M) diagonal path.
//
// Caveat (lattice asymmetry): the unpaired Nyquist row k = −n/2 cannot be
// conjugate-paired, so exact reality preservation of x-dependent symbols is a
// statement on the dealiased sublattice |k_a| ≤ n/3 — where it holds to
// machine precision because every Nyquist-row matrix element then sits
// outside the χ support. Physical fields are always dealiased, so this is
// the invariant that matters.
//==============================================================================
#pragma once

#include <functional>

#include "wave/cutoff.hpp"
#include "wave/grid.hpp"

namespace wave {

enum class SymbolParity { none, real_even, imaginary_odd };

struct SampledSymbol {
  TorusGrid grid;
  double order = 0.0;
  SymbolParity parity = SymbolParity::none;
  // values[kidx * npoints + xidx]; column-major x-then-k, matching the wire
  // format. npoints = grid.total().
  std::vector<cplx> values;
};

// Evaluate fn(x, k) on the grid. x is the physical point (x1, x2 ∈ [0,2π)).
// imaginary_odd symbols get their Nyquist columns zeroed (unpaired mode).
SampledSymbol sample_symbol(const TorusGrid& g, double order, SymbolParity parity,
                            const std::function<cplx(double, double, const KVec&)>& fn);

// Symbol from per-k multiplier rule times an x-profile given in physical
// samples (the workhorse for symbols assembled out of surface data).
SampledSymbol symbol_from_columns(const TorusGrid& g, double order, SymbolParity parity,
                                  const std::function<void(const KVec&, std::vector<cplx>&)>& fill);

struct PreparedSymbol {
  TorusGrid grid;
  double order = 0.0;
  SymbolParity parity = SymbolParity::none;
  bool x_independent = false;
  std::vector<cplx> diag;  // x-independent path: a(k) per lattice k
  std::vector<cplx> ahat;  // general path: ahat[kidx * M + thetaidx]
};

PreparedSymbol prepare_symbol(const SampledSymbol& a);

// Forward / adjoint applications. The adjoint is the exact transpose of the
// forward sum w.r.t. the unweighted complex inner product Σ conj(a) b.
SpectralField paradiff_apply(const PreparedSymbol& a, const SpectralField& u,
                             const CutoffPair& cut = standard_cutoff());
SpectralField paradiff_adjoint_apply(const PreparedSymbol& a, const SpectralField& u,
                                     const CutoffPair& cut = standard_cutoff());
SpectralField pseudodiff_apply(const PreparedSymbol& a, const SpectralField& u, bool with_pi);
SpectralField pseudodiff_adjoint_apply(const PreparedSymbol& a, const SpectralField& u,
                                       bool with_pi);

inline SpectralField paradiff_apply(const SampledSymbol& a, const SpectralField& u,
                                    const CutoffPair& cut = standard_cutoff()) {
  return paradiff_apply(prepare_symbol(a), u, cut);
}
inline SpectralField pseudodiff_apply(const SampledSymbol& a, const SpectralField& u,
                                      bool with_pi) {
  return pseudodiff_apply(prepare_symbol(a), u, with_pi);
}

// R(a,b) = ab − T_a b − T_b a with the dealiased pointwise product.
SpectralField paraproduct_remainder(const SpectralField& a, const SpectralField& b,
                                    const CutoffPair& cut = standard_cutoff());

// Neumann solve of (Id + T_{a−1}) v = u, i.e. v = T_a^{-1}u for symbols near 1.
// Throws if the iteration fails to contract to tol within maxit sweeps.
SpectralField paradiff_solve_near_identity(const PreparedSymbol& a_minus_one,
                                           const SpectralField& u,
                                           const CutoffPair& cut = standard_cutoff(),
                                           double tol = 1e-13, int maxit = 200);

// Randomized operator-norm probe: estimates sup ‖A u‖_{H^{s_out}} / ‖u‖_{H^{s_in}}.
// The first probes are lattice deltas (largest |k| first — exact for diagonal
// operators), the rest weighted random fields refined by a few power steps.
// Monotone nondecreasing in `trials`.
double operator_order_estimate(const std::function<SpectralField(const SpectralField&)>& apply_fn,
                               double s_in, double s_out, const TorusGrid& g, int trials);

}  // namespace wave
