//==============================================================================
// dno.hpp
// Dirichlet–Neumann operator on the torus: flat multiplier, shape-derivative
// Taylor expansion in powers of the surface, its derivative, and the mean
// curvature of a graph.
//
// The expansion engine realizes G(η) = Σ_m G_m with G_0 = |D| tanh(b|D|) and,
// from differentiating t ↦ G(tη) with the shape-derivative formula
// d_ηG·h = −G(Bh) − ∇·(Vh),
//
//   m G_m f = − Σ_{j+l=m−1} G_j( B_l[f]·η ) − ∇·( V_{m−1}[f]·η ),
//   B_l[f] = G_l f + δ_{l1} ∇η·∇f − |∇η|² B_{l−2}[f],
//   V_0[f] = ∇f,  V_l[f] = −B_{l−1}[f] ∇η.
//
// Every pointwise product is dealiased. All fields real (conjugate-symmetric).
//==============================================================================
#pragma once

#include "wave/grid.hpp"

namespace wave {

struct DNConfig {
  int expansion_order = 4;          // M, 1..6
  double validity_threshold = 0.2;  // max accepted ‖η‖_{C¹}
};

struct DNResult {
  SpectralField value;
  double err_estimate = 0.0;  // L² norm of the top-order increment
  bool converged = true;      // false if increments grew along the way
};

struct BVPair {
  SpectralField B;
  SpectralField V1, V2;  // V2 is the zero field when dim == 1
};

// ‖η‖_∞ + ‖|∇η|‖_∞ from physical samples.
double c1_norm(const SpectralField& eta);

SpectralField dn_flat(const SpectralField& psi, double depth);

// Order-M evaluation of G(η)ψ. Throws if ‖η‖_{C¹} ≥ cfg.validity_threshold.
DNResult dn_apply(const SpectralField& eta, const SpectralField& psi, const DNConfig& cfg);

// d_ηG(η)ψ·h = −G(η)(Bh) − ∇·(Vh), with B, V the surface fields of (η, ψ).
SpectralField dn_shape_derivative(const SpectralField& eta, const SpectralField& psi,
                                  const SpectralField& h, const DNConfig& cfg);

// B = (∇η·∇ψ + G(η)ψ)/(1+|∇η|²), V = ∇ψ − B∇η.
BVPair compute_BV(const SpectralField& eta, const SpectralField& psi, const DNConfig& cfg);

// The same B with G(η)ψ already in hand (avoids a second expansion).
BVPair compute_BV_given(const SpectralField& eta, const SpectralField& psi,
                        const SpectralField& g_eta_psi);

// H(η) = ∇·( ∇η / √(1+|∇η|²) ), dealiased.
SpectralField mean_curvature(const SpectralField& eta);

// Gradient per axis (Nyquist-safe spectral derivative).
SpectralField partial(const SpectralField& u, int axis);

}  // namespace wave
