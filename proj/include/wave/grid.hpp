//==============================================================================
// grid.hpp
// Torus grids, spectral fields, Fourier multipliers, Sobolev norms.
//
// Conventions (fixed here, relied on everywhere else):
//   • 𝕋^d = [0,2π)^d, d ∈ {1,2}, n points per axis, x_j = 2π j / n.
//   • Stored lattice: k ∈ {-n/2, …, n/2-1} per axis, *signed ascending*;
//     flat index (d=2) is row-major, idx = i1*n + i2 with k_a = i_a - n/2.
//   • Forward DFT carries 1/n^d so coeff(k) is the amplitude of e^{ik·x};
//     with the (2π)^{-d}-normalised measure this makes ‖e^{ik·x}‖_{L²} = 1
//     and Parseval exact: (1/n^d) Σ_j |u(x_j)|² = Σ_k |coeff(k)|².
//   • depth = +inf is legal and means tanh(b|k|) ≡ 1.
//   • The Nyquist row k = -n/2 is self-paired under conjugation; real fields
//     keep its imaginary part at zero, odd multipliers kill it outright.
//==============================================================================
#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <vector>

namespace wave {

using cplx = std::complex<double>;
constexpr double kInfiniteDepth = std::numeric_limits<double>::infinity();

struct TorusGrid {
  int dim = 1;          // d ∈ {1,2}
  int n = 0;            // points (= stored modes) per axis, even, ≥ 8
  double depth = kInfiniteDepth;

  int total() const { return dim == 1 ? n : n * n; }
  bool infinite_depth() const { return !(depth < kInfiniteDepth); }
  bool operator==(const TorusGrid& o) const {
    return dim == o.dim && n == o.n &&
           (depth == o.depth || (infinite_depth() && o.infinite_depth()));
  }
};

// dim/n_per_dim validated here once; everything downstream trusts the grid.
TorusGrid make_grid(int dim, int n_per_dim, double depth);

using KVec = std::array<int, 2>;  // k[1] ≡ 0 when dim == 1

inline KVec kvec_of(const TorusGrid& g, int idx) {
  if (g.dim == 1) return {idx - g.n / 2, 0};
  return {idx / g.n - g.n / 2, idx % g.n - g.n / 2};
}
inline int index_of(const TorusGrid& g, const KVec& k) {
  if (g.dim == 1) return k[0] + g.n / 2;
  return (k[0] + g.n / 2) * g.n + (k[1] + g.n / 2);
}
inline bool in_lattice(const TorusGrid& g, const KVec& k) {
  const int lo = -g.n / 2, hi = g.n / 2 - 1;
  if (k[0] < lo || k[0] > hi) return false;
  if (g.dim == 2 && (k[1] < lo || k[1] > hi)) return false;
  return g.dim == 2 || k[1] == 0;
}
inline double kabs(const KVec& k) {
  return std::sqrt(double(k[0]) * k[0] + double(k[1]) * k[1]);
}
inline double kbracket(const KVec& k) {  // ⟨k⟩ = (1+|k|²)^{1/2}
  return std::sqrt(1.0 + double(k[0]) * k[0] + double(k[1]) * k[1]);
}

struct SpectralField {
  TorusGrid grid;
  std::vector<cplx> coeff;  // lattice order, see header comment

  SpectralField() = default;
  explicit SpectralField(const TorusGrid& g) : grid(g), coeff(g.total()) {}
  cplx& operator[](int i) { return coeff[i]; }
  const cplx& operator[](int i) const { return coeff[i]; }
};

// --- transforms --------------------------------------------------------------
// to_spectral: physical samples (row-major x order) → coefficients.
// to_physical: coefficients → samples. Round trip is identity to ~1e-15.
SpectralField to_spectral(const TorusGrid& g, const std::vector<cplx>& samples);
std::vector<cplx> to_physical(const SpectralField& u);

// --- multipliers --------------------------------------------------------------
struct MultiplierSpec {
  std::function<cplx(const KVec&)> rule;
  double order = 0.0;
};

SpectralField apply_multiplier(const MultiplierSpec& m, const SpectralField& u);

// Stock rules. Odd-in-k rules zero the Nyquist row so real fields stay real.
MultiplierSpec mult_pi();                       // π(k) = 1 for k ≠ 0, else 0
MultiplierSpec mult_abs_pow(double s);          // |k|^s   (0 at k = 0)
MultiplierSpec mult_bracket_pow(double s);      // ⟨k⟩^s
MultiplierSpec mult_bracket_pow_h(double s, double h);  // ⟨hk⟩^s
MultiplierSpec mult_partial(int axis, const TorusGrid& g);  // i k_axis, Nyquist-safe
MultiplierSpec mult_dn_flat(double depth);      // |k| tanh(b|k|)
MultiplierSpec mult_mb(double depth);           // |k| (tanh(b|k|) - 1)

// --- norms, projections, products --------------------------------------------
// (Σ_k ⟨hk⟩^{2s} |coeff(k)|²)^{1/2}; h = 1 gives the plain H^s norm.
double sobolev_norm(const SpectralField& u, double s, double h = 1.0);
double l2_physical(const TorusGrid& g, const std::vector<cplx>& samples);

SpectralField project_zero_mean(const SpectralField& u);   // coeff(0) := 0
SpectralField dealias(const SpectralField& u);  // zero |k_a| > floor(n/3)
void make_real(SpectralField& u);  // enforce coeff(-k) = conj(coeff(k))
bool is_conjugate_symmetric(const SpectralField& u, double tol = 1e-12);

// Pointwise product via physical space; dealiased by default (quadratic terms
// of the water-wave system all pass through here).
SpectralField pointwise(const SpectralField& a, const SpectralField& b,
                        bool do_dealias = true);
// Pointwise evaluation of a real function of x applied to samples of u.
SpectralField map_physical(const SpectralField& u,
                           const std::function<cplx(cplx)>& f,
                           bool do_dealias = true);

// Field arithmetic (same grid assumed).
SpectralField add(const SpectralField& a, const SpectralField& b);
SpectralField sub(const SpectralField& a, const SpectralField& b);
SpectralField scale(const SpectralField& a, cplx s);
SpectralField real_part(const SpectralField& u);   // spectral realification
SpectralField imag_part(const SpectralField& u);
SpectralField conj_field(const SpectralField& u);  // coeff(k) := conj(coeff(-k))
double inner_real(const SpectralField& a, const SpectralField& b);  // Re⟨a,b⟩_{L²}

}  // namespace wave
