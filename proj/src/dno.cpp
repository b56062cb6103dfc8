#include "wave/dno.hpp"

#include <cmath>
#include <stdexcept>

namespace wave {

namespace {

struct Surface {
  const TorusGrid g;
  double depth;
  SpectralField eta, ex, ey;  // η and its gradient
  SpectralField grad2;        // |∇η|² (dealiased product)
};

Surface make_surface(const SpectralField& eta) {
  Surface s{eta.grid, eta.grid.depth, eta, partial(eta, 0), SpectralField(eta.grid),
            SpectralField(eta.grid)};
  if (eta.grid.dim == 2) s.ey = partial(eta, 1);
  s.grad2 = pointwise(s.ex, s.ex);
  if (eta.grid.dim == 2) s.grad2 = add(s.grad2, pointwise(s.ey, s.ey));
  return s;
}

SpectralField divergence(const SpectralField& w1, const SpectralField& w2, int dim) {
  SpectralField d = partial(w1, 0);
  if (dim == 2) d = add(d, partial(w2, 1));
  return d;
}

// G_0..G_M applied to f; recursion depth bounded by M ≤ 6.
std::vector<SpectralField> dn_terms(const Surface& s, const SpectralField& f, int M) {
  std::vector<SpectralField> G(M + 1, SpectralField(s.g));
  G[0] = dn_flat(f, s.depth);
  if (M == 0) return G;
  // B_l[f] and V_l[f] built alongside; V as the pair (V1, V2)
  std::vector<SpectralField> B(M, SpectralField(s.g));
  std::vector<SpectralField> V1(M, SpectralField(s.g)), V2(M, SpectralField(s.g));
  SpectralField fx = partial(f, 0);
  SpectralField fy = s.g.dim == 2 ? partial(f, 1) : SpectralField(s.g);
  for (int m = 1; m <= M; ++m) {
    const int l = m - 1;
    // B_{m-1}[f]
    B[l] = G[l];
    if (l == 1) {
      B[l] = add(B[l], pointwise(s.ex, fx));
      if (s.g.dim == 2) B[l] = add(B[l], pointwise(s.ey, fy));
    }
    if (l >= 2) B[l] = sub(B[l], pointwise(s.grad2, B[l - 2]));
    // V_{m-1}[f]
    if (l == 0) {
      V1[0] = fx;
      V2[0] = fy;
    } else {
      V1[l] = scale(pointwise(B[l - 1], s.ex), -1.0);
      V2[l] = s.g.dim == 2 ? scale(pointwise(B[l - 1], s.ey), -1.0) : SpectralField(s.g);
    }
    // m G_m f = −Σ_{j+l'=m−1} G_j(B_{l'}[f] η) − ∇·(V_{m−1}[f] η)
    SpectralField acc(s.g);
    for (int lp = 0; lp <= m - 1; ++lp) {
      const int j = m - 1 - lp;
      SpectralField arg = pointwise(B[lp], s.eta);
      acc = sub(acc, dn_terms(s, arg, j)[j]);
    }
    acc = sub(acc, divergence(pointwise(V1[l], s.eta),
                              s.g.dim == 2 ? pointwise(V2[l], s.eta) : V2[l], s.g.dim));
    G[m] = scale(acc, 1.0 / m);
  }
  return G;
}

}  // namespace

SpectralField partial(const SpectralField& u, int axis) {
  return apply_multiplier(mult_partial(axis, u.grid), u);
}

double c1_norm(const SpectralField& eta) {
  std::vector<cplx> e = to_physical(eta);
  std::vector<cplx> ex = to_physical(partial(eta, 0));
  std::vector<cplx> ey;
  if (eta.grid.dim == 2) ey = to_physical(partial(eta, 1));
  double sup = 0.0, supg = 0.0;
  for (int j = 0; j < eta.grid.total(); ++j) {
    sup = std::max(sup, std::abs(e[j].real()));
    double gx = ex[j].real(), gy = eta.grid.dim == 2 ? ey[j].real() : 0.0;
    supg = std::max(supg, std::sqrt(gx * gx + gy * gy));
  }
  return sup + supg;
}

SpectralField dn_flat(const SpectralField& psi, double depth) {
  return apply_multiplier(mult_dn_flat(depth), psi);
}

DNResult dn_apply(const SpectralField& eta, const SpectralField& psi, const DNConfig& cfg) {
  if (cfg.expansion_order < 1 || cfg.expansion_order > 6)
    throw std::invalid_argument("dn: expansion order must be in 1..6");
  if (!(c1_norm(eta) < cfg.validity_threshold))
    throw std::invalid_argument("dn: surface exceeds validity threshold");
  Surface s = make_surface(eta);
  std::vector<SpectralField> G = dn_terms(s, psi, cfg.expansion_order);
  DNResult r{SpectralField(eta.grid), 0.0, true};
  double prev = kInfiniteDepth;
  for (int m = 0; m <= cfg.expansion_order; ++m) {
    r.value = add(r.value, G[m]);
    const double inc = sobolev_norm(G[m], 0.0);
    if (m >= 2 && inc > prev) r.converged = false;
    prev = inc;
    if (m == cfg.expansion_order) r.err_estimate = inc;
  }
  return r;
}

SpectralField dn_shape_derivative(const SpectralField& eta, const SpectralField& psi,
                                  const SpectralField& h, const DNConfig& cfg) {
  BVPair bv = compute_BV(eta, psi, cfg);
  SpectralField gb = dn_apply(eta, pointwise(bv.B, h), cfg).value;
  SpectralField d = divergence(pointwise(bv.V1, h),
                               eta.grid.dim == 2 ? pointwise(bv.V2, h) : bv.V2, eta.grid.dim);
  return scale(add(gb, d), -1.0);
}

BVPair compute_BV(const SpectralField& eta, const SpectralField& psi, const DNConfig& cfg) {
  return compute_BV_given(eta, psi, dn_apply(eta, psi, cfg).value);
}

BVPair compute_BV_given(const SpectralField& eta, const SpectralField& psi,
                        const SpectralField& g_eta_psi) {
  const TorusGrid& g = eta.grid;
  Surface s = make_surface(eta);
  SpectralField px = partial(psi, 0);
  SpectralField py = g.dim == 2 ? partial(psi, 1) : SpectralField(g);
  SpectralField num = add(g_eta_psi, pointwise(s.ex, px));
  if (g.dim == 2) num = add(num, pointwise(s.ey, py));
  // divide by 1+|∇η|² in physical space
  std::vector<cplx> np = to_physical(num), dp = to_physical(s.grad2);
  for (int j = 0; j < g.total(); ++j) np[j] /= (1.0 + dp[j].real());
  BVPair bv{dealias(to_spectral(g, np)), SpectralField(g), SpectralField(g)};
  bv.V1 = sub(px, pointwise(bv.B, s.ex));
  bv.V2 = g.dim == 2 ? sub(py, pointwise(bv.B, s.ey)) : SpectralField(g);
  return bv;
}

SpectralField mean_curvature(const SpectralField& eta) {
  const TorusGrid& g = eta.grid;
  Surface s = make_surface(eta);
  std::vector<cplx> ex = to_physical(s.ex);
  std::vector<cplx> ey = g.dim == 2 ? to_physical(s.ey) : std::vector<cplx>(g.total(), 0.0);
  std::vector<cplx> w1(g.total()), w2(g.total());
  for (int j = 0; j < g.total(); ++j) {
    const double gx = ex[j].real(), gy = ey[j].real();
    const double N = std::sqrt(1.0 + gx * gx + gy * gy);
    w1[j] = gx / N;
    w2[j] = gy / N;
  }
  SpectralField W1 = dealias(to_spectral(g, w1));
  SpectralField W2 = g.dim == 2 ? dealias(to_spectral(g, w2)) : SpectralField(g);
  return divergence(W1, W2, g.dim);
}

}  // namespace wave
