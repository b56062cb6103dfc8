#include "wave/paradiff.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "wave/rng.hpp"

namespace wave {

namespace {
constexpr double PI2 = 6.28318530717958647692;

inline bool is_nyquist(const TorusGrid& g, const KVec& k) {
  return k[0] == -g.n / 2 || (g.dim == 2 && k[1] == -g.n / 2);
}
}  // namespace

SampledSymbol sample_symbol(const TorusGrid& g, double order, SymbolParity parity,
                            const std::function<cplx(double, double, const KVec&)>& fn) {
  const int M = g.total();
  SampledSymbol a{g, order, parity, std::vector<cplx>(size_t(M) * M)};
  for (int ki = 0; ki < M; ++ki) {
    const KVec k = kvec_of(g, ki);
    const bool kill = parity == SymbolParity::imaginary_odd && is_nyquist(g, k);
    for (int j = 0; j < M; ++j) {
      const int j1 = g.dim == 1 ? j : j / g.n;
      const int j2 = g.dim == 1 ? 0 : j % g.n;
      a.values[size_t(ki) * M + j] =
          kill ? cplx(0.0) : fn(PI2 * j1 / g.n, PI2 * j2 / g.n, k);
    }
  }
  return a;
}

SampledSymbol symbol_from_columns(
    const TorusGrid& g, double order, SymbolParity parity,
    const std::function<void(const KVec&, std::vector<cplx>&)>& fill) {
  const int M = g.total();
  SampledSymbol a{g, order, parity, std::vector<cplx>(size_t(M) * M)};
  std::vector<cplx> col(M);
  for (int ki = 0; ki < M; ++ki) {
    const KVec k = kvec_of(g, ki);
    fill(k, col);
    if (parity == SymbolParity::imaginary_odd && is_nyquist(g, k))
      std::fill(col.begin(), col.end(), cplx(0.0));
    std::copy(col.begin(), col.end(), a.values.begin() + size_t(ki) * M);
  }
  return a;
}

PreparedSymbol prepare_symbol(const SampledSymbol& a) {
  const TorusGrid& g = a.grid;
  const int M = g.total();
  if ((int)a.values.size() != M * M)
    throw std::invalid_argument("symbol table size does not match grid");
  PreparedSymbol p{g, a.order, a.parity, true, {}, {}};
  for (int ki = 0; ki < M && p.x_independent; ++ki) {
    const cplx v0 = a.values[size_t(ki) * M];
    for (int j = 1; j < M; ++j)
      if (a.values[size_t(ki) * M + j] != v0) {
        p.x_independent = false;
        break;
      }
  }
  if (p.x_independent) {
    p.diag.resize(M);
    for (int ki = 0; ki < M; ++ki) p.diag[ki] = a.values[size_t(ki) * M];
    return p;
  }
  p.ahat.resize(size_t(M) * M);
  std::vector<cplx> col(M);
  for (int ki = 0; ki < M; ++ki) {
    std::copy(a.values.begin() + size_t(ki) * M, a.values.begin() + size_t(ki + 1) * M,
              col.begin());
    SpectralField chat = to_spectral(g, col);
    std::copy(chat.coeff.begin(), chat.coeff.end(), p.ahat.begin() + size_t(ki) * M);
  }
  return p;
}

namespace {

enum class Quant { para, pseudo_pi, pseudo_nopi };

// One engine for all four entry points; `adjoint` transposes the sum.
SpectralField quantize(const PreparedSymbol& a, const SpectralField& u, Quant q,
                       const CutoffPair& cut, bool adjoint) {
  if (!(a.grid == u.grid)) throw std::invalid_argument("symbol/field grid mismatch");
  const TorusGrid& g = a.grid;
  const int M = g.total();
  SpectralField out(g);

  if (a.x_independent) {
    // Only θ = 0 contributes; χ(0,η) = 1. Diagonal in either orientation.
    for (int i = 0; i < M; ++i) {
      const KVec k = kvec_of(g, i);
      const bool zero = (k[0] == 0 && k[1] == 0);
      const double pi_k = (q == Quant::pseudo_nopi) ? 1.0 : (zero ? 0.0 : 1.0);
      const cplx m = adjoint ? std::conj(a.diag[i]) : a.diag[i];
      out.coeff[i] = m * pi_k * u.coeff[i];
    }
    return out;
  }

  for (int ei = 0; ei < M; ++ei) {  // ei: index of η
    const KVec eta = kvec_of(g, ei);
    const bool eta_zero = (eta[0] == 0 && eta[1] == 0);
    const double pi_eta = (q == Quant::pseudo_nopi) ? 1.0 : (eta_zero ? 0.0 : 1.0);
    if (pi_eta == 0.0) continue;
    cplx acc = 0.0;  // adjoint accumulator
    const cplx ue = adjoint ? cplx(0.0) : pi_eta * u.coeff[ei];
    if (!adjoint && ue == cplx(0.0)) continue;
    const cplx* ahat_col = &a.ahat[size_t(ei) * M];
    for (int xi = 0; xi < M; ++xi) {  // xi: index of ξ
      const KVec kxi = kvec_of(g, xi);
      const KVec theta{kxi[0] - eta[0], g.dim == 2 ? kxi[1] - eta[1] : 0};
      if (!in_lattice(g, theta)) continue;
      double w = 1.0;
      if (q == Quant::para) {
        w = cut.chi(theta, eta);
        if (w == 0.0) continue;
      }
      const cplx av = ahat_col[index_of(g, theta)];
      if (adjoint)
        acc += w * std::conj(av) * u.coeff[xi];
      else
        out.coeff[xi] += w * av * ue;
    }
    if (adjoint) out.coeff[ei] = pi_eta * acc;
  }
  return out;
}

}  // namespace

SpectralField paradiff_apply(const PreparedSymbol& a, const SpectralField& u,
                             const CutoffPair& cut) {
  return quantize(a, u, Quant::para, cut, false);
}

SpectralField paradiff_adjoint_apply(const PreparedSymbol& a, const SpectralField& u,
                                     const CutoffPair& cut) {
  return quantize(a, u, Quant::para, cut, true);
}

SpectralField pseudodiff_apply(const PreparedSymbol& a, const SpectralField& u, bool with_pi) {
  return quantize(a, u, with_pi ? Quant::pseudo_pi : Quant::pseudo_nopi, standard_cutoff(),
                  false);
}

SpectralField pseudodiff_adjoint_apply(const PreparedSymbol& a, const SpectralField& u,
                                       bool with_pi) {
  return quantize(a, u, with_pi ? Quant::pseudo_pi : Quant::pseudo_nopi, standard_cutoff(),
                  true);
}

SpectralField paraproduct_remainder(const SpectralField& a, const SpectralField& b,
                                    const CutoffPair& cut) {
  const TorusGrid& g = a.grid;
  const int M = g.total();
  // Paraproduct symbols: ξ-independent, value a(x) in every column.
  auto as_symbol = [&](const SpectralField& f) {
    std::vector<cplx> phys = to_physical(f);
    SampledSymbol s{g, 0.0, SymbolParity::none, std::vector<cplx>(size_t(M) * M)};
    for (int ki = 0; ki < M; ++ki)
      std::copy(phys.begin(), phys.end(), s.values.begin() + size_t(ki) * M);
    return prepare_symbol(s);
  };
  SpectralField ab = pointwise(a, b);
  SpectralField tab = paradiff_apply(as_symbol(a), b, cut);
  SpectralField tba = paradiff_apply(as_symbol(b), a, cut);
  return sub(sub(ab, tab), tba);
}

SpectralField paradiff_solve_near_identity(const PreparedSymbol& a_minus_one,
                                           const SpectralField& u, const CutoffPair& cut,
                                           double tol, int maxit) {
  SpectralField v = u;
  const double unorm = std::max(sobolev_norm(u, 0.0), 1e-300);
  double prev = kInfiniteDepth;
  for (int it = 0; it < maxit; ++it) {
    SpectralField next = sub(u, paradiff_apply(a_minus_one, v, cut));
    const double delta = sobolev_norm(sub(next, v), 0.0);
    v = next;
    if (delta <= tol * unorm) return v;
    if (it > 8 && delta > prev) break;  // diverging; symbol too far from 1
    prev = delta;
  }
  throw std::runtime_error("near-identity solve failed to contract");
}

double operator_order_estimate(
    const std::function<SpectralField(const SpectralField&)>& apply_fn, double s_in,
    double s_out, const TorusGrid& g, int trials) {
  const int M = g.total();
  std::vector<int> order(M);
  for (int i = 0; i < M; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return kabs(kvec_of(g, a)) > kabs(kvec_of(g, b));
  });

  double best = 0.0;
  auto ratio = [&](const SpectralField& u) {
    const double nin = sobolev_norm(u, s_in);
    if (nin == 0.0) return 0.0;
    return sobolev_norm(apply_fn(u), s_out) / nin;
  };
  MultiplierSpec reweight = mult_bracket_pow(s_out - s_in);

  for (int t = 0; t < trials; ++t) {
    if (t < M) {  // lattice deltas, extremes first: exact for multipliers
      SpectralField delta(g);
      delta.coeff[order[t]] = 1.0;
      best = std::max(best, ratio(delta));
      continue;
    }
    SpectralField u = random_field(g, 97 + 31 * t, decay_weight(s_in));
    for (int step = 0; step < 4; ++step) {
      best = std::max(best, ratio(u));
      u = apply_multiplier(reweight, apply_fn(u));  // power step in weighted norms
      const double n = sobolev_norm(u, s_in);
      if (n < 1e-290) break;
      u = scale(u, 1.0 / n);
    }
  }
  return best;
}

}  // namespace wave
