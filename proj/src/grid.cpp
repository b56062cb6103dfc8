#include "wave/grid.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

namespace wave {

TorusGrid make_grid(int dim, int n_per_dim, double depth) {
  if (dim != 1 && dim != 2) throw std::invalid_argument("grid: dim must be 1 or 2");
  if (n_per_dim < 8 || n_per_dim % 2 != 0)
    throw std::invalid_argument("grid: n_per_dim must be even and >= 8");
  if (!(depth > 0.0)) throw std::invalid_argument("grid: depth must be positive");
  return TorusGrid{dim, n_per_dim, depth};
}

//------------------------------------------------------------------------------
// FFTW plan cache. Plan creation is not thread-safe; execution on caller-owned
// buffers via fftw_execute_dft is. Plans are created FFTW_UNALIGNED so any
// vector<cplx> storage qualifies.
//------------------------------------------------------------------------------
namespace {

struct PlanCache {
  std::mutex mu;
  std::map<std::tuple<int, int, int>, fftw_plan> plans;

  fftw_plan get(int dim, int n, int sign) {
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_tuple(dim, n, sign);
    auto it = plans.find(key);
    if (it != plans.end()) return it->second;
    const int total = dim == 1 ? n : n * n;
    fftw_complex* scratch = fftw_alloc_complex(total);
    fftw_plan p = dim == 1
        ? fftw_plan_dft_1d(n, scratch, scratch, sign, FFTW_ESTIMATE | FFTW_UNALIGNED)
        : fftw_plan_dft_2d(n, n, scratch, scratch, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(scratch);
    plans[key] = p;
    return p;
  }
};

PlanCache& cache() {
  static PlanCache c;
  return c;
}

// Stored (signed ascending, k = i - n/2) ↔ FFTW (frequency f = k mod n).
inline int fftw_axis_index(int i, int n) { return (i + n / 2) % n; }

inline int fftw_flat_index(const TorusGrid& g, int idx) {
  if (g.dim == 1) return fftw_axis_index(idx, g.n);
  return fftw_axis_index(idx / g.n, g.n) * g.n + fftw_axis_index(idx % g.n, g.n);
}

void check_same_grid(const SpectralField& a, const SpectralField& b) {
  if (!(a.grid == b.grid)) throw std::invalid_argument("field grid mismatch");
}

// -k on the stored lattice; the Nyquist row -n/2 is its own reflection (mod n).
inline KVec reflect(const TorusGrid& g, const KVec& k) {
  auto r = [&](int c) { return c == -g.n / 2 ? c : -c; };
  return {r(k[0]), g.dim == 2 ? r(k[1]) : 0};
}

}  // namespace

SpectralField to_spectral(const TorusGrid& g, const std::vector<cplx>& samples) {
  if ((int)samples.size() != g.total())
    throw std::invalid_argument("to_spectral: sample count does not match grid");
  std::vector<cplx> work(samples);
  fftw_execute_dft(cache().get(g.dim, g.n, FFTW_FORWARD),
                   reinterpret_cast<fftw_complex*>(work.data()),
                   reinterpret_cast<fftw_complex*>(work.data()));
  SpectralField u(g);
  const double scale = 1.0 / g.total();
  for (int i = 0; i < g.total(); ++i) u.coeff[i] = work[fftw_flat_index(g, i)] * scale;
  return u;
}

std::vector<cplx> to_physical(const SpectralField& u) {
  const TorusGrid& g = u.grid;
  std::vector<cplx> work(g.total());
  for (int i = 0; i < g.total(); ++i) work[fftw_flat_index(g, i)] = u.coeff[i];
  fftw_execute_dft(cache().get(g.dim, g.n, FFTW_BACKWARD),
                   reinterpret_cast<fftw_complex*>(work.data()),
                   reinterpret_cast<fftw_complex*>(work.data()));
  return work;
}

SpectralField apply_multiplier(const MultiplierSpec& m, const SpectralField& u) {
  SpectralField out(u.grid);
  for (int i = 0; i < u.grid.total(); ++i)
    out.coeff[i] = m.rule(kvec_of(u.grid, i)) * u.coeff[i];
  return out;
}

MultiplierSpec mult_pi() {
  return {[](const KVec& k) -> cplx { return (k[0] == 0 && k[1] == 0) ? 0.0 : 1.0; }, 0.0};
}

MultiplierSpec mult_abs_pow(double s) {
  return {[s](const KVec& k) -> cplx {
            const double a = kabs(k);
            return a == 0.0 ? 0.0 : std::pow(a, s);
          },
          s};
}

MultiplierSpec mult_bracket_pow(double s) {
  return {[s](const KVec& k) -> cplx { return std::pow(kbracket(k), s); }, s};
}

MultiplierSpec mult_bracket_pow_h(double s, double h) {
  return {[s, h](const KVec& k) -> cplx {
            return std::pow(std::sqrt(1.0 + h * h * (double(k[0]) * k[0] + double(k[1]) * k[1])), s);
          },
          s};
}

MultiplierSpec mult_partial(int axis, const TorusGrid& g) {
  const int nyq = -g.n / 2;
  return {[axis, nyq](const KVec& k) -> cplx {
            if (k[axis] == nyq) return 0.0;  // unpaired mode, keep real fields real
            return cplx(0.0, double(k[axis]));
          },
          1.0};
}

MultiplierSpec mult_dn_flat(double depth) {
  const bool inf = !(depth < kInfiniteDepth);
  return {[depth, inf](const KVec& k) -> cplx {
            const double a = kabs(k);
            return inf ? a : a * std::tanh(depth * a);
          },
          1.0};
}

MultiplierSpec mult_mb(double depth) {
  const bool inf = !(depth < kInfiniteDepth);
  return {[depth, inf](const KVec& k) -> cplx {
            if (inf) return 0.0;
            const double a = kabs(k);
            return a * (std::tanh(depth * a) - 1.0);
          },
          0.0};  // decays faster than any power; order 0 is a safe declaration
}

double sobolev_norm(const SpectralField& u, double s, double h) {
  double acc = 0.0;
  for (int i = 0; i < u.grid.total(); ++i) {
    const KVec k = kvec_of(u.grid, i);
    const double w = 1.0 + h * h * (double(k[0]) * k[0] + double(k[1]) * k[1]);
    acc += std::pow(w, s) * std::norm(u.coeff[i]);
  }
  return std::sqrt(acc);
}

double l2_physical(const TorusGrid& g, const std::vector<cplx>& samples) {
  double acc = 0.0;
  for (const cplx& v : samples) acc += std::norm(v);
  return std::sqrt(acc / g.total());
}

SpectralField project_zero_mean(const SpectralField& u) {
  SpectralField out = u;
  out.coeff[index_of(u.grid, {0, 0})] = 0.0;
  return out;
}

SpectralField dealias(const SpectralField& u) {
  const int cut = u.grid.n / 3;
  SpectralField out = u;
  for (int i = 0; i < u.grid.total(); ++i) {
    const KVec k = kvec_of(u.grid, i);
    if (std::abs(k[0]) > cut || std::abs(k[1]) > cut) out.coeff[i] = 0.0;
  }
  return out;
}

SpectralField conj_field(const SpectralField& u) {
  SpectralField out(u.grid);
  for (int i = 0; i < u.grid.total(); ++i) {
    const KVec k = kvec_of(u.grid, i);
    out.coeff[i] = std::conj(u.coeff[index_of(u.grid, reflect(u.grid, k))]);
  }
  return out;
}

SpectralField real_part(const SpectralField& u) {
  SpectralField c = conj_field(u);
  SpectralField out(u.grid);
  for (int i = 0; i < u.grid.total(); ++i) out.coeff[i] = 0.5 * (u.coeff[i] + c.coeff[i]);
  return out;
}

SpectralField imag_part(const SpectralField& u) {
  SpectralField c = conj_field(u);
  SpectralField out(u.grid);
  for (int i = 0; i < u.grid.total(); ++i)
    out.coeff[i] = (u.coeff[i] - c.coeff[i]) / cplx(0.0, 2.0);
  return out;
}

void make_real(SpectralField& u) { u = real_part(u); }

bool is_conjugate_symmetric(const SpectralField& u, double tol) {
  SpectralField c = conj_field(u);
  double err = 0.0, nrm = 0.0;
  for (int i = 0; i < u.grid.total(); ++i) {
    err += std::norm(u.coeff[i] - c.coeff[i]);
    nrm += std::norm(u.coeff[i]);
  }
  return std::sqrt(err) <= tol * std::max(1.0, std::sqrt(nrm));
}

SpectralField pointwise(const SpectralField& a, const SpectralField& b, bool do_dealias) {
  check_same_grid(a, b);
  std::vector<cplx> pa = to_physical(a), pb = to_physical(b);
  for (int i = 0; i < a.grid.total(); ++i) pa[i] *= pb[i];
  SpectralField out = to_spectral(a.grid, pa);
  return do_dealias ? dealias(out) : out;
}

SpectralField map_physical(const SpectralField& u, const std::function<cplx(cplx)>& f,
                           bool do_dealias) {
  std::vector<cplx> p = to_physical(u);
  for (cplx& v : p) v = f(v);
  SpectralField out = to_spectral(u.grid, p);
  return do_dealias ? dealias(out) : out;
}

SpectralField add(const SpectralField& a, const SpectralField& b) {
  check_same_grid(a, b);
  SpectralField out = a;
  for (int i = 0; i < a.grid.total(); ++i) out.coeff[i] += b.coeff[i];
  return out;
}

SpectralField sub(const SpectralField& a, const SpectralField& b) {
  check_same_grid(a, b);
  SpectralField out = a;
  for (int i = 0; i < a.grid.total(); ++i) out.coeff[i] -= b.coeff[i];
  return out;
}

SpectralField scale(const SpectralField& a, cplx s) {
  SpectralField out = a;
  for (cplx& v : out.coeff) v *= s;
  return out;
}

double inner_real(const SpectralField& a, const SpectralField& b) {
  check_same_grid(a, b);
  double acc = 0.0;
  for (int i = 0; i < a.grid.total(); ++i)
    acc += std::real(std::conj(a.coeff[i]) * b.coeff[i]);
  return acc;
}

}  // namespace wave
