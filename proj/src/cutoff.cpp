#include "wave/cutoff.hpp"

#include <cmath>
#include <memory>

namespace wave {

namespace {
constexpr int kRampNodes = 4097;

double bump(double tau, double sharp) {
  if (tau <= 0.0 || tau >= 1.0) return 0.0;
  return std::exp(-sharp / (tau * (1.0 - tau)));
}
}  // namespace

PlateauRamp::PlateauRamp(double lo, double hi, double sharp) : lo_(lo), hi_(hi) {
  // Cumulative per-interval Simpson for the bump CDF on a uniform grid.
  const int n = kRampNodes - 1;
  const double h = 1.0 / n;
  std::vector<double> g(kRampNodes);
  for (int i = 0; i < kRampNodes; ++i) g[i] = bump(i * h, sharp);
  val_.assign(kRampNodes, 0.0);
  for (int i = 1; i <= n; ++i)
    val_[i] = val_[i - 1] + h / 6.0 * (g[i - 1] + 4.0 * bump((i - 0.5) * h, sharp) + g[i]);
  const double Z = val_[n];
  der_.resize(kRampNodes);
  for (int i = 0; i < kRampNodes; ++i) {
    val_[i] /= Z;
    der_[i] = g[i] / Z;
  }
  val_[n] = 1.0;
}

double PlateauRamp::operator()(double t) const {
  const double tau = (t - lo_) / (hi_ - lo_);
  if (tau <= 0.0) return 1.0;
  if (tau >= 1.0) return 0.0;
  const int n = kRampNodes - 1;
  const double s = tau * n;
  int i = (int)s;
  if (i >= n) i = n - 1;
  const double x = s - i, h = 1.0 / n;
  const double v0 = val_[i], v1 = val_[i + 1], d0 = der_[i] * h, d1 = der_[i + 1] * h;
  const double x2 = x * x, x3 = x2 * x;
  const double c = (2 * x3 - 3 * x2 + 1) * v0 + (x3 - 2 * x2 + x) * d0 +
                   (-2 * x3 + 3 * x2) * v1 + (x3 - x2) * d1;
  return 1.0 - c;
}

namespace {

CutoffPair build_cutoff(double eps1, double eps2, double sharp) {
  auto ramp = std::make_shared<PlateauRamp>(eps1, eps2, sharp);
  auto rise = std::make_shared<PlateauRamp>(0.25, 0.75, sharp);
  CutoffPair c;
  c.eps1 = eps1;
  c.eps2 = eps2;
  c.chi = [ramp](const KVec& theta, const KVec& eta) {
    return (*ramp)(kabs(theta) / kbracket(eta));
  };
  c.pi_fn = [rise](double xi) { return 1.0 - (*rise)(std::abs(xi)); };
  return c;
}

}  // namespace

const CutoffPair& standard_cutoff() {
  static const CutoffPair c = build_cutoff(0.1, 0.3, 1.0);
  return c;
}

const CutoffPair& alternate_cutoff() {
  static const CutoffPair c = build_cutoff(0.05, 0.25, 2.0);
  return c;
}

}  // namespace wave
