#include "mhdvac/frozen_mode.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "mhdvac/errors.hpp"
#include "mhdvac/solver.hpp"

namespace mhdvac {

Eigen::MatrixXcd frozen_mode_generator(const ModeSpec& mode, const FrozenModeOptions& opt, double* L1out) {
  using C = std::complex<double>;
  const double kk = std::hypot(mode.k2, mode.k3);
  if (!(kk > 0.0)) throw UsageError("frozen mode needs a nonzero tangential wavenumber");
  if (mode.ring.frontAmplitude != 0.0) throw UsageError("frozen mode needs a flat basic front");
  if (!(opt.nWaves > 0.0)) throw UsageError("nWaves must be positive");

  GridSpec g;
  g.nx1 = opt.n1;
  g.nx2 = 4;
  g.nx3 = 4;
  g.L1 = opt.nWaves * 2.0 * std::numbers::pi / kk;
  if (L1out) *L1out = g.L1;
  PhysicsParams phys;
  phys.epsilon = mode.epsilon;
  phys.sigmaTension = mode.sTension;
  const BasicState ring = BasicState::build(mode.ring, g, mode.eos, phys);
  const SemiDiscrete op(ring);

  const int n = g.n1p();
  const int N = 14 * n + 1;
  const C i2(0.0, mode.k2), i3(0.0, mode.k3);
  const double E1 = ring.V(vacuum::kE, g.nx1);
  // Flat front: the curvature matrix is the identity.
  const double kB = mode.k2 * mode.k2 + mode.k3 * mode.k3;

  Eigen::MatrixXcd G(N, N);
  std::vector<C> y(N), d2u(8 * n), d3u(8 * n), d2v(6 * n), d3v(6 * n), ut(8 * n), vt(6 * n);
  for (int m = 0; m < N; ++m) {
    std::fill(y.begin(), y.end(), C(0.0));
    y[m] = 1.0;
    const C* U = y.data();
    const C* V = y.data() + 8 * n;
    for (int a = 0; a < 8 * n; ++a) {
      d2u[a] = i2 * U[a];
      d3u[a] = i3 * U[a];
    }
    for (int a = 0; a < 6 * n; ++a) {
      d2v[a] = i2 * V[a];
      d3v[a] = i3 * V[a];
    }
    ColumnIn<C> in;
    in.U = U;
    in.D2U = d2u.data();
    in.D3U = d3u.data();
    in.V = V;
    in.D2V = d2v.data();
    in.D3V = d3v.data();
    in.phi = y[N - 1];
    in.d2phi = i2 * in.phi;
    in.d3phi = i3 * in.phi;
    in.curv = -kB * in.phi;
    in.dE2 = i2 * E1 * in.phi;
    in.dE3 = i3 * E1 * in.phi;
    ColumnOut<C> out;
    out.Ut = ut.data();
    out.Vt = vt.data();
    op.column_rhs<C>(0, in, out);
    if (!(out.residual <= 1e-9)) throw NumericalError("frozen mode: singular interface assembly");
    for (int a = 0; a < 8 * n; ++a) G(a, m) = ut[a];
    for (int a = 0; a < 6 * n; ++a) G(8 * n + a, m) = vt[a];
    G(N - 1, m) = out.dtPhi;
  }
  return G;
}

FrozenModeResult frozen_mode_growth(const ModeSpec& mode, const FrozenModeOptions& opt) {
  FrozenModeResult r;
  const Eigen::MatrixXcd G = frozen_mode_generator(mode, opt, &r.L1);
  r.order = static_cast<int>(G.rows());
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(G, false);
  if (es.info() != Eigen::Success) throw NumericalError("frozen mode: eigenvalue iteration failed");
  std::vector<std::complex<double>> ev(es.eigenvalues().data(), es.eigenvalues().data() + G.rows());
  std::sort(ev.begin(), ev.end(), [](const auto& a, const auto& b) {
    if (a.real() != b.real()) return a.real() > b.real();
    return a.imag() < b.imag();
  });
  r.growthRate = ev.front().real();
  ev.resize(std::min<size_t>(ev.size(), static_cast<size_t>(std::max(opt.sliceSize, 1))));
  r.spectrumSlice = ev;
  return r;
}

std::vector<GrowthPoint> growth_curve(const ModeSpec& base, double kMin, double kMax, int count, double angle,
                                      const FrozenModeOptions& opt) {
  if (!(kMin > 0.0) || !(kMax > kMin) || count < 2) throw UsageError("growth curve needs 0 < kMin < kMax, count >= 2");
  std::vector<GrowthPoint> out;
  for (int j = 0; j < count; ++j) {
    const double k = kMin * std::pow(kMax / kMin, static_cast<double>(j) / (count - 1));
    ModeSpec m = base;
    m.k2 = k * std::cos(angle);
    m.k3 = k * std::sin(angle);
    out.push_back({k, frozen_mode_growth(m, opt).growthRate});
  }
  return out;
}

}  // namespace mhdvac
