#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "mhdvac/energy.hpp"
#include "mhdvac/scenario.hpp"
#include "oracles.hpp"

using namespace mhdvac;

namespace {

GridSpec grid(int n1, int n2, int n3) {
  GridSpec g;
  g.nx1 = n1;
  g.nx2 = n2;
  g.nx3 = n3;
  return g;
}

double max_abs(const Eigen::MatrixXd& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace

TEST_CASE("conormal weight") {
  CHECK(conormal_sigma(0.3) == 0.3);
  CHECK(conormal_sigma(0.5) == 0.5);
  CHECK(conormal_sigma(2.0) == 1.0);
  CHECK(conormal_sigma(1.5) == doctest::Approx(1.0).epsilon(1e-12));
  double prev = 0.0;
  for (double x = 0.0; x <= 3.0; x += 0.05) {
    CHECK(conormal_sigma(x) >= prev);
    prev = conormal_sigma(x);
  }
  for (double x : {0.7, 1.0, 1.3})
    CHECK(conormal_sigma_derivative(x) == doctest::Approx(oracle::fd5(conormal_sigma, x, 1e-3)).epsilon(1e-7));
}

TEST_CASE("conormal derivatives") {
  const GridSpec g = grid(32, 16, 4);
  Field1 u(1, g.npts()), e(1, g.npts());
  for (int j = 0; j < g.nx2; ++j)
    for (int k = 0; k < g.nx3; ++k)
      for (int i = 0; i < g.n1p(); ++i) {
        const double x = g.x1_fluid(i);
        u(0, g.point(i, j, k)) = x * x;
        e(0, g.point(i, j, k)) = std::sin(2.0 * std::numbers::pi * g.x2(j) / g.L2);
      }
  CHECK(max_abs(conormal_derivative<1>(u, g, {0, 0, 0, 0}) - u) == 0.0);
  const Field1 s = conormal_derivative<1>(u, g, {0, 1, 0, 0});
  for (int i = 0; i < g.n1p(); ++i) {
    const double x = g.x1_fluid(i);
    if (x <= 0.5) CHECK(s(0, i) == doctest::Approx(2.0 * x * x).epsilon(1e-12));
  }
  // Fourier symbol of the centered difference: i sin(k h) / h, which tends to i k.
  const double k = 2.0 * std::numbers::pi / g.L2, kh = std::sin(k * g.h2()) / g.h2();
  CHECK(std::abs(kh - k) < k * k * k * g.h2() * g.h2() / 6.0);
  const Field1 d = conormal_derivative<1>(e, g, {0, 0, 1, 0});
  for (int j = 0; j < g.nx2; ++j)
    CHECK(d(0, g.point(5, j, 0)) == doctest::Approx(kh * std::cos(k * g.x2(j))).epsilon(1e-12));
  CHECK_THROWS_AS(conormal_derivative<1>(u, g, {1, 0, 0, 0}), UsageError);
  CHECK_THROWS_AS(conormal_derivative<1>(u, g, {2, 0, 0, 0}, &u), UsageError);
}

TEST_CASE("space-time tangential norm") {
  const GridSpec g = grid(16, 8, 8);
  const std::vector<double> t{0.0, 0.1, 0.25, 0.5};
  std::vector<Field8> zero(4, Field8::Zero(8, g.npts()));
  CHECK(norm_H1tan(t, zero, zero, g) == 0.0);

  const double c = 0.7;
  std::vector<Field8> cst(4, Field8::Zero(8, g.npts()));
  for (auto& f : cst) f.row(3).setConstant(c);
  const double M = 0.5 * g.L1 * g.L2 * g.L3;
  CHECK(norm_H1tan(t, cst, zero, g) == doctest::Approx(c * std::sqrt(M)).epsilon(1e-12));

  // Smooth field, checked against an independent trapezoid sum of the same discrete derivatives.
  std::vector<Field8> u, du;
  for (double tt : t) {
    Field8 f = Field8::Zero(8, g.npts()), df = Field8::Zero(8, g.npts());
    for (int j = 0; j < g.nx2; ++j)
      for (int k = 0; k < g.nx3; ++k)
        for (int i = 0; i < g.n1p(); ++i) {
          const double x = g.x1_fluid(i), y = g.x2(j), z = g.x3(k);
          f(1, g.point(i, j, k)) = std::exp(-x) * std::sin(y + tt) * std::cos(z);
          df(1, g.point(i, j, k)) = std::exp(-x) * std::cos(y + tt) * std::cos(z);
        }
    u.push_back(f);
    du.push_back(df);
  }
  auto density = [&](const Field8& f, const Field8& df) {
    const Field8 n1 = d1<8>(f, g), t2 = dtan<8>(f, g, 2), t3 = dtan<8>(f, g, 3);
    double s = 0.0;
    for (int j = 0; j < g.nx2; ++j)
      for (int k = 0; k < g.nx3; ++k)
        for (int i = 0; i < g.n1p(); ++i) {
          const int p = g.point(i, j, k);
          const double w = (i == 0 || i == g.nx1 ? 0.5 : 1.0) * g.h1() * g.h2() * g.h3();
          const double sg = conormal_sigma(g.x1_fluid(i));
          s += w * (f.col(p).squaredNorm() + df.col(p).squaredNorm() + sg * sg * n1.col(p).squaredNorm() +
                    t2.col(p).squaredNorm() + t3.col(p).squaredNorm());
        }
    return s;
  };
  double ref = 0.0;
  for (size_t k = 1; k < t.size(); ++k)
    ref += 0.5 * (t[k] - t[k - 1]) * (density(u[k - 1], du[k - 1]) + density(u[k], du[k]));
  CHECK(norm_H1tan(t, u, du, g) == doctest::Approx(std::sqrt(ref)).epsilon(1e-10));

  CHECK_THROWS_AS(norm_H1tan({0.0}, {u[0]}, {du[0]}, g), UsageError);
}

TEST_CASE("weighted energy") {
  const GridSpec g = grid(16, 8, 8);
  const BasicState trivial = BasicState::build(preset_recipe("trivial"), g, EosModel{}, PhysicsParams{});
  LinearPerturbation pert = LinearPerturbation::zero(g);
  CHECK(energy_I(pert, trivial) == 0.0);

  // Unit q pulse on one interior node: measure h1 h2 h3, weight 1/(rho a^2) = 3/5.
  pert.U(fluid::kQ, g.point(5, 3, 2)) = 1.0;
  CHECK(energy_I(pert, trivial) == doctest::Approx(0.6 * g.h1() * g.h2() * g.h3()).epsilon(1e-14));

  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (const std::string& name : preset_names()) {
    const BasicState ring = BasicState::build(preset_recipe(name), g, EosModel{}, PhysicsParams{});
    for (int n = 0; n < 5; ++n) {
      LinearPerturbation r = LinearPerturbation::zero(g);
      for (Eigen::Index m = 0; m < r.U.size(); ++m) r.U.data()[m] = u(rng);
      for (Eigen::Index m = 0; m < r.V.size(); ++m) r.V.data()[m] = u(rng);
      CHECK(energy_I(r, ring) > 0.0);
    }
  }
}

TEST_CASE("interface quadratic form") {
  const GridSpec g = grid(16, 8, 8);
  PhysicsParams par;
  par.sigmaTension = 0.1;
  for (const std::string& name : preset_names()) {
    const BasicState ring = BasicState::build(preset_recipe(name), g, EosModel{}, par);
    LinearPerturbation zero = LinearPerturbation::zero(g);
    const BoundaryForm z = boundary_form_Q(zero, ring);
    CHECK(max_abs(z.Qraw) == 0.0);
    CHECK(max_abs(z.surfFlux) == 0.0);
    CHECK(max_abs(z.muTerm) == 0.0);

    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    LinearPerturbation pert = LinearPerturbation::zero(g);
    for (Eigen::Index m = 0; m < pert.U.size(); ++m) pert.U.data()[m] = u(rng);
    const BoundaryForm q = boundary_form_Q(pert, ring);
    for (int c = 0; c < g.ncols(); ++c) {
      const Vec8 w = pert.U.col(c * g.n1p());
      const Vec3 N = normal_tangents(ring.phi.d2Phi[c], ring.phi.d3Phi[c]).N;
      CHECK(q.Qfluid[c] == doctest::Approx(-2.0 * w[0] * w.segment<3>(1).dot(N)).epsilon(1e-12));
    }
  }
}

TEST_CASE("surface flux integrates to the surface energy") {
  const GridSpec g = grid(8, 16, 8);
  PhysicsParams par;
  par.sigmaTension = 0.1;
  const BasicState ring = BasicState::build(preset_recipe("trivial"), g, EosModel{}, par);
  SurfaceField psi(g.ncols());
  for (int j = 0; j < g.nx2; ++j)
    for (int k = 0; k < g.nx3; ++k)
      psi[g.col(j, k)] = std::sin(2 * std::numbers::pi * g.x2(j) / g.L2) + 0.5 * std::cos(2 * std::numbers::pi * g.x3(k) / g.L3);
  auto amp = [](double t) { return 0.05 * std::sin(3.0 * t); };
  auto damp = [](double t) { return 0.15 * std::cos(3.0 * t); };
  auto surface_energy = [&](double t) {
    const SurfaceField p = amp(t) * psi;
    const SurfaceField a = dsurf(p, g, 2), b = dsurf(p, g, 3);
    return par.sigmaTension * (a.squaredNorm() + b.squaredNorm()) * surface_weight(g);
  };
  const double T = 0.8;
  const int steps = 400;
  double integral = 0.0, prev = 0.0;
  for (int s = 0; s <= steps; ++s) {
    const double t = T * s / steps;
    LinearPerturbation pert = LinearPerturbation::zero(g);
    pert.phi = InterfaceField::from_phi(amp(t) * psi, damp(t) * psi, g);
    const double cur = boundary_form_Q(pert, ring).surfFlux.sum() * surface_weight(g);
    if (s) integral += 0.5 * (T / steps) * (prev + cur);
    prev = cur;
  }
  const double exact = surface_energy(T) - surface_energy(0.0);
  CHECK(integral == doctest::Approx(exact).epsilon(1e-4));
}

TEST_CASE("estimate verifier") {
  GridSpec g = grid(16, 4, 4);
  SolverConfig cfg;
  cfg.grid = g;
  cfg.tEnd = 0.2;
  PhysicsParams par;
  par.sigmaTension = 0.1;
  const BasicState ring = BasicState::build(preset_recipe("trivial"), g, EosModel{}, par);
  const RunArtifact run = run_simulation(cfg, ring, Sources{});
  const Estimate54 e = verify_estimate_54(run);
  CHECK(e.lhs == 0.0);
  CHECK(e.rhs == 0.0);
  CHECK_FALSE(e.violation);

  Estimate54 a, b, bad;
  a.ratio = 0.5;
  b.ratio = 2.0;
  bad.violation = true;
  CHECK(fit_suite_constant({a, b}) == 2.0);
  CHECK(std::isinf(fit_suite_constant({a, bad})));
}
