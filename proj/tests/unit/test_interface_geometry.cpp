#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "mhdvac/interface_geometry.hpp"
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

SurfaceField sample(const GridSpec& g, auto f) {
  SurfaceField s(g.ncols());
  for (int j = 0; j < g.nx2; ++j)
    for (int k = 0; k < g.nx3; ++k) s[g.col(j, k)] = f(g.x2(j), g.x3(k));
  return s;
}

}  // namespace

TEST_CASE("cutoff plateau, support and derivative") {
  auto c0 = cutoff_chi(0.0);
  CHECK(c0.chi == 1.0);
  CHECK(c0.dchi == 0.0);
  for (double x : {1.0, -1.0, 1.5, -3.0}) {
    const auto c = cutoff_chi(x);
    CHECK(c.chi == 0.0);
    CHECK(c.dchi == 0.0);
  }
  const auto c = cutoff_chi(0.6);
  CHECK(c.chi > 0.0);
  CHECK(c.chi < 1.0);
  CHECK(c.dchi < 0.0);
  const double fd = oracle::fd5([](double x) { return cutoff_chi(x).chi; }, 0.6, 1e-3);
  CHECK(c.dchi == doctest::Approx(fd).epsilon(1e-8));
  // Even in x1.
  CHECK(cutoff_chi(-0.6).chi == doctest::Approx(c.chi));
  CHECK(cutoff_chi(-0.6).dchi == doctest::Approx(-c.dchi));
}

TEST_CASE("transition primitive") {
  CHECK(transition(0.0) == 0.0);
  CHECK(transition(1.0) == 1.0);
  CHECK(transition(0.5) == doctest::Approx(0.5));
  for (double t : {0.1, 0.3, 0.7, 0.9}) {
    CHECK(transition_derivative(t) > 0.0);
    CHECK(transition_derivative(t) == doctest::Approx(oracle::fd5(transition, t, 1e-3)).epsilon(1e-7));
  }
}

TEST_CASE("lift of a flat front is the identity") {
  const GridSpec g = grid(16, 8, 4);
  const InterfaceField z = InterfaceField::zero(g);
  for (Side side : {Side::Plus, Side::Minus}) {
    const LiftDerivatives L = lift_Phi(z, g, side);
    CHECK(L.d1.minCoeff() == 1.0);
    CHECK(L.d1.maxCoeff() == 1.0);
    CHECK(L.dt.cwiseAbs().maxCoeff() == 0.0);
    CHECK(L.d2.cwiseAbs().maxCoeff() == 0.0);
    CHECK(L.d3.cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("lift outside the cutoff support and with a constant front") {
  const GridSpec g = grid(32, 8, 4);
  const SurfaceField wave = sample(g, [](double x2, double x3) { return 0.2 * std::sin(x2) * std::cos(x3); });
  const InterfaceField phi = InterfaceField::from_phi(wave, SurfaceField::Zero(g.ncols()), g);
  const LiftDerivatives L = lift_Phi(phi, g, Side::Plus);
  for (int c = 0; c < g.ncols(); ++c)
    for (int i = 0; i < g.n1p(); ++i)
      if (g.x1_fluid(i) >= 1.0) CHECK(L.d1(0, c * g.n1p() + i) == 1.0);

  const SurfaceField cst = SurfaceField::Constant(g.ncols(), 0.2);
  const InterfaceField pc = InterfaceField::from_phi(cst, SurfaceField::Zero(g.ncols()), g);
  for (Side side : {Side::Plus, Side::Minus}) {
    const LiftDerivatives Lc = lift_Phi(pc, g, side);
    for (int c = 0; c < g.ncols(); ++c)
      for (int i = 0; i < g.n1p(); ++i) {
        const double x = side == Side::Plus ? g.x1_fluid(i) : g.x1_vacuum(i);
        CHECK(Lc.d1(0, c * g.n1p() + i) == doctest::Approx(1.0 + 0.2 * cutoff_chi(x).dchi).epsilon(1e-14));
      }
    CHECK(Lc.d1.minCoeff() >= 0.5);
  }

  const SurfaceField big = SurfaceField::Constant(g.ncols(), 0.3);
  CHECK_THROWS_AS(lift_Phi(InterfaceField::from_phi(big, SurfaceField::Zero(g.ncols()), g), g, Side::Plus),
                  DomainError);
}

TEST_CASE("normal and tangents") {
  NormalTangents t = normal_tangents(0.0, 0.0);
  CHECK(t.N == Vec3(1, 0, 0));
  CHECK(t.tau2 == Vec3(0, 1, 0));
  CHECK(t.tau3 == Vec3(0, 0, 1));

  t = normal_tangents(0.75, 0.0);
  CHECK((t.N - Vec3(1.0, -0.75, 0.0)).norm() < 1e-15);
  CHECK((t.tau2 - Vec3(0.75, 1.0, 0.0)).norm() < 1e-15);
  CHECK(t.N.dot(t.tau2) == 0.0);

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int n = 0; n < 200; ++n) {
    const NormalTangents r = normal_tangents(u(rng), u(rng));
    CHECK(std::abs(r.N.dot(r.tau2)) < 1e-13);
    CHECK(std::abs(r.N.dot(r.tau3)) < 1e-13);
  }
}

TEST_CASE("mean curvature") {
  const GridSpec g = grid(8, 16, 16);
  CHECK(mean_curvature(SurfaceField::Zero(g.ncols()), g).cwiseAbs().maxCoeff() == 0.0);

  // (x2^2 + x3^2)/2 around the centre: the value there tends to 2.
  double prev = 1e9;
  for (int n : {16, 32, 64}) {
    const GridSpec gn = grid(8, n, n);
    const SurfaceField bowl = sample(gn, [](double x2, double x3) {
      return 0.5 * ((x2 - 2.0) * (x2 - 2.0) + (x3 - 2.0) * (x3 - 2.0));
    });
    const double err = std::abs(mean_curvature(bowl, gn)[gn.col(n / 2, n / 2)] - 2.0);
    CHECK(err < prev);
    prev = err;
  }
  CHECK(prev < 1e-2);
}

TEST_CASE("mean curvature of a linear front vanishes") {
  // A sloped plane is not periodic; only nodes away from the seam are checked.
  GridSpec g = grid(8, 32, 4);
  const SurfaceField lin = sample(g, [](double x2, double) { return 0.3 * x2; });
  const SurfaceField H = mean_curvature(lin, g);
  for (int j = 2; j < g.nx2 - 2; ++j)
    for (int k = 0; k < g.nx3; ++k) CHECK(std::abs(H[g.col(j, k)]) < 1e-12);
}

TEST_CASE("curvature matrix") {
  CHECK((curvature_matrix(0.0, 0.0) - Mat2::Identity()).norm() == 0.0);
  const Mat2 B = curvature_matrix(0.75, 0.0);
  // Closed form (I - g g^T / |N|^2) / |N| with |N| = 5/4.
  CHECK(B(0, 0) == doctest::Approx(0.512).epsilon(1e-14));
  CHECK(B(1, 1) == doctest::Approx(0.8).epsilon(1e-14));
  CHECK(B(0, 1) == 0.0);

  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int n = 0; n < 200; ++n) {
    Vec2 gr(u(rng), u(rng));
    gr *= 10.0 * std::abs(u(rng)) / gr.norm();
    const Mat2 Bn = curvature_matrix(gr[0], gr[1]);
    const double s = std::sqrt(1.0 + gr.squaredNorm());
    const Mat2 ref = (Mat2::Identity() - gr * gr.transpose() / (s * s)) / s;
    CHECK((Bn - ref).cwiseAbs().maxCoeff() < 1e-14);
    CHECK(oracle::sorted_eigs(Bn)[0] > 0.0);
  }
}

TEST_CASE("linearized curvature") {
  const GridSpec g = grid(8, 16, 16);
  const double k2 = 2.0 * std::numbers::pi / g.L2, k3 = 2.0 * std::numbers::pi / g.L3;
  const SurfaceField phi = sample(g, [&](double x2, double x3) { return std::sin(k2 * x2) * std::cos(2 * k3 * x3); });

  const InterfaceField flat = InterfaceField::zero(g);
  const SurfaceField lap = dsurf(dsurf(phi, g, 2), g, 2) + dsurf(dsurf(phi, g, 3), g, 3);
  CHECK((linearized_curvature(phi, flat, g) - lap).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(linearized_curvature(SurfaceField::Constant(g.ncols(), 0.3), flat, g).cwiseAbs().maxCoeff() < 1e-14);

  const SurfaceField ringPhi = sample(g, [&](double x2, double x3) { return 0.2 * std::cos(k2 * x2 + k3 * x3); });
  const InterfaceField ring = InterfaceField::from_phi(ringPhi, SurfaceField::Zero(g.ncols()), g);
  const SurfaceField lin = linearized_curvature(phi, ring, g);
  const SurfaceField base = mean_curvature(ringPhi, g);
  std::vector<double> err;
  for (double th : {1e-2, 1e-3, 1e-4}) {
    const SurfaceField dd = (mean_curvature(ringPhi + th * phi, g) - base) / th;
    err.push_back((dd - lin).cwiseAbs().maxCoeff());
  }
  CHECK(std::log10(err[0] / err[1]) > 0.9);
  CHECK(std::log10(err[1] / err[2]) > 0.9);
}
