#include <cmath>
#include <numbers>

#include "doctest.h"
#include "mhdvac/fields.hpp"
#include "oracles.hpp"

using namespace mhdvac;

TEST_CASE("summation by parts") {
  for (int n : {9, 17, 33}) {
    const double h = 0.3;
    const Eigen::MatrixXd D = sbp::d1_matrix(n, h);
    const Eigen::VectorXd w = sbp::norm_diagonal(n, h);
    const Eigen::MatrixXd Q = w.asDiagonal() * D;
    Eigen::MatrixXd B = Eigen::MatrixXd::Zero(n, n);
    B(0, 0) = -1.0;
    B(n - 1, n - 1) = 1.0;
    CHECK((Q + Q.transpose() - B).cwiseAbs().maxCoeff() < 1e-14);
    CHECK(w.minCoeff() > 0.0);
    CHECK(w.sum() == doctest::Approx(h * (n - 1)).epsilon(1e-14));
  }
}

TEST_CASE("polynomial exactness") {
  const int n = 21;
  const double h = 0.1;
  const Eigen::MatrixXd D = sbp::d1_matrix(n, h);
  for (int deg = 0; deg <= 4; ++deg) {
    Eigen::VectorXd u(n), du(n);
    for (int i = 0; i < n; ++i) {
      const double x = i * h;
      u[i] = std::pow(x, deg);
      du[i] = deg ? deg * std::pow(x, deg - 1) : 0.0;
    }
    const Eigen::VectorXd e = D * u - du;
    // Boundary closure is exact to degree 2, the interior stencil to degree 4.
    const double boundaryErr = std::max(e.head(4).cwiseAbs().maxCoeff(), e.tail(4).cwiseAbs().maxCoeff());
    const double interiorErr = e.segment(4, n - 8).cwiseAbs().maxCoeff();
    if (deg <= 2) CHECK(boundaryErr < 1e-11);
    CHECK(interiorErr < 1e-10);
  }
}

TEST_CASE("field derivatives agree with the dense operator") {
  GridSpec g;
  g.nx1 = 12;
  g.nx2 = 4;
  g.nx3 = 5;
  Field<2> f = Field<2>::Random(2, g.npts());
  const Field<2> d = d1<2>(f, g);
  const Eigen::MatrixXd D = sbp::d1_matrix(g.n1p(), g.h1());
  for (int c = 0; c < g.ncols(); ++c)
    for (int m = 0; m < 2; ++m) {
      Eigen::VectorXd col(g.n1p());
      for (int i = 0; i < g.n1p(); ++i) col[i] = f(m, c * g.n1p() + i);
      const Eigen::VectorXd ref = D * col;
      for (int i = 0; i < g.n1p(); ++i) CHECK(d(m, c * g.n1p() + i) == doctest::Approx(ref[i]).epsilon(1e-13));
    }
}

TEST_CASE("tangential differences") {
  GridSpec g;
  g.nx1 = 8;
  g.nx2 = 16;
  g.nx3 = 8;
  const double k2 = 2.0 * std::numbers::pi / g.L2, k3 = 2.0 * std::numbers::pi / g.L3;
  Field1 f(1, g.npts());
  for (int j = 0; j < g.nx2; ++j)
    for (int k = 0; k < g.nx3; ++k)
      for (int i = 0; i < g.n1p(); ++i) f(0, g.point(i, j, k)) = std::sin(k2 * g.x2(j)) * std::cos(k3 * g.x3(k));
  const Field1 d2 = dtan<1>(f, g, 2), d3 = dtan<1>(f, g, 3);
  const double s2 = std::sin(k2 * g.h2()) / g.h2(), s3 = std::sin(k3 * g.h3()) / g.h3();
  for (int j = 0; j < g.nx2; ++j)
    for (int k = 0; k < g.nx3; ++k) {
      const int p = g.point(3, j, k);
      CHECK(d2(0, p) == doctest::Approx(s2 * std::cos(k2 * g.x2(j)) * std::cos(k3 * g.x3(k))).epsilon(1e-12));
      CHECK(d3(0, p) == doctest::Approx(-s3 * std::sin(k2 * g.x2(j)) * std::sin(k3 * g.x3(k))).epsilon(1e-12));
    }
  SurfaceField s(g.ncols());
  for (int j = 0; j < g.nx2; ++j)
    for (int k = 0; k < g.nx3; ++k) s[g.col(j, k)] = f(0, g.point(0, j, k));
  const SurfaceField ds = dsurf(s, g, 2);
  for (int c = 0; c < g.ncols(); ++c) CHECK(ds[c] == doctest::Approx(d2(0, c * g.n1p())).epsilon(1e-14));
}

TEST_CASE("traces and mirror") {
  GridSpec g;
  g.nx1 = 8;
  g.nx2 = 4;
  g.nx3 = 4;
  Field1 f(1, g.npts());
  for (int p = 0; p < g.npts(); ++p) f(0, p) = p;
  const Field1 tf = fluid_trace<1>(f, g), tv = vacuum_trace<1>(f, g);
  const Field1 m = mirror_to_vacuum<1>(f, g);
  for (int c = 0; c < g.ncols(); ++c) {
    CHECK(tf(0, c) == c * g.n1p());
    CHECK(tv(0, c) == c * g.n1p() + g.nx1);
    CHECK(m(0, c * g.n1p()) == f(0, c * g.n1p() + g.nx1));
  }
  double sum = 0.0;
  for (int i = 0; i <= g.nx1; ++i) sum += trapezoid_weight(i, g);
  CHECK(sum == doctest::Approx(g.L1));
}
