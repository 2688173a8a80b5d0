#pragma once

#include <Eigen/Dense>
#include <array>
#include <string>

#include "mhdvac/dual.hpp"
#include "mhdvac/state_model.hpp"

namespace mhdvac {

// Small dense square matrix over an arbitrary scalar, used by the templated builders.
template <class T, int N>
struct SquareT {
  std::array<T, N * N> a{};
  T& operator()(int i, int j) { return a[i * N + j]; }
  const T& operator()(int i, int j) const { return a[i * N + j]; }
};

namespace detail {

template <class T, int N>
void set_sym(SquareT<T, N>& m, int i, int j, const T& x) {
  m(i, j) = x;
  m(j, i) = x;
}

template <class T, int N>
SquareT<T, N> combine(const SquareT<T, N>& m1, const T& c1, const SquareT<T, N>& m2, const T& c2) {
  SquareT<T, N> r;
  for (int k = 0; k < N * N; ++k) r.a[k] = c1 * m1.a[k] + c2 * m2.a[k];
  return r;
}

}  // namespace detail

// A0(U): the fluid symmetrizer.
template <class T>
SquareT<T, 8> a0_t(const std::array<T, 8>& u, const EosModel& eos) {
  const T h1 = u[4], h2 = u[5], h3 = u[6];
  const T p = u[0] - 0.5 * (h1 * h1 + h2 * h2 + h3 * h3);
  T rho, a2;
  eos_eval_t(p, u[7], eos, rho, a2);
  const T c = 1.0 / (rho * a2);
  const std::array<T, 3> H{h1, h2, h3};
  SquareT<T, 8> m;
  m(0, 0) = c;
  for (int k = 0; k < 3; ++k) {
    detail::set_sym(m, 0, 4 + k, -c * H[k]);
    m(1 + k, 1 + k) = rho;
    for (int l = 0; l < 3; ++l) m(4 + k, 4 + l) = (k == l ? T(1.0) : T(0.0)) + c * (H[k] * H[l]);
  }
  m(7, 7) = 1.0;
  return m;
}

// A_i(U), i = 1..3.
template <class T>
SquareT<T, 8> ai_t(const std::array<T, 8>& u, const EosModel& eos, int i) {
  SquareT<T, 8> m = a0_t(u, eos);
  const T vi = u[i];
  for (auto& x : m.a) x = vi * x;
  const T Hi = u[3 + i];
  detail::set_sym(m, 0, i, T(1.0));
  for (int k = 0; k < 3; ++k) detail::set_sym(m, 1 + k, 4 + k, -Hi);
  return m;
}

// (A_1 - dtPhi A0 - d2Phi A2 - d3Phi A3) / d1Phi.
template <class T>
SquareT<T, 8> a1_lifted_t(const std::array<T, 8>& u, const EosModel& eos, const LiftAt& lift) {
  const SquareT<T, 8> A0 = a0_t(u, eos);
  const SquareT<T, 8> A1 = ai_t(u, eos, 1);
  const SquareT<T, 8> A2 = ai_t(u, eos, 2);
  const SquareT<T, 8> A3 = ai_t(u, eos, 3);
  SquareT<T, 8> m;
  for (int k = 0; k < 64; ++k) {
    m.a[k] = (A1.a[k] - lift.dt * A0.a[k] - lift.d2 * A2.a[k] - lift.d3 * A3.a[k]) / lift.d1;
  }
  return m;
}

// Secondary symmetrizer matrices of the vacuum system, j = 0..3, as printed.
template <class T>
SquareT<T, 6> secondary_t(const std::array<T, 3>& nu, int j) {
  const T n1 = nu[0], n2 = nu[1], n3 = nu[2];
  const T o(1.0), z(0.0);
  std::array<std::array<T, 6>, 6> r;
  switch (j) {
    case 0:
      r = {{{o, z, z, z, n3, -n2},
            {z, o, z, -n3, z, n1},
            {z, z, o, n2, -n1, z},
            {z, -n3, n2, o, z, z},
            {n3, z, -n1, z, o, z},
            {-n2, n1, z, z, z, o}}};
      break;
    case 1:
      r = {{{n1, n2, n3, z, z, z},
            {n2, -n1, z, z, z, -o},
            {n3, z, -n1, z, o, z},
            {z, z, z, n1, n2, n3},
            {z, z, o, n2, -n1, z},
            {z, -o, z, n3, z, -n1}}};
      break;
    case 2:
      r = {{{-n2, n1, z, z, z, o},
            {n1, n2, n3, z, z, z},
            {z, n3, -n2, -o, z, z},
            {z, z, -o, -n2, n1, z},
            {z, z, z, n1, n2, n3},
            {o, z, z, z, n3, -n2}}};
      break;
    default:
      r = {{{-n3, z, n1, z, -o, z},
            {z, -n3, n2, o, z, z},
            {n1, n2, n3, z, z, z},
            {z, o, z, -n3, z, n1},
            {-o, z, z, z, -n3, n2},
            {z, z, z, n1, n2, n3}}};
      break;
  }
  SquareT<T, 6> m;
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) m(a, b) = r[a][b];
  return m;
}

// Lifted normal matrix of the secondary system with nu given directly.
template <class T>
SquareT<T, 6> secondary_lifted_t(const std::array<T, 3>& nu, const LiftAt& lift, double eps) {
  const SquareT<T, 6> B0 = secondary_t(nu, 0);
  const SquareT<T, 6> B1 = secondary_t(nu, 1);
  const SquareT<T, 6> B2 = secondary_t(nu, 2);
  const SquareT<T, 6> B3 = secondary_t(nu, 3);
  SquareT<T, 6> m;
  for (int k = 0; k < 36; ++k) {
    m.a[k] = (B1.a[k] - eps * lift.dt * B0.a[k] - lift.d2 * B2.a[k] - lift.d3 * B3.a[k]) / lift.d1;
  }
  return m;
}

template <int N>
Eigen::Matrix<double, N, N> to_eigen(const SquareT<double, N>& m) {
  Eigen::Matrix<double, N, N> r;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) r(i, j) = m(i, j);
  return r;
}

template <int N>
Eigen::Matrix<double, N, N> dual_part(const SquareT<Dual, N>& m) {
  Eigen::Matrix<double, N, N> r;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) r(i, j) = m(i, j).d;
  return r;
}

struct Inertia {
  int nNeg = 0;
  int nZero = 0;
  int nPos = 0;
  double zeroTol = 0.0;
};

// Eigenvalues of the closed-form Maxwell boundary matrix, ascending.
struct MaxwellBoundary {
  Mat6 B;
  std::array<double, 6> eigs;
};

// Interface data at one point needed by the boundary builders.
struct FrontPoint {
  double dtPhi = 0.0;
  double d2Phi = 0.0;
  double d3Phi = 0.0;
};

Mat8 build_A0(const FluidState& U, const EosModel& eos);
Mat8 build_Ai(const FluidState& U, const EosModel& eos, int i);
Mat8 build_boundary_fluid(const FluidState& U, const EosModel& eos, const LiftAt& lift);
Mat6 build_Bj(int j);
MaxwellBoundary build_boundary_maxwell(const FrontPoint& phi, double eps);
Mat6 build_secondary_symmetrizer(const Vec3& nu, int j);
Mat6 build_secondary_boundary(const Vec3& vMinus, const LiftAt& lift, double eps);

// Directional derivatives d/dtheta M(U + theta dU) at theta = 0.
Mat8 dA0(const FluidState& U, const Vec8& dU, const EosModel& eos);
Mat8 dAi(const FluidState& U, const Vec8& dU, const EosModel& eos, int i);
Mat8 dA1_lifted(const FluidState& U, const Vec8& dU, const EosModel& eos, const LiftAt& lift);

// Default zero threshold: 1e-8 times the spectral radius.
Inertia inertia(const Eigen::MatrixXd& M, double zeroTol = -1.0);
Eigen::VectorXd symmetric_eigenvalues(const Eigen::MatrixXd& M);
bool is_exactly_symmetric(const Eigen::MatrixXd& M);

// Row-major CSV with 17 significant digits.
std::string matrix_csv(const Eigen::MatrixXd& M);

inline std::array<double, 8> as_array(const Vec8& u) {
  std::array<double, 8> r;
  for (int k = 0; k < 8; ++k) r[k] = u[k];
  return r;
}

}  // namespace mhdvac
