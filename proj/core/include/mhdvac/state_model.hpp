#pragma once

#include <Eigen/Dense>
#include <cmath>

#include "mhdvac/errors.hpp"

namespace mhdvac {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Vec6 = Eigen::Matrix<double, 6, 1>;
using Vec8 = Eigen::Matrix<double, 8, 1>;
using Mat2 = Eigen::Matrix2d;
using Mat6 = Eigen::Matrix<double, 6, 6>;
using Mat8 = Eigen::Matrix<double, 8, 8>;

// Component layout of the fluid unknown.
namespace fluid {
inline constexpr int kQ = 0;
inline constexpr int kV = 1;  // v1..v3 at 1..3
inline constexpr int kH = 4;  // H1..H3 at 4..6
inline constexpr int kS = 7;
inline constexpr int kSize = 8;
}  // namespace fluid

// Component layout of the vacuum unknown.
namespace vacuum {
inline constexpr int kh = 0;  // h1..h3 at 0..2
inline constexpr int kE = 3;  // E1..E3 at 3..5
inline constexpr int kSize = 6;
}  // namespace vacuum

// Polytropic law rho = (p / A(S))^(1/gamma), A(S) = exp(entropyScale * S).
struct EosModel {
  double gamma = 5.0 / 3.0;
  double entropyScale = 1.0;
};

struct EosValue {
  double rho;
  double a;
};

struct FluidState {
  double q = 1.0;
  Vec3 v = Vec3::Zero();
  Vec3 H = Vec3::Zero();
  double S = 0.0;

  double pressure() const { return q - 0.5 * H.squaredNorm(); }
  Vec8 vector() const;
  static FluidState from_vector(const Vec8& u);
};

struct VacuumState {
  Vec3 h = Vec3::Zero();
  Vec3 E = Vec3::Zero();

  Vec6 vector() const;
  static VacuumState from_vector(const Vec6& u);
};

struct PhysicsParams {
  double epsilon = 0.25;
  double sigmaTension = 0.0;

  void validate() const;
};

// Node counts: the fluid slab has nx1+1 nodes on [0, L1], the vacuum slab nx1+1 nodes
// on [-L1, 0]; tangential directions are periodic with nx2 x nx3 nodes.
struct GridSpec {
  int nx1 = 16;
  int nx2 = 16;
  int nx3 = 16;
  double L1 = 4.0;
  double L2 = 4.0;
  double L3 = 4.0;
  double dt = 0.0;  // 0 selects the CFL step

  void validate() const;
  int n1p() const { return nx1 + 1; }
  int ncols() const { return nx2 * nx3; }
  int npts() const { return n1p() * ncols(); }
  double h1() const { return L1 / nx1; }
  double h2() const { return L2 / nx2; }
  double h3() const { return L3 / nx3; }
  double x1_fluid(int i) const { return i * h1(); }
  double x1_vacuum(int i) const { return -L1 + i * h1(); }
  double x2(int j) const { return j * h2(); }
  double x3(int k) const { return k * h3(); }
  int col(int j, int k) const { return j * nx3 + k; }
  int point(int i, int j, int k) const { return col(j, k) * n1p() + i; }
};

// Derivatives of the lifting map Phi at one point: (d_t, d_1, d_2, d_3) Phi.
struct LiftAt {
  double dt = 0.0;
  double d1 = 1.0;
  double d2 = 0.0;
  double d3 = 0.0;
};

EosValue eos_eval(double p, double S, const EosModel& eos);

// Templated form used by the matrix builders (double or dual numbers).
template <class T>
void eos_eval_t(const T& p, const T& S, const EosModel& eos, T& rho, T& a2) {
  using std::exp;
  using std::pow;
  rho = pow(p / exp(S * eos.entropyScale), 1.0 / eos.gamma);
  a2 = eos.gamma * p / rho;
}

bool check_hyperbolicity(const FluidState& U, const EosModel& eos);

}  // namespace mhdvac
