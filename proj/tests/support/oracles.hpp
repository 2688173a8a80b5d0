#pragma once

// Independent reference evaluations used by the tests. Nothing here calls into the
// library's matrix builders or difference operators.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

namespace oracle {

inline double density(double p, double S, double gamma, double scale = 1.0) {
  return std::pow(p / std::exp(scale * S), 1.0 / gamma);
}

inline double sound_speed(double p, double S, double gamma, double scale = 1.0) {
  return std::sqrt(gamma * p / density(p, S, gamma, scale));
}

// Fluid symmetrizer assembled block by block from its displayed form.
inline Eigen::Matrix<double, 8, 8> fluid_a0(double q, const Eigen::Vector3d& H, double S, double gamma) {
  const double p = q - 0.5 * H.squaredNorm();
  const double rho = density(p, S, gamma);
  const double a = sound_speed(p, S, gamma);
  const double c = 1.0 / (rho * a * a);
  Eigen::Matrix<double, 8, 8> m = Eigen::Matrix<double, 8, 8>::Zero();
  m(0, 0) = c;
  m.block<1, 3>(0, 4) = -c * H.transpose();
  m.block<3, 1>(4, 0) = -c * H;
  m.block<3, 3>(1, 1) = rho * Eigen::Matrix3d::Identity();
  m.block<3, 3>(4, 4) = Eigen::Matrix3d::Identity() + c * H * H.transpose();
  m(7, 7) = 1.0;
  return m;
}

inline Eigen::Matrix<double, 8, 8> fluid_ai(double q, const Eigen::Vector3d& v, const Eigen::Vector3d& H, double S,
                                            double gamma, int i) {
  Eigen::Matrix<double, 8, 8> m = v[i - 1] * fluid_a0(q, H, S, gamma);
  const Eigen::Vector3d e = Eigen::Vector3d::Unit(i - 1);
  m.block<1, 3>(0, 1) += e.transpose();
  m.block<3, 1>(1, 0) += e;
  m.block<3, 3>(1, 4) -= H[i - 1] * Eigen::Matrix3d::Identity();
  m.block<3, 3>(4, 1) -= H[i - 1] * Eigen::Matrix3d::Identity();
  return m;
}

// Cross-product matrix: cross(a) x = a x x.
inline Eigen::Matrix3d cross(const Eigen::Vector3d& a) {
  Eigen::Matrix3d m;
  m << 0, -a[2], a[1], a[2], 0, -a[0], -a[1], a[0], 0;
  return m;
}

// Maxwell flux matrix along axis j written with cross products: (h, E) -> (-e_j x E, e_j x h).
inline Eigen::Matrix<double, 6, 6> maxwell_bj(int j) {
  const Eigen::Matrix3d X = cross(Eigen::Vector3d::Unit(j - 1));
  Eigen::Matrix<double, 6, 6> m = Eigen::Matrix<double, 6, 6>::Zero();
  m.block<3, 3>(0, 3) = X;
  m.block<3, 3>(3, 0) = -X;
  return m;
}

// Cyclic Jacobi rotations. Slow but keeps small eigenvalues of badly scaled matrices
// accurate, since untouched off-diagonal zeros stay exactly zero.
inline Eigen::VectorXd jacobi_eigs(Eigen::MatrixXd a) {
  const Eigen::Index n = a.rows();
  a = 0.5 * (a + a.transpose()).eval();
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (Eigen::Index p = 0; p < n; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q) off = std::max(off, std::abs(a(p, q)) / std::sqrt(std::abs(a(p, p) * a(q, q)) + 1e-300));
    if (off < 1e-17) break;
    for (Eigen::Index p = 0; p < n; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q) {
        if (a(p, q) == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
        for (Eigen::Index k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
      }
  }
  Eigen::VectorXd ev = a.diagonal();
  std::sort(ev.data(), ev.data() + n);
  return ev;
}

inline Eigen::VectorXd sorted_eigs(const Eigen::MatrixXd& M) { return jacobi_eigs(M); }

// Five-point centered derivative of a scalar function.
template <class F>
double fd5(F f, double x, double h) {
  return (f(x - 2 * h) - 8 * f(x - h) + 8 * f(x + h) - f(x + 2 * h)) / (12 * h);
}

inline double log2_ratio(double coarse, double fine) { return std::log2(coarse / fine); }

}  // namespace oracle
