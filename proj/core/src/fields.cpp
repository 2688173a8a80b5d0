#include "mhdvac/fields.hpp"

namespace mhdvac {

namespace sbp {

Eigen::MatrixXd d1_matrix(int n, double h) {
  Eigen::MatrixXd D(n, n);
  Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd col(n);
  for (int m = 0; m < n; ++m) {
    e.setZero();
    e[m] = 1.0;
    d1_column<1>(e.data(), col.data(), n, 1.0 / h);
    D.col(m) = col;
  }
  return D;
}

Eigen::VectorXd norm_diagonal(int n, double h) {
  Eigen::VectorXd w(n);
  for (int i = 0; i < n; ++i) w[i] = h * norm_weight(i, n);
  return w;
}

}  // namespace sbp

SurfaceField dsurf(const SurfaceField& f, const GridSpec& g, int axis) {
  SurfaceField out(f.size());
  const double inv2h = axis == 2 ? 0.5 / g.h2() : 0.5 / g.h3();
  for (int j = 0; j < g.nx2; ++j) {
    for (int k = 0; k < g.nx3; ++k) {
      const int cp = axis == 2 ? g.col((j + 1) % g.nx2, k) : g.col(j, (k + 1) % g.nx3);
      const int cm = axis == 2 ? g.col((j + g.nx2 - 1) % g.nx2, k) : g.col(j, (k + g.nx3 - 1) % g.nx3);
      out[g.col(j, k)] = inv2h * (f[cp] - f[cm]);
    }
  }
  return out;
}

}  // namespace mhdvac
