#pragma once

#include <Eigen/Dense>

#include "mhdvac/state_model.hpp"

namespace mhdvac {

// Point-major field: column p holds the C components at grid point p.
// Points are ordered column by column: p = (j * nx3 + k) * (nx1 + 1) + i.
template <int C>
using Field = Eigen::Matrix<double, C, Eigen::Dynamic>;
using Field1 = Field<1>;
using Field3 = Field<3>;
using Field6 = Field<6>;
using Field8 = Field<8>;

// Scalar field on the tangential grid, indexed by GridSpec::col(j, k).
using SurfaceField = Eigen::VectorXd;

namespace sbp {

// Diagonal-norm first-derivative operator with 4th-order interior and 2nd-order
// boundary closure. Norm weights of the first four nodes (times h).
inline constexpr double kNorm[4] = {17.0 / 48.0, 59.0 / 48.0, 43.0 / 48.0, 49.0 / 48.0};

inline constexpr double kRows[4][6] = {
    {-24.0 / 17.0, 59.0 / 34.0, -4.0 / 17.0, -3.0 / 34.0, 0.0, 0.0},
    {-1.0 / 2.0, 0.0, 1.0 / 2.0, 0.0, 0.0, 0.0},
    {4.0 / 43.0, -59.0 / 86.0, 0.0, 59.0 / 86.0, -4.0 / 43.0, 0.0},
    {3.0 / 98.0, 0.0, -59.0 / 98.0, 0.0, 32.0 / 49.0, -4.0 / 49.0}};

inline constexpr double kInterior[5] = {1.0 / 12.0, -2.0 / 3.0, 0.0, 2.0 / 3.0, -1.0 / 12.0};

// Norm weight H_ii / h for node i of n nodes (n >= 8).
inline double norm_weight(int i, int n) {
  if (i < 4) return kNorm[i];
  if (i >= n - 4) return kNorm[n - 1 - i];
  return 1.0;
}

// Derivative of a column of n nodes with C interleaved components, any scalar S.
template <int C, class S>
void d1_column(const S* u, S* out, int n, double invh) {
  for (int i = 0; i < n; ++i) {
    for (int c = 0; c < C; ++c) out[i * C + c] = S(0.0);
  }
  for (int r = 0; r < 4; ++r) {
    for (int m = 0; m < 6; ++m) {
      const double wl = kRows[r][m] * invh;
      if (wl == 0.0) continue;
      for (int c = 0; c < C; ++c) {
        out[r * C + c] += wl * u[m * C + c];
        out[(n - 1 - r) * C + c] -= wl * u[(n - 1 - m) * C + c];
      }
    }
  }
  for (int i = 4; i < n - 4; ++i) {
    for (int c = 0; c < C; ++c) {
      out[i * C + c] = invh * (kInterior[0] * u[(i - 2) * C + c] + kInterior[1] * u[(i - 1) * C + c] +
                               kInterior[3] * u[(i + 1) * C + c] + kInterior[4] * u[(i + 2) * C + c]);
    }
  }
}

// Dense n x n operator (tests and small problems).
Eigen::MatrixXd d1_matrix(int n, double h);
Eigen::VectorXd norm_diagonal(int n, double h);

}  // namespace sbp

// Normal derivative of a field on either slab (both use the same uniform node spacing).
template <int C>
Field<C> d1(const Field<C>& f, const GridSpec& g) {
  Field<C> out(C, f.cols());
  const int n = g.n1p();
  const double invh = 1.0 / g.h1();
  for (int col = 0; col < g.ncols(); ++col) {
    sbp::d1_column<C>(f.data() + static_cast<Eigen::Index>(col) * n * C,
                      out.data() + static_cast<Eigen::Index>(col) * n * C, n, invh);
  }
  return out;
}

// Centered periodic difference along x2 (axis 2) or x3 (axis 3).
template <int C>
Field<C> dtan(const Field<C>& f, const GridSpec& g, int axis) {
  Field<C> out(C, f.cols());
  const int n = g.n1p();
  const double inv2h = axis == 2 ? 0.5 / g.h2() : 0.5 / g.h3();
  for (int j = 0; j < g.nx2; ++j) {
    for (int k = 0; k < g.nx3; ++k) {
      int cp, cm;
      if (axis == 2) {
        cp = g.col((j + 1) % g.nx2, k);
        cm = g.col((j + g.nx2 - 1) % g.nx2, k);
      } else {
        cp = g.col(j, (k + 1) % g.nx3);
        cm = g.col(j, (k + g.nx3 - 1) % g.nx3);
      }
      const int c0 = g.col(j, k);
      out.middleCols(static_cast<Eigen::Index>(c0) * n, n) =
          inv2h * (f.middleCols(static_cast<Eigen::Index>(cp) * n, n) -
                   f.middleCols(static_cast<Eigen::Index>(cm) * n, n));
    }
  }
  return out;
}

// Same stencils on the tangential grid.
SurfaceField dsurf(const SurfaceField& f, const GridSpec& g, int axis);

// Trapezoid weight of normal node i (x1 spacing included).
inline double trapezoid_weight(int i, const GridSpec& g) {
  return (i == 0 || i == g.nx1) ? 0.5 * g.h1() : g.h1();
}

// Area element of one tangential cell.
inline double surface_weight(const GridSpec& g) { return g.h2() * g.h3(); }

// Trace at x1 = 0 of a fluid field (node i = 0) or vacuum field (node i = nx1).
template <int C>
Field<C> fluid_trace(const Field<C>& f, const GridSpec& g) {
  Field<C> out(C, g.ncols());
  for (int c = 0; c < g.ncols(); ++c) out.col(c) = f.col(static_cast<Eigen::Index>(c) * g.n1p());
  return out;
}

template <int C>
Field<C> vacuum_trace(const Field<C>& f, const GridSpec& g) {
  Field<C> out(C, g.ncols());
  for (int c = 0; c < g.ncols(); ++c)
    out.col(c) = f.col(static_cast<Eigen::Index>(c) * g.n1p() + g.nx1);
  return out;
}

// Mirror a fluid-grid field onto the vacuum grid: out(-x1, x') = in(x1, x').
template <int C>
Field<C> mirror_to_vacuum(const Field<C>& f, const GridSpec& g) {
  Field<C> out(C, f.cols());
  const int n = g.n1p();
  for (int c = 0; c < g.ncols(); ++c)
    for (int i = 0; i < n; ++i)
      out.col(static_cast<Eigen::Index>(c) * n + i) = f.col(static_cast<Eigen::Index>(c) * n + (n - 1 - i));
  return out;
}

}  // namespace mhdvac
