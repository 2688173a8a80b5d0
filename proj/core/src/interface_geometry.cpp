#include "mhdvac/interface_geometry.hpp"

#include <cmath>
#include <sstream>

#include "mhdvac/errors.hpp"

namespace mhdvac {

namespace {

// Steepness of exp(-a/t); 0.6 keeps max|chi'| just under 2 on a transition of width 3/4.
constexpr double kSteep = 0.6;

double bump(double t) { return t > 0.0 ? std::exp(-kSteep / t) : 0.0; }
double bump_derivative(double t) { return t > 0.0 ? kSteep / (t * t) * std::exp(-kSteep / t) : 0.0; }

}  // namespace

double transition(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const double a = bump(t);
  const double b = bump(1.0 - t);
  return a / (a + b);
}

double transition_derivative(double t) {
  if (t <= 0.0 || t >= 1.0) return 0.0;
  const double a = bump(t);
  const double b = bump(1.0 - t);
  const double s = a + b;
  return (bump_derivative(t) * b + a * bump_derivative(1.0 - t)) / (s * s);
}

CutoffValue cutoff_chi(double x1) {
  const double r = std::abs(x1);
  const double t = (r - 0.25) / 0.75;
  const double sgn = x1 < 0.0 ? -1.0 : 1.0;
  return {1.0 - transition(t), -transition_derivative(t) / 0.75 * sgn};
}

InterfaceField InterfaceField::zero(const GridSpec& g) {
  const SurfaceField z = SurfaceField::Zero(g.ncols());
  return {z, z, z, z};
}

InterfaceField InterfaceField::from_phi(const SurfaceField& phi, const SurfaceField& dtPhi, const GridSpec& g) {
  return {phi, dtPhi, dsurf(phi, g, 2), dsurf(phi, g, 3)};
}

LiftDerivatives lift_Phi(const InterfaceField& phi, const GridSpec& g, Side side, double phiMax) {
  for (int c = 0; c < g.ncols(); ++c) {
    if (!(std::abs(phi.phi[c]) <= phiMax)) {
      std::ostringstream os;
      os << "front amplitude " << phi.phi[c] << " exceeds " << phiMax << " at (j,k)=(" << c / g.nx3 << ","
         << c % g.nx3 << ")";
      throw DomainError(os.str());
    }
  }
  const Eigen::Index n = g.npts();
  LiftDerivatives L{Field1(1, n), Field1(1, n), Field1(1, n), Field1(1, n), Field1(1, n), Field1(1, n)};
  for (int c = 0; c < g.ncols(); ++c) {
    for (int i = 0; i < g.n1p(); ++i) {
      const double x1 = side == Side::Plus ? g.x1_fluid(i) : g.x1_vacuum(i);
      const CutoffValue cv = cutoff_chi(x1);
      const Eigen::Index p = static_cast<Eigen::Index>(c) * g.n1p() + i;
      L.chi(0, p) = cv.chi;
      L.dchi(0, p) = cv.dchi;
      L.dt(0, p) = cv.chi * phi.dtPhi[c];
      L.d1(0, p) = 1.0 + cv.dchi * phi.phi[c];
      L.d2(0, p) = cv.chi * phi.d2Phi[c];
      L.d3(0, p) = cv.chi * phi.d3Phi[c];
    }
  }
  return L;
}

NormalTangents normal_tangents(double d2phi, double d3phi) {
  return {Vec3(1.0, -d2phi, -d3phi), Vec3(d2phi, 1.0, 0.0), Vec3(d3phi, 0.0, 1.0)};
}

SurfaceField mean_curvature(const SurfaceField& phi, const GridSpec& g) {
  const SurfaceField g2 = dsurf(phi, g, 2);
  const SurfaceField g3 = dsurf(phi, g, 3);
  SurfaceField f2(phi.size()), f3(phi.size());
  for (Eigen::Index c = 0; c < phi.size(); ++c) {
    const double s = std::sqrt(1.0 + g2[c] * g2[c] + g3[c] * g3[c]);
    f2[c] = g2[c] / s;
    f3[c] = g3[c] / s;
  }
  return dsurf(f2, g, 2) + dsurf(f3, g, 3);
}

Mat2 curvature_matrix(double d2phi, double d3phi) {
  const double n = std::sqrt(1.0 + d2phi * d2phi + d3phi * d3phi);
  const Eigen::Vector2d gp(d2phi, d3phi);
  return Mat2::Identity() / n - gp * gp.transpose() / (n * n * n);
}

CurvatureMatrix curvature_matrix(const InterfaceField& ring) {
  const Eigen::Index n = ring.phi.size();
  CurvatureMatrix B{SurfaceField(n), SurfaceField(n), SurfaceField(n)};
  for (Eigen::Index c = 0; c < n; ++c) {
    const Mat2 m = curvature_matrix(ring.d2Phi[c], ring.d3Phi[c]);
    B.b22[c] = m(0, 0);
    B.b23[c] = m(0, 1);
    B.b33[c] = m(1, 1);
  }
  return B;
}

SurfaceField linearized_curvature(const SurfaceField& phi, const CurvatureMatrix& B, const GridSpec& g) {
  const SurfaceField g2 = dsurf(phi, g, 2);
  const SurfaceField g3 = dsurf(phi, g, 3);
  const SurfaceField f2 = B.b22.cwiseProduct(g2) + B.b23.cwiseProduct(g3);
  const SurfaceField f3 = B.b23.cwiseProduct(g2) + B.b33.cwiseProduct(g3);
  return dsurf(f2, g, 2) + dsurf(f3, g, 3);
}

SurfaceField linearized_curvature(const SurfaceField& phi, const InterfaceField& ring, const GridSpec& g) {
  return linearized_curvature(phi, curvature_matrix(ring), g);
}

}  // namespace mhdvac
