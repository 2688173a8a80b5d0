#pragma once

#include <vector>

#include "mhdvac/fields.hpp"
#include "mhdvac/state_model.hpp"

namespace mhdvac {

// Largest admissible |phi|; with max|chi'| <= 2 it keeps d1Phi >= 1/2.
inline constexpr double kPhiMax = 0.25;

// Smooth monotone step on [0, 1]: 0 for t <= 0, 1 for t >= 1, flat to all orders at both ends.
double transition(double t);
double transition_derivative(double t);

struct CutoffValue {
  double chi;
  double dchi;
};

// chi = 1 on |x1| <= 1/4, chi = 0 on |x1| >= 1.
CutoffValue cutoff_chi(double x1);

// Front phi(x') with its time derivative and centered tangential gradient.
struct InterfaceField {
  SurfaceField phi;
  SurfaceField dtPhi;
  SurfaceField d2Phi;
  SurfaceField d3Phi;

  static InterfaceField zero(const GridSpec& g);
  // Gradient from the centered periodic differences of phi.
  static InterfaceField from_phi(const SurfaceField& phi, const SurfaceField& dtPhi, const GridSpec& g);
};

enum class Side { Plus, Minus };

// Derivatives of Phi = x1 + chi(x1) phi(t, x') at every node of one slab.
struct LiftDerivatives {
  Field1 dt;
  Field1 d1;
  Field1 d2;
  Field1 d3;
  // chi and chi' per node, kept for the Psi = chi phi terms.
  Field1 chi;
  Field1 dchi;

  LiftAt at(Eigen::Index p) const { return {dt(0, p), d1(0, p), d2(0, p), d3(0, p)}; }
};

LiftDerivatives lift_Phi(const InterfaceField& phi, const GridSpec& g, Side side, double phiMax = kPhiMax);

struct NormalTangents {
  Vec3 N;
  Vec3 tau2;
  Vec3 tau3;
};

NormalTangents normal_tangents(double d2phi, double d3phi);

// Twice the mean curvature: div'(grad' phi / sqrt(1 + |grad' phi|^2)), centered differences.
SurfaceField mean_curvature(const SurfaceField& phi, const GridSpec& g);

Mat2 curvature_matrix(double d2phi, double d3phi);

struct CurvatureMatrix {
  SurfaceField b22;
  SurfaceField b23;
  SurfaceField b33;

  Mat2 at(Eigen::Index c) const {
    Mat2 m;
    m << b22[c], b23[c], b23[c], b33[c];
    return m;
  }
};

CurvatureMatrix curvature_matrix(const InterfaceField& ring);

// div'(B grad' phi) with B from the ring front; exact derivative of mean_curvature.
SurfaceField linearized_curvature(const SurfaceField& phi, const InterfaceField& ring, const GridSpec& g);
SurfaceField linearized_curvature(const SurfaceField& phi, const CurvatureMatrix& B, const GridSpec& g);

}  // namespace mhdvac
