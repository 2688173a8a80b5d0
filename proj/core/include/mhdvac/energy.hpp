#pragma once

#include <array>
#include <vector>

#include "mhdvac/basic_state.hpp"
#include "mhdvac/errors.hpp"
#include "mhdvac/operators.hpp"
#include "mhdvac/solver.hpp"

namespace mhdvac {

// Conormal weight: sigma = x1 on [0, 1/2], sigma = 1 beyond 3/2, increasing in between.
double conormal_sigma(double x1);
double conormal_sigma_derivative(double x1);

// d_t^a0 (sigma d1)^a1 d2^a2 d3^a3 u. The time derivative is taken from dtU (one level only).
template <int C>
Field<C> conormal_derivative(const Field<C>& u, const GridSpec& g, const std::array<int, 4>& alpha,
                             const Field<C>* dtU = nullptr) {
  if (alpha[0] > 1 || (alpha[0] == 1 && dtU == nullptr)) {
    throw UsageError("conormal_derivative: time derivative order exceeds the stored history");
  }
  Field<C> r = alpha[0] == 1 ? *dtU : u;
  for (int a = 0; a < alpha[1]; ++a) {
    r = d1<C>(r, g);
    for (int c = 0; c < g.ncols(); ++c)
      for (int i = 0; i < g.n1p(); ++i)
        r.col(static_cast<Eigen::Index>(c) * g.n1p() + i) *= conormal_sigma(g.x1_fluid(i));
  }
  for (int a = 0; a < alpha[2]; ++a) r = dtan<C>(r, g, 2);
  for (int a = 0; a < alpha[3]; ++a) r = dtan<C>(r, g, 3);
  return r;
}

// Trapezoid integral over one slab of a pointwise nonnegative density.
double slab_integral(const Field1& density, const GridSpec& g);

template <int C>
double slab_sq(const Field<C>& u, const GridSpec& g) {
  return slab_integral(u.colwise().squaredNorm(), g);
}

// sum over |alpha| <= 1 of ||D_tan^alpha u||^2 on the fluid slab at one time.
template <int C>
double h1tan_density(const Field<C>& u, const Field<C>& dtU, const GridSpec& g) {
  double s = slab_sq<C>(u, g) + slab_sq<C>(dtU, g);
  s += slab_sq<C>(conormal_derivative<C>(u, g, {0, 1, 0, 0}), g);
  s += slab_sq<C>(dtan<C>(u, g, 2), g) + slab_sq<C>(dtan<C>(u, g, 3), g);
  return s;
}

// Same with the plain normal derivative (vacuum slab, full H1).
double h1_density_vacuum(const Field6& V, const Field6& dtV, const GridSpec& g);

// ||phi||_{H1}^2 + ||grad' phi||_{H1}^2 on the tangential grid at one time.
double front_density(const InterfaceField& phi, const GridSpec& g);

// Space-time H1_tan norm from snapshots at the given times (trapezoid in t).
double norm_H1tan(const std::vector<double>& times, const std::vector<Field8>& u, const std::vector<Field8>& dtU,
                  const GridSpec& g);

struct EnergyParts {
  double fluid = 0.0;
  double vacuum = 0.0;
};

EnergyParts energy_parts(const Field8& U, const Field6& V, const BasicState& ring);
double energy_I(const LinearPerturbation& pert, const BasicState& ring);

struct EnergyReport {
  double I = 0.0;
  double Ifluid = 0.0;
  double Ivac = 0.0;
  std::array<double, 3> Iell{};  // time, x2, x3 derivatives
  double surfTerm = 0.0;
  double Qbnd = 0.0;
  SurfaceField mu;
};

EnergyReport energy_report(const LinearPerturbation& pert, const BasicState& ring);

struct BoundaryForm {
  SurfaceField Qraw;
  SurfaceField Qfluid;  // -A1t U.U
  SurfaceField Qvac;    // B1t V.V / eps
  SurfaceField surfFlux;
  SurfaceField muTerm;
  SurfaceField tanFlux;
  SurfaceField lower;
  double mismatch = 0.0;  // integral of the remainder over the interface
};

BoundaryForm boundary_form_Q(const LinearPerturbation& pert, const BasicState& ring);

struct Estimate54 {
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
  bool violation = false;
};

Estimate54 verify_estimate_54(const RunArtifact& run, double tol = 1e-12);

// Smallest constant C with lhs <= C rhs over a family of runs.
double fit_suite_constant(const std::vector<Estimate54>& runs);

}  // namespace mhdvac
