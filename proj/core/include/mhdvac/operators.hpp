#pragma once

#include <string>

#include "mhdvac/basic_state.hpp"
#include "mhdvac/fields.hpp"
#include "mhdvac/interface_geometry.hpp"

namespace mhdvac {

using Field4 = Field<4>;
using Mat63 = Eigen::Matrix<double, 6, 3>;

// Good unknowns (U', V', phi) of the linearized problem plus the fluid source.
struct LinearPerturbation {
  Field8 U;
  Field8 dtU;
  Field6 V;
  Field6 dtV;
  InterfaceField phi;
  Field8 f;

  static LinearPerturbation zero(const GridSpec& g);
};

struct ConstraintReport {
  Field1 divFluid;
  Field1 divVacH;
  Field1 divVacE;
  SurfaceField traceHN;
  SurfaceField tracehN;
  double maxDivFluid = 0.0;
  double maxDivVacH = 0.0;
  double maxDivVacE = 0.0;
  double maxTraceHN = 0.0;
  double maxTracehN = 0.0;

  std::string to_json() const;
};

// Nonlinear interior residuals on the lifted slabs. dtU / dtV are the time derivatives.
Field8 residual_fluid_nonlinear(const Field8& U, const Field8& dtU, const InterfaceField& phi, const GridSpec& g,
                                const EosModel& eos);
Field6 residual_vacuum_secondary(const Field6& V, const Field6& dtV, const Field3& vMinus,
                                 const InterfaceField& phi, const GridSpec& g, double eps);
Field6 residual_vacuum_plain(const Field6& V, const Field6& dtV, const InterfaceField& phi, const GridSpec& g,
                             double eps);

// The four interface rows: kinematic, two tangential electric jumps, normal stress balance.
// Uface / Vface are the traces (one column per tangential point).
Field4 residual_boundary_nonlinear(const Field8& Uface, const Field6& Vface, const InterfaceField& phi,
                                   const GridSpec& g, const PhysicsParams& params);

struct GoodUnknowns {
  Field8 U;
  Field6 V;
};

GoodUnknowns good_unknowns(const Field8& Uraw, const Field6& Vraw, const InterfaceField& phi,
                           const BasicState& ring);
GoodUnknowns raw_from_good(const Field8& Udot, const Field6& Vdot, const InterfaceField& phi,
                           const BasicState& ring);

// Zero-order coefficients of the exact linearization at point p.
Mat8 c_plus_matrix(const BasicState& ring, Eigen::Index p);
Mat63 c_minus_matrix(const BasicState& ring, Eigen::Index p);
Field8 apply_C_plus(const BasicState& ring, const Field8& U);
Field6 apply_C_minus(const BasicState& ring, const Field3& vMinus);
// Same zero-order term from divided differences of the matrices with step theta.
Field8 apply_C_plus_fd(const BasicState& ring, const Field8& U, double theta);
Field6 apply_C_minus_fd(const BasicState& ring, const Field3& vMinus, double theta);

struct InteriorResidual {
  Field8 fluid;
  Field6 vacuum;
};

InteriorResidual linearized_interior(const LinearPerturbation& pert, const BasicState& ring);

// Linearization in raw unknowns: L U + C U - (L Psi) d1 ring / d1 Phi.
Field8 linearized_fluid_raw(const Field8& U, const Field8& dtU, const InterfaceField& phi, const BasicState& ring);
Field6 linearized_vacuum_raw(const Field6& V, const Field6& dtV, const Field3& vMinus, const InterfaceField& phi,
                             const BasicState& ring);
// The same derivative rewritten in good unknowns plus the Psi-weighted ring residual term.
Field8 linearized_fluid_good_form(const Field8& U, const Field8& dtU, const InterfaceField& phi,
                                  const BasicState& ring);

// Optional boundary source b (4 x ncols) is subtracted when given.
Field4 linearized_boundary(const LinearPerturbation& pert, const BasicState& ring, const Field4* b = nullptr);

ConstraintReport constraints(const LinearPerturbation& pert, const BasicState& ring);

Field1 tEN_identity(const LinearPerturbation& pert, const BasicState& ring);

// Coefficient blocks shared by the solver.
struct PointMatrices8 {
  Mat8 A0;
  Mat8 A1t;
  Mat8 A2;
  Mat8 A3;
};
struct PointMatrices6 {
  Mat6 B0;  // multiplies eps d_t
  Mat6 B1t;
  Mat6 B2;
  Mat6 B3;
};
PointMatrices8 fluid_matrices(const Vec8& U, const LiftAt& lift, const EosModel& eos);
PointMatrices6 vacuum_matrices(const Vec3& vMinus, const LiftAt& lift, double eps);

}  // namespace mhdvac
