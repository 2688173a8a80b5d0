#pragma once

#include <string>
#include <vector>

#include "mhdvac/fields.hpp"
#include "mhdvac/interface_geometry.hpp"
#include "mhdvac/state_model.hpp"

namespace mhdvac {

// Recipe for a steady basic state. Fluid fields depend on the physical normal
// coordinate X = Phi(x) only; vacuum fields are uniform; the front is
// phi(x') = frontAmplitude * sin(2 pi frontMode x2 / L2).
struct RingRecipe {
  std::string preset = "trivial";
  double q0 = 1.0;
  double S0 = 0.0;
  double entropyAmplitude = 0.0;
  double flowBase = 0.0;
  double flowShear = 0.0;
  double shearWidth = 0.5;
  int flowAxis = 2;  // tangential direction of the velocity (2 or 3)
  Vec3 H = Vec3::Zero();
  Vec3 h = Vec3::Zero();
  Vec3 E = Vec3::Zero();
  double frontAmplitude = 0.0;
  int frontMode = 1;
};

// Named presets: trivial, shear, bigE, tangentialH, curved, mixed.
RingRecipe preset_recipe(const std::string& name);
const std::vector<std::string>& preset_names();

// Analytic evaluation of a recipe (used for manufactured solutions and oracles).
class RingProfile {
 public:
  RingProfile(const RingRecipe& r, const GridSpec& g) : r_(r), g_(g) {}

  double front(double x2) const;
  double front_d2(double x2) const;
  double front_d22(double x2) const;
  // Eulerian fluid state and its X-derivative.
  Vec8 fluid_eulerian(double X) const;
  Vec8 fluid_eulerian_dX(double X) const;
  Vec6 vacuum() const;
  // Lifted fluid state at (x1, x2) and its analytic gradient (d1, d2, d3 columns).
  Vec8 fluid_lifted(double x1, double x2) const;
  Eigen::Matrix<double, 8, 3> fluid_lifted_grad(double x1, double x2) const;

  const RingRecipe& recipe() const { return r_; }

 private:
  RingRecipe r_;
  GridSpec g_;
};

// Sampled basic state with discrete derivatives from the shared difference operators.
struct BasicState {
  GridSpec grid;
  EosModel eos;
  PhysicsParams phys;
  RingRecipe recipe;

  Field8 U;        // lifted fluid ring on the fluid slab
  Field6 V;        // vacuum ring on the vacuum slab
  Field3 vMinus;   // v(-x1, x') on the vacuum slab
  InterfaceField phi;
  LiftDerivatives liftPlus;
  LiftDerivatives liftMinus;
  CurvatureMatrix curv;

  Field8 d1U, d2U, d3U;
  Field6 d1V, d2V, d3V;

  // Interface coefficients: [d1 q], d1(v.N), d1(H.N) on the fluid side, d1(h.N) on the vacuum side.
  SurfaceField jumpDq;
  SurfaceField d1vN;
  SurfaceField d1HN;
  SurfaceField d1hN;
  SurfaceField mu;  // 2(E1 + eps v2 h3 - eps v3 h2)

  double K = 0.0;

  static BasicState build(const RingRecipe& recipe, const GridSpec& grid, const EosModel& eos,
                          const PhysicsParams& phys);

  // Residuals of the first three interface conditions for the ring itself.
  double interface_residual() const;
  double max_nu() const;
};

}  // namespace mhdvac
