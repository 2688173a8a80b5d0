#include "mhdvac/basic_state.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "mhdvac/errors.hpp"

namespace mhdvac {

namespace {

double wave(const RingRecipe& r, const GridSpec& g) { return 2.0 * std::numbers::pi * r.frontMode / g.L2; }

void validate_recipe(const RingRecipe& r) {
  if (r.flowAxis != 2 && r.flowAxis != 3) throw UsageError("ring.flowAxis must be 2 or 3");
  if (!(r.shearWidth > 0.0)) throw UsageError("ring.shearWidth_length must be positive");
  if (r.H[0] != 0.0 || r.h[0] != 0.0) throw UsageError("ring.H and ring.h must be tangential (first component 0)");
  if (std::abs(r.frontAmplitude) > kPhiMax) throw UsageError("ring.frontAmplitude exceeds 1/4");
  if (r.E[1] != 0.0 || r.E[2] != 0.0) throw UsageError("ring.E must be normal (E2 = E3 = 0)");
  if (r.frontAmplitude != 0.0) {
    // The front varies along x2, so tangential fields must point along x3.
    const bool flowOk = r.flowAxis == 3 || (r.flowBase == 0.0 && r.flowShear == 0.0);
    if (!flowOk || r.H[1] != 0.0 || r.h[1] != 0.0) {
      throw UsageError("curved ring front requires v, H, h along x3");
    }
    if (r.E[0] != 0.0) throw UsageError("curved ring front requires E = 0");
  }
}

template <int C>
double max_abs(const Field<C>& f) {
  return f.size() ? f.cwiseAbs().maxCoeff() : 0.0;
}

}  // namespace

RingRecipe preset_recipe(const std::string& name) {
  RingRecipe r;
  r.preset = name;
  if (name == "trivial") {
    return r;
  }
  if (name == "shear") {
    r.flowBase = 0.3;
    r.flowShear = 0.3;
    r.flowAxis = 2;
    r.entropyAmplitude = 0.2;
    r.H = Vec3(0.0, 0.3, 0.4);
    r.h = Vec3(0.0, 0.2, 0.5);
    return r;
  }
  if (name == "bigE") {
    r.E = Vec3(0.5, 0.0, 0.0);
    return r;
  }
  if (name == "tangentialH") {
    r.H = Vec3(0.0, 0.8, 0.0);
    r.h = Vec3(0.0, 0.0, 0.6);
    return r;
  }
  if (name == "curved") {
    r.frontAmplitude = 0.1;
    r.flowAxis = 3;
    r.flowBase = 0.3;
    r.H = Vec3(0.0, 0.0, 0.5);
    r.h = Vec3(0.0, 0.0, 0.4);
    return r;
  }
  if (name == "mixed") {
    r.frontAmplitude = 0.08;
    r.flowAxis = 3;
    r.flowBase = 0.2;
    r.flowShear = 0.2;
    r.entropyAmplitude = 0.1;
    r.H = Vec3(0.0, 0.0, 0.4);
    r.h = Vec3(0.0, 0.0, 0.3);
    return r;
  }
  throw UsageError("unknown ring preset '" + name + "'");
}

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names{"trivial", "shear", "bigE", "tangentialH", "curved", "mixed"};
  return names;
}

double RingProfile::front(double x2) const { return r_.frontAmplitude * std::sin(wave(r_, g_) * x2); }

double RingProfile::front_d2(double x2) const {
  const double k = wave(r_, g_);
  return r_.frontAmplitude * k * std::cos(k * x2);
}

double RingProfile::front_d22(double x2) const {
  const double k = wave(r_, g_);
  return -r_.frontAmplitude * k * k * std::sin(k * x2);
}

Vec8 RingProfile::fluid_eulerian(double X) const {
  const double t = std::tanh(X / r_.shearWidth);
  Vec8 u = Vec8::Zero();
  u[fluid::kQ] = r_.q0;
  u[fluid::kV + r_.flowAxis - 1] = r_.flowBase + r_.flowShear * t;
  u.segment<3>(fluid::kH) = r_.H;
  u[fluid::kS] = r_.S0 + r_.entropyAmplitude * t;
  return u;
}

Vec8 RingProfile::fluid_eulerian_dX(double X) const {
  const double t = std::tanh(X / r_.shearWidth);
  const double dt = (1.0 - t * t) / r_.shearWidth;
  Vec8 u = Vec8::Zero();
  u[fluid::kV + r_.flowAxis - 1] = r_.flowShear * dt;
  u[fluid::kS] = r_.entropyAmplitude * dt;
  return u;
}

Vec6 RingProfile::vacuum() const {
  Vec6 u;
  u << r_.h, r_.E;
  return u;
}

Vec8 RingProfile::fluid_lifted(double x1, double x2) const {
  return fluid_eulerian(x1 + cutoff_chi(x1).chi * front(x2));
}

Eigen::Matrix<double, 8, 3> RingProfile::fluid_lifted_grad(double x1, double x2) const {
  const CutoffValue cv = cutoff_chi(x1);
  const Vec8 d = fluid_eulerian_dX(x1 + cv.chi * front(x2));
  Eigen::Matrix<double, 8, 3> gr;
  gr.col(0) = d * (1.0 + cv.dchi * front(x2));
  gr.col(1) = d * (cv.chi * front_d2(x2));
  gr.col(2).setZero();
  return gr;
}

BasicState BasicState::build(const RingRecipe& recipe, const GridSpec& grid, const EosModel& eos,
                             const PhysicsParams& phys) {
  grid.validate();
  phys.validate();
  validate_recipe(recipe);
  BasicState b;
  b.grid = grid;
  b.eos = eos;
  b.phys = phys;
  b.recipe = recipe;
  const RingProfile prof(recipe, grid);
  const int n = grid.n1p();

  SurfaceField phi(grid.ncols());
  for (int j = 0; j < grid.nx2; ++j)
    for (int k = 0; k < grid.nx3; ++k) phi[grid.col(j, k)] = prof.front(grid.x2(j));
  b.phi = InterfaceField::from_phi(phi, SurfaceField::Zero(grid.ncols()), grid);
  b.liftPlus = lift_Phi(b.phi, grid, Side::Plus);
  b.liftMinus = lift_Phi(b.phi, grid, Side::Minus);
  b.curv = curvature_matrix(b.phi);

  b.U.resize(8, grid.npts());
  b.V.resize(6, grid.npts());
  for (int j = 0; j < grid.nx2; ++j) {
    for (int k = 0; k < grid.nx3; ++k) {
      for (int i = 0; i < n; ++i) {
        const int p = grid.point(i, j, k);
        b.U.col(p) = prof.fluid_lifted(grid.x1_fluid(i), grid.x2(j));
        b.V.col(p) = prof.vacuum();
      }
    }
  }
  b.vMinus = mirror_to_vacuum<8>(b.U, grid).middleRows<3>(fluid::kV);

  for (int p = 0; p < grid.npts(); ++p) {
    const FluidState s = FluidState::from_vector(b.U.col(p));
    if (!check_hyperbolicity(s, eos)) {
      std::ostringstream os;
      os << "inadmissible ring: non-hyperbolic fluid state at point " << p << " (p = " << s.pressure() << ")";
      throw DomainError(os.str());
    }
  }
  if (b.max_nu() >= 1.0) throw DomainError("inadmissible ring: |eps v-| >= 1");

  b.d1U = d1<8>(b.U, grid);
  b.d2U = dtan<8>(b.U, grid, 2);
  b.d3U = dtan<8>(b.U, grid, 3);
  b.d1V = d1<6>(b.V, grid);
  b.d2V = dtan<6>(b.V, grid, 2);
  b.d3V = dtan<6>(b.V, grid, 3);

  const int nc = grid.ncols();
  b.jumpDq.resize(nc);
  b.d1vN.resize(nc);
  b.d1HN.resize(nc);
  b.d1hN.resize(nc);
  b.mu.resize(nc);
  for (int c = 0; c < nc; ++c) {
    const Eigen::Index pf = static_cast<Eigen::Index>(c) * n;
    const Eigen::Index pv = pf + grid.nx1;
    const Vec3 N = normal_tangents(b.phi.d2Phi[c], b.phi.d3Phi[c]).N;
    const Vec3 h = b.V.col(pv).segment<3>(vacuum::kh);
    const Vec3 E = b.V.col(pv).segment<3>(vacuum::kE);
    const Vec3 v = b.U.col(pf).segment<3>(fluid::kV);
    b.jumpDq[c] = b.d1U(fluid::kQ, pf) - h.dot(b.d1V.col(pv).segment<3>(vacuum::kh)) +
                  E.dot(b.d1V.col(pv).segment<3>(vacuum::kE));
    b.d1vN[c] = b.d1U.col(pf).segment<3>(fluid::kV).dot(N);
    b.d1HN[c] = b.d1U.col(pf).segment<3>(fluid::kH).dot(N);
    b.d1hN[c] = b.d1V.col(pv).segment<3>(vacuum::kh).dot(N);
    b.mu[c] = 2.0 * (E[0] + phys.epsilon * v[1] * h[2] - phys.epsilon * v[2] * h[1]);
  }

  const double res = b.interface_residual();
  if (res > 1e-10) {
    std::ostringstream os;
    os << "inadmissible ring: interface conditions violated (residual " << res << ")";
    throw DomainError(os.str());
  }

  const double KU = max_abs<8>(b.U) + max_abs<8>(b.d1U) + max_abs<8>(b.d2U) + max_abs<8>(b.d3U) +
                    max_abs<8>(Field8(d1<8>(b.d1U, grid))) + max_abs<8>(Field8(dtan<8>(b.d2U, grid, 2)));
  const double KV = max_abs<6>(b.V) + max_abs<6>(b.d1V) + max_abs<6>(b.d2V) + max_abs<6>(b.d3V);
  const SurfaceField p22 = dsurf(b.phi.d2Phi, grid, 2);
  const double Kphi = b.phi.phi.cwiseAbs().maxCoeff() + b.phi.d2Phi.cwiseAbs().maxCoeff() +
                      b.phi.d3Phi.cwiseAbs().maxCoeff() + p22.cwiseAbs().maxCoeff();
  b.K = std::max({KU, KV, Kphi});
  return b;
}

double BasicState::interface_residual() const {
  double r = 0.0;
  const int n = grid.n1p();
  for (int c = 0; c < grid.ncols(); ++c) {
    const Eigen::Index pf = static_cast<Eigen::Index>(c) * n;
    const Eigen::Index pv = pf + grid.nx1;
    const NormalTangents nt = normal_tangents(phi.d2Phi[c], phi.d3Phi[c]);
    const Vec3 v = U.col(pf).segment<3>(fluid::kV);
    const Vec3 h = V.col(pv).segment<3>(vacuum::kh);
    const Vec3 E = V.col(pv).segment<3>(vacuum::kE);
    const double eps = phys.epsilon;
    r = std::max(r, std::abs(phi.dtPhi[c] - v.dot(nt.N)));
    r = std::max(r, std::abs(E.dot(nt.tau2) - eps * h[2] * phi.dtPhi[c]));
    r = std::max(r, std::abs(E.dot(nt.tau3) + eps * h[1] * phi.dtPhi[c]));
  }
  return r;
}

double BasicState::max_nu() const {
  double m = 0.0;
  for (Eigen::Index p = 0; p < vMinus.cols(); ++p) m = std::max(m, phys.epsilon * vMinus.col(p).norm());
  return m;
}

}  // namespace mhdvac
