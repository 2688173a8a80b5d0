#include "mhdvac/operators.hpp"

#include <cmath>
#include <sstream>

#include "mhdvac/errors.hpp"
#include "mhdvac/symmetrizers.hpp"

namespace mhdvac {

namespace {

std::string where(const GridSpec& g, Eigen::Index p) {
  const int n = g.n1p();
  const int c = static_cast<int>(p / n);
  std::ostringstream os;
  os << "(i,j,k)=(" << p % n << "," << c / g.nx3 << "," << c % g.nx3 << ")";
  return os.str();
}

Vec3 nu_of(const Vec3& vMinus, double eps) { return eps * vMinus; }

template <int C>
double max_abs(const Field<C>& f) {
  return f.size() ? f.cwiseAbs().maxCoeff() : 0.0;
}

// Psi / d1Phi at every point of a slab.
Field1 psi_over_d1(const InterfaceField& phi, const LiftDerivatives& ringLift, const GridSpec& g) {
  Field1 w(1, g.npts());
  for (int c = 0; c < g.ncols(); ++c)
    for (int i = 0; i < g.n1p(); ++i) {
      const Eigen::Index p = static_cast<Eigen::Index>(c) * g.n1p() + i;
      w(0, p) = ringLift.chi(0, p) * phi.phi[c] / ringLift.d1(0, p);
    }
  return w;
}

}  // namespace

LinearPerturbation LinearPerturbation::zero(const GridSpec& g) {
  LinearPerturbation z;
  z.U = Field8::Zero(8, g.npts());
  z.dtU = Field8::Zero(8, g.npts());
  z.V = Field6::Zero(6, g.npts());
  z.dtV = Field6::Zero(6, g.npts());
  z.phi = InterfaceField::zero(g);
  z.f = Field8::Zero(8, g.npts());
  return z;
}

std::string ConstraintReport::to_json() const {
  std::ostringstream os;
  os.precision(17);
  os << "{\"maxDivFluid\": " << maxDivFluid << ", \"maxDivVacH\": " << maxDivVacH
     << ", \"maxDivVacE\": " << maxDivVacE << ", \"maxTraceHN\": " << maxTraceHN
     << ", \"maxTracehN\": " << maxTracehN << "}";
  return os.str();
}

PointMatrices8 fluid_matrices(const Vec8& U, const LiftAt& lift, const EosModel& eos) {
  const auto u = as_array(U);
  return {to_eigen(a0_t(u, eos)), to_eigen(a1_lifted_t(u, eos, lift)), to_eigen(ai_t(u, eos, 2)),
          to_eigen(ai_t(u, eos, 3))};
}

PointMatrices6 vacuum_matrices(const Vec3& vMinus, const LiftAt& lift, double eps) {
  const std::array<double, 3> nu{eps * vMinus[0], eps * vMinus[1], eps * vMinus[2]};
  return {to_eigen(secondary_t(nu, 0)), to_eigen(secondary_lifted_t(nu, lift, eps)), to_eigen(secondary_t(nu, 2)),
          to_eigen(secondary_t(nu, 3))};
}

Field8 residual_fluid_nonlinear(const Field8& U, const Field8& dtU, const InterfaceField& phi, const GridSpec& g,
                                const EosModel& eos) {
  const LiftDerivatives lift = lift_Phi(phi, g, Side::Plus);
  const Field8 D1 = d1<8>(U, g), D2 = dtan<8>(U, g, 2), D3 = dtan<8>(U, g, 3);
  Field8 r(8, g.npts());
  for (Eigen::Index p = 0; p < g.npts(); ++p) {
    const Vec8 u = U.col(p);
    if (!check_hyperbolicity(FluidState::from_vector(u), eos)) {
      throw DomainError("non-hyperbolic fluid state at " + where(g, p));
    }
    const PointMatrices8 m = fluid_matrices(u, lift.at(p), eos);
    r.col(p) = m.A0 * dtU.col(p) + m.A1t * D1.col(p) + m.A2 * D2.col(p) + m.A3 * D3.col(p);
  }
  return r;
}

Field6 residual_vacuum_secondary(const Field6& V, const Field6& dtV, const Field3& vMinus,
                                 const InterfaceField& phi, const GridSpec& g, double eps) {
  const LiftDerivatives lift = lift_Phi(phi, g, Side::Minus);
  const Field6 D1 = d1<6>(V, g), D2 = dtan<6>(V, g, 2), D3 = dtan<6>(V, g, 3);
  Field6 r(6, g.npts());
  for (Eigen::Index p = 0; p < g.npts(); ++p) {
    const Vec3 vm = vMinus.col(p);
    if (!(nu_of(vm, eps).norm() < 1.0)) {
      throw DomainError("secondary symmetrizer not positive (|nu| >= 1) at " + where(g, p));
    }
    const PointMatrices6 m = vacuum_matrices(vm, lift.at(p), eps);
    r.col(p) = eps * m.B0 * dtV.col(p) + m.B1t * D1.col(p) + m.B2 * D2.col(p) + m.B3 * D3.col(p);
  }
  return r;
}

Field6 residual_vacuum_plain(const Field6& V, const Field6& dtV, const InterfaceField& phi, const GridSpec& g,
                             double eps) {
  const LiftDerivatives lift = lift_Phi(phi, g, Side::Minus);
  const Field6 D1 = d1<6>(V, g), D2 = dtan<6>(V, g, 2), D3 = dtan<6>(V, g, 3);
  const Mat6 B1 = build_Bj(1), B2 = build_Bj(2), B3 = build_Bj(3);
  Field6 r(6, g.npts());
  for (Eigen::Index p = 0; p < g.npts(); ++p) {
    const LiftAt L = lift.at(p);
    const Mat6 B1t = (B1 - eps * L.dt * Mat6::Identity() - L.d2 * B2 - L.d3 * B3) / L.d1;
    r.col(p) = eps * dtV.col(p) + B1t * D1.col(p) + B2 * D2.col(p) + B3 * D3.col(p);
  }
  return r;
}

Field4 residual_boundary_nonlinear(const Field8& Uface, const Field6& Vface, const InterfaceField& phi,
                                   const GridSpec& g, const PhysicsParams& params) {
  const SurfaceField Hc = mean_curvature(phi.phi, g);
  const double eps = params.epsilon;
  Field4 r(4, g.ncols());
  for (int c = 0; c < g.ncols(); ++c) {
    const NormalTangents nt = normal_tangents(phi.d2Phi[c], phi.d3Phi[c]);
    const Vec3 v = Uface.col(c).segment<3>(fluid::kV);
    const Vec3 h = Vface.col(c).segment<3>(vacuum::kh);
    const Vec3 E = Vface.col(c).segment<3>(vacuum::kE);
    const double dt = phi.dtPhi[c];
    r(0, c) = dt - v.dot(nt.N);
    r(1, c) = E.dot(nt.tau2) - eps * h[2] * dt;
    r(2, c) = E.dot(nt.tau3) + eps * h[1] * dt;
    r(3, c) = Uface(fluid::kQ, c) - 0.5 * h.squaredNorm() + 0.5 * E.squaredNorm() - params.sigmaTension * Hc[c];
  }
  return r;
}

GoodUnknowns good_unknowns(const Field8& Uraw, const Field6& Vraw, const InterfaceField& phi,
                           const BasicState& ring) {
  const GridSpec& g = ring.grid;
  const Field1 wp = psi_over_d1(phi, ring.liftPlus, g);
  const Field1 wm = psi_over_d1(phi, ring.liftMinus, g);
  GoodUnknowns r{Uraw, Vraw};
  for (Eigen::Index p = 0; p < g.npts(); ++p) {
    r.U.col(p) -= wp(0, p) * ring.d1U.col(p);
    r.V.col(p) -= wm(0, p) * ring.d1V.col(p);
  }
  return r;
}

GoodUnknowns raw_from_good(const Field8& Udot, const Field6& Vdot, const InterfaceField& phi,
                           const BasicState& ring) {
  const GridSpec& g = ring.grid;
  const Field1 wp = psi_over_d1(phi, ring.liftPlus, g);
  const Field1 wm = psi_over_d1(phi, ring.liftMinus, g);
  GoodUnknowns r{Udot, Vdot};
  for (Eigen::Index p = 0; p < g.npts(); ++p) {
    r.U.col(p) += wp(0, p) * ring.d1U.col(p);
    r.V.col(p) += wm(0, p) * ring.d1V.col(p);
  }
  return r;
}

Mat8 c_plus_matrix(const BasicState& ring, Eigen::Index p) {
  const FluidState s = FluidState::from_vector(ring.U.col(p));
  const LiftAt L = ring.liftPlus.at(p);
  Mat8 C;
  for (int m = 0; m < 8; ++m) {
    Vec8 e = Vec8::Zero();
    e[m] = 1.0;
    C.col(m) = dA1_lifted(s, e, ring.eos, L) * ring.d1U.col(p) + dAi(s, e, ring.eos, 2) * ring.d2U.col(p) +
               dAi(s, e, ring.eos, 3) * ring.d3U.col(p);
  }
  return C;
}

Mat63 c_minus_matrix(const BasicState& ring, Eigen::Index p) {
  const LiftAt L = ring.liftMinus.at(p);
  const double eps = ring.phys.epsilon;
  Mat63 C;
  for (int m = 0; m < 3; ++m) {
    std::array<double, 3> w{0.0, 0.0, 0.0};
    w[m] = eps;
    // The matrices are affine in nu, so the derivative is M(w) - M(0).
    const Mat6 d1 = to_eigen(secondary_lifted_t(w, L, eps)) - to_eigen(secondary_lifted_t<double>({0, 0, 0}, L, eps));
    const Mat6 d2 = to_eigen(secondary_t(w, 2)) - to_eigen(secondary_t<double>({0, 0, 0}, 2));
    const Mat6 d3 = to_eigen(secondary_t(w, 3)) - to_eigen(secondary_t<double>({0, 0, 0}, 3));
    C.col(m) = d1 * ring.d1V.col(p) + d2 * ring.d2V.col(p) + d3 * ring.d3V.col(p);
  }
  return C;
}

Field8 apply_C_plus(const BasicState& ring, const Field8& U) {
  Field8 r(8, U.cols());
  for (Eigen::Index p = 0; p < U.cols(); ++p) r.col(p) = c_plus_matrix(ring, p) * U.col(p);
  return r;
}

Field6 apply_C_minus(const BasicState& ring, const Field3& vMinus) {
  Field6 r(6, vMinus.cols());
  for (Eigen::Index p = 0; p < vMinus.cols(); ++p) r.col(p) = c_minus_matrix(ring, p) * vMinus.col(p);
  return r;
}

Field8 apply_C_plus_fd(const BasicState& ring, const Field8& U, double theta) {
  Field8 r(8, U.cols());
  for (Eigen::Index p = 0; p < U.cols(); ++p) {
    const Vec8 u0 = ring.U.col(p);
    const Vec8 u1 = u0 + theta * U.col(p);
    const LiftAt L = ring.liftPlus.at(p);
    const PointMatrices8 m0 = fluid_matrices(u0, L, ring.eos);
    const PointMatrices8 m1 = fluid_matrices(u1, L, ring.eos);
    r.col(p) = ((m1.A1t - m0.A1t) * ring.d1U.col(p) + (m1.A2 - m0.A2) * ring.d2U.col(p) +
                (m1.A3 - m0.A3) * ring.d3U.col(p)) /
               theta;
  }
  return r;
}

Field6 apply_C_minus_fd(const BasicState& ring, const Field3& vMinus, double theta) {
  Field6 r(6, vMinus.cols());
  const double eps = ring.phys.epsilon;
  for (Eigen::Index p = 0; p < vMinus.cols(); ++p) {
    const LiftAt L = ring.liftMinus.at(p);
    const PointMatrices6 m0 = vacuum_matrices(ring.vMinus.col(p), L, eps);
    const PointMatrices6 m1 = vacuum_matrices(ring.vMinus.col(p) + theta * vMinus.col(p), L, eps);
    r.col(p) = ((m1.B1t - m0.B1t) * ring.d1V.col(p) + (m1.B2 - m0.B2) * ring.d2V.col(p) +
                (m1.B3 - m0.B3) * ring.d3V.col(p)) /
               theta;
  }
  return r;
}

namespace {

Field8 fluid_operator(const BasicState& ring, const Field8& U, const Field8& dtU) {
  const GridSpec& g = ring.grid;
  const Field8 D1 = d1<8>(U, g), D2 = dtan<8>(U, g, 2), D3 = dtan<8>(U, g, 3);
  Field8 r(8, g.npts());
  for (Eigen::Index p = 0; p < g.npts(); ++p) {
    const PointMatrices8 m = fluid_matrices(ring.U.col(p), ring.liftPlus.at(p), ring.eos);
    r.col(p) = m.A0 * dtU.col(p) + m.A1t * D1.col(p) + m.A2 * D2.col(p) + m.A3 * D3.col(p) +
               c_plus_matrix(ring, p) * U.col(p);
  }
  return r;
}

Field6 vacuum_operator(const BasicState& ring, const Field6& V, const Field6& dtV, const Field3& vMinus) {
  const GridSpec& g = ring.grid;
  const double eps = ring.phys.epsilon;
  const Field6 D1 = d1<6>(V, g), D2 = dtan<6>(V, g, 2), D3 = dtan<6>(V, g, 3);
  Field6 r(6, g.npts());
  for (Eigen::Index p = 0; p < g.npts(); ++p) {
    const PointMatrices6 m = vacuum_matrices(ring.vMinus.col(p), ring.liftMinus.at(p), eps);
    r.col(p) = eps * m.B0 * dtV.col(p) + m.B1t * D1.col(p) + m.B2 * D2.col(p) + m.B3 * D3.col(p) +
               c_minus_matrix(ring, p) * vMinus.col(p);
  }
  return r;
}

}  // namespace

InteriorResidual linearized_interior(const LinearPerturbation& pert, const BasicState& ring) {
  const Field3 vdm = mirror_to_vacuum<8>(pert.U, ring.grid).middleRows<3>(fluid::kV);
  return {fluid_operator(ring, pert.U, pert.dtU) - pert.f, vacuum_operator(ring, pert.V, pert.dtV, vdm)};
}

Field8 linearized_fluid_raw(const Field8& U, const Field8& dtU, const InterfaceField& phi, const BasicState& ring) {
  const GridSpec& g = ring.grid;
  Field8 r = fluid_operator(ring, U, dtU);
  const LiftDerivatives& L = ring.liftPlus;
  for (int c = 0; c < g.ncols(); ++c) {
    for (int i = 0; i < g.n1p(); ++i) {
      const Eigen::Index p = static_cast<Eigen::Index>(c) * g.n1p() + i;
      const double chi = L.chi(0, p);
      const PointMatrices8 m = fluid_matrices(ring.U.col(p), L.at(p), ring.eos);
      const Mat8 Lpsi = m.A0 * (chi * phi.dtPhi[c]) + m.A1t * (L.dchi(0, p) * phi.phi[c]) +
                        m.A2 * (chi * phi.d2Phi[c]) + m.A3 * (chi * phi.d3Phi[c]);
      r.col(p) -= Lpsi * ring.d1U.col(p) / L.d1(0, p);
    }
  }
  return r;
}

Field6 linearized_vacuum_raw(const Field6& V, const Field6& dtV, const Field3& vMinus, const InterfaceField& phi,
                             const BasicState& ring) {
  const GridSpec& g = ring.grid;
  const double eps = ring.phys.epsilon;
  Field6 r = vacuum_operator(ring, V, dtV, vMinus);
  const LiftDerivatives& L = ring.liftMinus;
  for (int c = 0; c < g.ncols(); ++c) {
    for (int i = 0; i < g.n1p(); ++i) {
      const Eigen::Index p = static_cast<Eigen::Index>(c) * g.n1p() + i;
      const double chi = L.chi(0, p);
      const PointMatrices6 m = vacuum_matrices(ring.vMinus.col(p), L.at(p), eps);
      const Mat6 Lpsi = eps * m.B0 * (chi * phi.dtPhi[c]) + m.B1t * (L.dchi(0, p) * phi.phi[c]) +
                        m.B2 * (chi * phi.d2Phi[c]) + m.B3 * (chi * phi.d3Phi[c]);
      r.col(p) -= Lpsi * ring.d1V.col(p) / L.d1(0, p);
    }
  }
  return r;
}

Field8 linearized_fluid_good_form(const Field8& U, const Field8& dtU, const InterfaceField& phi,
                                  const BasicState& ring) {
  const GridSpec& g = ring.grid;
  const LiftDerivatives& L = ring.liftPlus;
  Field8 Ud = U, dtUd = dtU;
  for (int c = 0; c < g.ncols(); ++c)
    for (int i = 0; i < g.n1p(); ++i) {
      const Eigen::Index p = static_cast<Eigen::Index>(c) * g.n1p() + i;
      Ud.col(p) -= L.chi(0, p) * phi.phi[c] / L.d1(0, p) * ring.d1U.col(p);
      dtUd.col(p) -= L.chi(0, p) * phi.dtPhi[c] / L.d1(0, p) * ring.d1U.col(p);
    }
  Field8 r = fluid_operator(ring, Ud, dtUd);
  const Field8 ringRes = residual_fluid_nonlinear(ring.U, Field8::Zero(8, g.npts()), ring.phi, g, ring.eos);
  const Field8 dRes = d1<8>(ringRes, g);
  for (int c = 0; c < g.ncols(); ++c)
    for (int i = 0; i < g.n1p(); ++i) {
      const Eigen::Index p = static_cast<Eigen::Index>(c) * g.n1p() + i;
      r.col(p) += L.chi(0, p) * phi.phi[c] / L.d1(0, p) * dRes.col(p);
    }
  return r;
}

Field4 linearized_boundary(const LinearPerturbation& pert, const BasicState& ring, const Field4* b) {
  const GridSpec& g = ring.grid;
  const double eps = ring.phys.epsilon;
  const Field8 Uf = fluid_trace<8>(pert.U, g);
  const Field6 Vf = vacuum_trace<6>(pert.V, g);
  const Field8 Ur = fluid_trace<8>(ring.U, g);
  const Field6 Vr = vacuum_trace<6>(ring.V, g);
  const SurfaceField& phi = pert.phi.phi;
  SurfaceField e1phi(g.ncols());
  for (int c = 0; c < g.ncols(); ++c) e1phi[c] = Vr(vacuum::kE, c) * phi[c];
  const SurfaceField dE2 = dsurf(e1phi, g, 2), dE3 = dsurf(e1phi, g, 3);
  const SurfaceField curv = linearized_curvature(phi, ring.curv, g);
  Field4 r(4, g.ncols());
  for (int c = 0; c < g.ncols(); ++c) {
    const NormalTangents nt = normal_tangents(ring.phi.d2Phi[c], ring.phi.d3Phi[c]);
    const double dtr = ring.phi.dtPhi[c];
    const Vec3 v = Uf.col(c).segment<3>(fluid::kV);
    const Vec3 h = Vf.col(c).segment<3>(vacuum::kh);
    const Vec3 E = Vf.col(c).segment<3>(vacuum::kE);
    const Vec3 hr = Vr.col(c).segment<3>(vacuum::kh);
    const Vec3 Er = Vr.col(c).segment<3>(vacuum::kE);
    const double vr2 = Ur(fluid::kV + 1, c), vr3 = Ur(fluid::kV + 2, c);
    r(0, c) = pert.phi.dtPhi[c] + vr2 * pert.phi.d2Phi[c] + vr3 * pert.phi.d3Phi[c] - ring.d1vN[c] * phi[c] -
              v.dot(nt.N);
    r(1, c) = E.dot(nt.tau2) - eps * dtr * h[2] - eps * hr[2] * pert.phi.dtPhi[c] + dE2[c];
    r(2, c) = E.dot(nt.tau3) + eps * dtr * h[1] + eps * hr[1] * pert.phi.dtPhi[c] + dE3[c];
    r(3, c) = Uf(fluid::kQ, c) - hr.dot(h) + Er.dot(E) + ring.jumpDq[c] * phi[c] -
              ring.phys.sigmaTension * curv[c];
  }
  if (b) r -= *b;
  return r;
}

ConstraintReport constraints(const LinearPerturbation& pert, const BasicState& ring) {
  const GridSpec& g = ring.grid;
  ConstraintReport rep;
  auto lifted_div = [&](const Field3& w, const LiftDerivatives& L) {
    Field1 wn(1, g.npts()), w2(1, g.npts()), w3(1, g.npts());
    for (Eigen::Index p = 0; p < g.npts(); ++p) {
      wn(0, p) = w(0, p) - w(1, p) * L.d2(0, p) - w(2, p) * L.d3(0, p);
      w2(0, p) = w(1, p) * L.d1(0, p);
      w3(0, p) = w(2, p) * L.d1(0, p);
    }
    return Field1(d1<1>(wn, g) + dtan<1>(w2, g, 2) + dtan<1>(w3, g, 3));
  };
  rep.divFluid = lifted_div(pert.U.middleRows<3>(fluid::kH), ring.liftPlus);
  rep.divVacH = lifted_div(pert.V.middleRows<3>(vacuum::kh), ring.liftMinus);
  rep.divVacE = lifted_div(pert.V.middleRows<3>(vacuum::kE), ring.liftMinus);

  const Field8 Uf = fluid_trace<8>(pert.U, g);
  const Field6 Vf = vacuum_trace<6>(pert.V, g);
  const Field8 Ur = fluid_trace<8>(ring.U, g);
  const Field6 Vr = vacuum_trace<6>(ring.V, g);
  rep.traceHN.resize(g.ncols());
  rep.tracehN.resize(g.ncols());
  for (int c = 0; c < g.ncols(); ++c) {
    const Vec3 N = normal_tangents(ring.phi.d2Phi[c], ring.phi.d3Phi[c]).N;
    const double p2 = pert.phi.d2Phi[c], p3 = pert.phi.d3Phi[c], ph = pert.phi.phi[c];
    rep.traceHN[c] = Uf.col(c).segment<3>(fluid::kH).dot(N) -
                     (Ur(fluid::kH + 1, c) * p2 + Ur(fluid::kH + 2, c) * p3 - ph * ring.d1HN[c]);
    rep.tracehN[c] = Vf.col(c).segment<3>(vacuum::kh).dot(N) -
                     (Vr(vacuum::kh + 1, c) * p2 + Vr(vacuum::kh + 2, c) * p3 - ph * ring.d1hN[c]);
  }
  rep.maxDivFluid = max_abs<1>(rep.divFluid);
  rep.maxDivVacH = max_abs<1>(rep.divVacH);
  rep.maxDivVacE = max_abs<1>(rep.divVacE);
  rep.maxTraceHN = rep.traceHN.size() ? rep.traceHN.cwiseAbs().maxCoeff() : 0.0;
  rep.maxTracehN = rep.tracehN.size() ? rep.tracehN.cwiseAbs().maxCoeff() : 0.0;
  return rep;
}

Field1 tEN_identity(const LinearPerturbation& pert, const BasicState& ring) {
  const GridSpec& g = ring.grid;
  const double eps = ring.phys.epsilon;
  const LiftDerivatives& L = ring.liftMinus;
  Field1 dtEN(1, g.npts()), a(1, g.npts()), b(1, g.npts());
  for (Eigen::Index p = 0; p < g.npts(); ++p) {
    const auto V = pert.V.col(p);
    const auto dV = pert.dtV.col(p);
    dtEN(0, p) = dV[3] - dV[4] * L.d2(0, p) - dV[5] * L.d3(0, p);
    a(0, p) = V[2] + V[0] * L.d2(0, p) + eps * V[5] * L.dt(0, p);
    b(0, p) = V[1] + V[0] * L.d3(0, p) - eps * V[4] * L.dt(0, p);
  }
  return eps * dtEN - dtan<1>(a, g, 2) + dtan<1>(b, g, 3);
}

}  // namespace mhdvac
